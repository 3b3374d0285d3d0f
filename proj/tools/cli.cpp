#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>

#include "strata/io.hpp"
#include "strata/metrics.hpp"
#include "strata/pipeline.hpp"
#include "strata/sampler.hpp"
#include "strata/stratification.hpp"

namespace strata::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

/// An error with a fixed exit code and message prefix.
struct StageError : std::runtime_error {
    StageError(ExitCode code, std::string stage, const std::string& what)
        : std::runtime_error(what), code(code), stage(std::move(stage)) {}
    ExitCode code;
    std::string stage;
};

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw StageError(io_failure, "io", "SHA-256 digest failed");
    }
    std::ostringstream hex;
    for (unsigned int k = 0; k < len; ++k) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
    }
    return hex.str();
}

std::string fixed(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

std::string counted(std::size_t n, const char* noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

PointCloud load_cloud(const fs::path& path, std::optional<double> epsilon) {
    auto cloud = io::read_cloud(path, epsilon);
    require_valid(cloud);
    return cloud;
}

struct GenerateArgs {
    std::string graph;
    double epsilon = 0.0;
    std::optional<double> noise;
    std::optional<double> spacing;
    std::uint64_t seed = 0;
    bool no_vertices = false;
    std::string out;
};

struct ReconstructArgs {
    std::string cloud;
    std::optional<double> epsilon;
    std::optional<double> vertex_threshold;
    std::string out;
};

struct FitArgs {
    std::string cloud;
    std::optional<double> epsilon;
    std::string stratification;
    std::size_t max_iters = FitOptions{}.max_iters;
    std::string out;
};

struct EvaluateArgs {
    std::string fitted;
    std::string truth;
    std::string cloud;
    std::optional<double> epsilon;
    std::string out;
};

struct PipelineArgs {
    std::string graph;
    double epsilon = 0.0;
    std::optional<double> noise;
    std::optional<double> spacing;
    std::uint64_t seed = 0;
    std::optional<double> vertex_threshold;
    std::string out_dir;
};

struct PlotArgs {
    std::string cloud;
    std::optional<double> epsilon;
    std::string stratification;
    std::string fitted;
    std::string out;
};

SampleOptions sample_options(std::optional<double> noise, std::optional<double> spacing, std::uint64_t seed,
                             bool include_vertices = true) {
    SampleOptions o;
    o.noise_radius = noise;
    o.spacing = spacing;
    o.seed = seed;
    o.include_vertices = include_vertices;
    return o;
}

ReconstructionParams reconstruction_params(double epsilon, std::optional<double> vertex_threshold) {
    auto p = ReconstructionParams::for_epsilon(epsilon);
    if (vertex_threshold) {
        if (!(*vertex_threshold > 0.0)) {
            throw StageError(bad_options, "options", "vertex threshold must be positive");
        }
        p.vertex_threshold = *vertex_threshold;
    }
    return p;
}

Stratification reconstruct_or_fail(const PointCloud& cloud, const ReconstructionParams& params) {
    try {
        return reconstruct(cloud, params);
    } catch (const IncidenceError& e) {
        throw StageError(reconstruction_failure, "reconstruction", e.what());
    }
}

int do_generate(const GenerateArgs& a, std::ostream& out) {
    auto graph = io::read_embedded_graph(a.graph);
    auto options = sample_options(a.noise, a.spacing, a.seed, !a.no_vertices);
    check_sample_options(options, a.epsilon);
    auto cloud = sample_graph(graph, a.epsilon, options);
    auto check = validate_epsilon_sample(cloud, graph, a.epsilon);
    io::write_cloud(a.out, cloud);
    out << cloud.size() << " points written to " << a.out << "\n";
    out << "d_H <= " << fixed(a.epsilon) << ": " << (check.valid ? "ok" : "FAILED")
        << " (sample_to_graph " << fixed(check.sample_to_graph) << ", graph_to_sample <= "
        << fixed(check.graph_to_sample) << ")\n";
    if (!check.valid) {
        throw StageError(bad_options, "certificate", "sample is not an epsilon-sample of the graph");
    }
    return ok;
}

int do_reconstruct(const ReconstructArgs& a, std::ostream& out) {
    auto cloud = load_cloud(a.cloud, a.epsilon);
    auto s = reconstruct_or_fail(cloud, reconstruction_params(cloud.epsilon(), a.vertex_threshold));
    io::write_stratification(a.out, s);
    out << s.vertex_clusters.size() << (s.vertex_clusters.size() == 1 ? " vertex, " : " vertices, ")
        << counted(s.edge_clusters.size(), "edge") << "\n";
    return ok;
}

int do_fit(const FitArgs& a, std::ostream& out) {
    auto cloud = load_cloud(a.cloud, a.epsilon);
    auto s = io::read_stratification(a.stratification);
    if (s.labels.size() != cloud.size()) {
        throw StageError(bad_options, "options", "stratification does not match the cloud");
    }
    FitOptions options;
    options.max_iters = a.max_iters;
    auto result = fit(FitProblem::from_stratification(cloud, s), options);
    io::write_json(a.out, io::fit_result_to_json(result));
    out << "objective " << fixed(result.objective()) << " after " << result.iterations << " iterations"
        << (result.converged ? "" : " (not converged)") << "\n";
    if (!result.converged) {
        throw StageError(fit_not_converged, "fit", "no convergence within " + std::to_string(a.max_iters) +
                                                       " iterations");
    }
    return ok;
}

int do_evaluate(const EvaluateArgs& a, std::ostream& out) {
    auto fitted = io::read_embedded_graph(a.fitted);
    auto truth = io::read_embedded_graph(a.truth);
    std::optional<PointCloud> cloud;
    if (!a.cloud.empty()) {
        cloud = load_cloud(a.cloud, a.epsilon);
    }
    auto report = evaluate(fitted, truth, cloud ? &*cloud : nullptr);
    io::write_report(a.out, report);
    out << "isomorphic: " << (report.isomorphic ? "true" : "false");
    if (report.max_vertex_error) {
        out << ", max vertex error " << fixed(*report.max_vertex_error);
    }
    out << "\n";
    return ok;
}

int do_pipeline(const PipelineArgs& a, std::ostream& out) {
    fs::path dir = a.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("STRATA_OUT_DIR");
        if (env == nullptr || *env == '\0') {
            throw StageError(bad_options, "options", "--out-dir is required (or set STRATA_OUT_DIR)");
        }
        dir = env;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw io::IoError("cannot create " + dir.string() + ": " + ec.message());
    }

    const std::string graph_text = io::read_text(a.graph);
    auto truth = io::read_embedded_graph(a.graph);
    auto options = sample_options(a.noise, a.spacing, a.seed);
    check_sample_options(options, a.epsilon);
    auto params = reconstruction_params(a.epsilon, a.vertex_threshold);
    FitOptions fit_options;

    auto cloud = sample_graph(truth, a.epsilon, options);
    auto certificate = validate_epsilon_sample(cloud, truth, a.epsilon);

    json artifacts = json::array();
    auto emit = [&](const std::string& name, const std::string& file, const json& body) {
        std::string text = body.dump(2) + "\n";
        io::write_text(dir / file, text);
        artifacts.push_back({{"name", name}, {"file", file}, {"sha256", sha256_hex(text)}});
    };

    emit("cloud", "cloud.json", io::cloud_to_json(cloud));
    auto s = reconstruct_or_fail(cloud, params);
    emit("stratification", "stratification.json", io::stratification_to_json(s));
    auto result = fit(FitProblem::from_stratification(cloud, s), fit_options);
    emit("fit", "fit.json", io::fit_result_to_json(result));
    auto model = fitted_graph(s, result);
    emit("fitted_graph", "fitted_graph.json", io::graph_to_json(model));
    auto report = evaluate(model, truth, &cloud);
    emit("report", "report.json", io::report_to_json(report));

    const auto& c = params.classifier;
    json manifest = {
        {"command", "pipeline"},
        {"inputs", {{"graph", a.graph}, {"graph_sha256", sha256_hex(graph_text)}}},
        {"seed", a.seed},
        {"epsilon", a.epsilon},
        {"parameters",
         {{"noise_radius", options.noise_radius.value_or(a.epsilon / 2.0)},
          {"spacing", options.spacing.value_or(a.epsilon / 2.0)},
          {"graph_radius", params.graph_radius},
          {"local_radius", c.local_radius},
          {"annulus_inner", c.annulus_inner},
          {"annulus_outer", c.annulus_outer},
          {"ball_edge_threshold", c.ball_edge_threshold},
          {"annulus_edge_threshold", c.annulus_edge_threshold},
          {"angle_threshold", c.angle_threshold},
          {"vertex_threshold", params.vertex_threshold},
          {"edge_threshold", params.edge_threshold},
          {"link_threshold", params.link_threshold},
          {"max_iters", fit_options.max_iters},
          {"rel_tol", fit_options.rel_tol},
          {"abs_tol", fit_options.abs_tol},
          {"gradient_tol", fit_options.gradient_tol}}},
        {"certificate",
         {{"valid", certificate.valid},
          {"sample_to_graph", certificate.sample_to_graph},
          {"graph_to_sample", certificate.graph_to_sample}}},
        {"artifacts", artifacts}};
    io::write_json(dir / "manifest.json", manifest);

    out << cloud.size() << " points; " << s.vertex_clusters.size()
        << (s.vertex_clusters.size() == 1 ? " vertex, " : " vertices, ") << counted(s.edge_clusters.size(), "edge")
        << "; isomorphic: " << (report.isomorphic ? "true" : "false");
    if (report.max_vertex_error) {
        out << ", max vertex error " << fixed(*report.max_vertex_error);
    }
    out << "\n";
    if (!result.converged) {
        throw StageError(fit_not_converged, "fit", "no convergence within " +
                                                       std::to_string(fit_options.max_iters) + " iterations");
    }
    return ok;
}

int do_emit_plot(const PlotArgs& a, std::ostream& out) {
    if (a.stratification.empty() && a.fitted.empty()) {
        throw StageError(bad_options, "options", "emit-plot needs --stratification and/or --fitted");
    }
    auto cloud = load_cloud(a.cloud, a.epsilon);
    std::optional<Stratification> s;
    if (!a.stratification.empty()) {
        s = io::read_stratification(a.stratification);
        if (s->labels.size() != cloud.size()) {
            throw StageError(bad_options, "options", "stratification does not match the cloud");
        }
    }
    std::optional<EmbeddedGraph> fitted;
    if (!a.fitted.empty()) {
        fitted = io::read_embedded_graph(a.fitted);
        if (fitted->dim() != cloud.dim()) {
            throw StageError(bad_options, "options", "fitted graph does not match the cloud dimension");
        }
    }

    std::vector<std::string> cluster(cloud.size());
    if (s) {
        for (Index c = 0; c < s->vertex_clusters.size(); ++c) {
            for (auto i : s->vertex_clusters[c]) {
                cluster[i] = "v" + std::to_string(c);
            }
        }
        for (Index c = 0; c < s->edge_clusters.size(); ++c) {
            for (auto i : s->edge_clusters[c]) {
                cluster[i] = "e" + std::to_string(c);
            }
        }
    }

    std::ostringstream csv;
    csv << std::setprecision(17) << "kind";
    for (std::size_t k = 0; k < cloud.dim(); ++k) {
        csv << ",x" << k;
    }
    csv << ",dim,cluster\n";
    for (Index i = 0; i < cloud.size(); ++i) {
        csv << "point";
        for (auto x : cloud.point(i)) {
            csv << ',' << x;
        }
        if (s) {
            csv << ',' << s->labels[i] << ',' << cluster[i] << '\n';
        } else {
            csv << ",,\n";
        }
    }
    std::size_t vertex_rows = 0;
    if (fitted) {
        for (Index v = 0; v < fitted->graph().vertex_count(); ++v, ++vertex_rows) {
            csv << "vertex";
            for (auto x : fitted->position(v)) {
                csv << ',' << x;
            }
            csv << ",0,v" << v << '\n';
        }
    }
    io::write_text(a.out, csv.str());
    out << cloud.size() << " point rows, " << vertex_rows << " vertex rows written to " << a.out << "\n";
    return ok;
}

std::vector<char*> argv_of(std::vector<std::string>& args) {
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    return argv;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reconstruct embedded graphs from noisy point samples", "strata"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Sample an embedded graph and certify the epsilon-sample");
    generate->add_option("--graph", gen.graph, "EmbeddedGraph JSON")->required();
    generate->add_option("--epsilon", gen.epsilon, "Noise/density bound")->required();
    generate->add_option("--noise", gen.noise, "Noise radius (default epsilon/2)");
    generate->add_option("--spacing", gen.spacing, "Site spacing (default epsilon/2)");
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_flag("--no-vertices", gen.no_vertices, "Do not place a site on each vertex");
    generate->add_option("--out", gen.out, "Output cloud (.json or .csv)")->required();

    ReconstructArgs rec;
    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Recover the abstract graph from a cloud");
    reconstruct_cmd->add_option("--cloud", rec.cloud, "Point cloud (.json or .csv)")->required();
    reconstruct_cmd->add_option("--epsilon", rec.epsilon, "Noise bound (required for CSV)");
    reconstruct_cmd->add_option("--vertex-threshold", rec.vertex_threshold, "Vertex clustering distance (default 10 epsilon)");
    reconstruct_cmd->add_option("--out", rec.out, "Stratification JSON")->required();

    FitArgs fa;
    auto* fit_cmd = app.add_subcommand("fit", "Fit vertex positions to a stratified cloud");
    fit_cmd->add_option("--cloud", fa.cloud, "Point cloud")->required();
    fit_cmd->add_option("--epsilon", fa.epsilon, "Noise bound (required for CSV)");
    fit_cmd->add_option("--stratification", fa.stratification, "Stratification JSON")->required();
    fit_cmd->add_option("--max-iters", fa.max_iters, "Sweep limit");
    fit_cmd->add_option("--out", fa.out, "FitResult JSON")->required();

    EvaluateArgs ev;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a fitted graph against ground truth");
    evaluate_cmd->add_option("--fitted", ev.fitted, "Fitted EmbeddedGraph JSON")->required();
    evaluate_cmd->add_option("--truth", ev.truth, "True EmbeddedGraph JSON")->required();
    evaluate_cmd->add_option("--cloud", ev.cloud, "Sample cloud, for the sample-to-model Hausdorff distance");
    evaluate_cmd->add_option("--epsilon", ev.epsilon, "Noise bound (required for a CSV cloud)");
    evaluate_cmd->add_option("--out", ev.out, "Report JSON")->required();

    PipelineArgs pa;
    auto* pipeline_cmd = app.add_subcommand("pipeline", "generate, reconstruct, fit and evaluate in one run");
    pipeline_cmd->add_option("--graph", pa.graph, "EmbeddedGraph JSON")->required();
    pipeline_cmd->add_option("--epsilon", pa.epsilon, "Noise/density bound")->required();
    pipeline_cmd->add_option("--noise", pa.noise, "Noise radius (default epsilon/2)");
    pipeline_cmd->add_option("--spacing", pa.spacing, "Site spacing (default epsilon/2)");
    pipeline_cmd->add_option("--seed", pa.seed, "Random seed");
    pipeline_cmd->add_option("--vertex-threshold", pa.vertex_threshold, "Vertex clustering distance");
    pipeline_cmd->add_option("--out-dir", pa.out_dir, "Output directory (default $STRATA_OUT_DIR)");

    PlotArgs pl;
    auto* plot_cmd = app.add_subcommand("emit-plot", "Write per-point plot data as CSV");
    plot_cmd->add_option("--cloud", pl.cloud, "Point cloud")->required();
    plot_cmd->add_option("--epsilon", pl.epsilon, "Noise bound (required for CSV)");
    plot_cmd->add_option("--stratification", pl.stratification, "Stratification JSON");
    plot_cmd->add_option("--fitted", pl.fitted, "Fitted EmbeddedGraph JSON");
    plot_cmd->add_option("--out", pl.out, "Output CSV")->required();

    std::vector<std::string> args = args_in;
    if (args.empty()) {
        args.emplace_back("strata");
    }
    auto argv = argv_of(args);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: options: " << e.what() << "\n";
        return bad_options;
    }

    try {
        if (generate->parsed()) {
            return do_generate(gen, out);
        }
        if (reconstruct_cmd->parsed()) {
            return do_reconstruct(rec, out);
        }
        if (fit_cmd->parsed()) {
            return do_fit(fa, out);
        }
        if (evaluate_cmd->parsed()) {
            return do_evaluate(ev, out);
        }
        if (pipeline_cmd->parsed()) {
            return do_pipeline(pa, out);
        }
        return do_emit_plot(pl, out);
    } catch (const StageError& e) {
        err << "error: " << e.stage << ": " << e.what() << "\n";
        return e.code;
    } catch (const io::IoError& e) {
        err << "error: io: " << e.what() << "\n";
        return io_failure;
    } catch (const io::ParseError& e) {
        err << "error: io: " << e.what() << "\n";
        return io_failure;
    } catch (const IncidenceError& e) {
        err << "error: reconstruction: " << e.what() << "\n";
        return reconstruction_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: options: " << e.what() << "\n";
        return bad_options;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return bad_options;
    }
}

}  // namespace strata::cli
