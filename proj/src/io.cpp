#include "strata/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace strata::io {

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t field)
    : std::runtime_error(row == 0 ? what
                                  : "row " + std::to_string(row) +
                                        (field == 0 ? "" : ", field " + std::to_string(field)) + ": " + what),
      row_(row),
      field_(field) {}

CloudFormat format_for(const std::filesystem::path& path) {
    return path.extension() == ".json" ? CloudFormat::json : CloudFormat::csv;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_number(std::string_view field, std::size_t row, std::size_t col) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || end != field.data() + field.size() || field.empty()) {
        throw ParseError("not a number: '" + std::string(field) + "'", row, col);
    }
    return value;
}

std::string format_number(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

template <typename T>
T get_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field \"") + key + "\": " + e.what());
    }
}

json coords_json(const std::vector<Coords>& points) {
    json out = json::array();
    for (const auto& p : points) {
        out.push_back(p);
    }
    return out;
}

json clusters_json(const std::vector<Cluster>& clusters) {
    json out = json::array();
    for (const auto& c : clusters) {
        out.push_back(c);
    }
    return out;
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

PointCloud parse_cloud_csv(std::string_view text, double epsilon) {
    PointCloud cloud;
    std::size_t row = 0;
    std::size_t dim = 0;
    Coords point;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++row;
        if (trim(line).empty()) {
            continue;
        }
        point.clear();
        std::size_t col = 0;
        while (true) {
            auto comma = line.find(',');
            point.push_back(parse_number(line.substr(0, comma), row, ++col));
            if (comma == std::string_view::npos) {
                break;
            }
            line.remove_prefix(comma + 1);
        }
        if (dim == 0) {
            dim = point.size();
            cloud = PointCloud(dim, epsilon);
        } else if (point.size() != dim) {
            throw ParseError("expected " + std::to_string(dim) + " fields, got " + std::to_string(point.size()), row);
        }
        cloud.add(point);
    }
    if (dim == 0) {
        return PointCloud(0, epsilon);
    }
    return cloud;
}

std::string format_cloud_csv(const PointCloud& cloud) {
    std::string out;
    for (Index i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k) {
                out += ',';
            }
            out += format_number(p[k]);
        }
        out += '\n';
    }
    return out;
}

json cloud_to_json(const PointCloud& cloud) {
    json points = json::array();
    for (Index i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        points.push_back(Coords(p.begin(), p.end()));
    }
    return {{"epsilon", cloud.epsilon()}, {"points", std::move(points)}};
}

PointCloud cloud_from_json(const json& j) {
    auto epsilon = get_field<double>(j, "epsilon");
    auto points = get_field<std::vector<Coords>>(j, "points");
    PointCloud cloud(points.empty() ? 0 : points.front().size(), epsilon);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != cloud.dim()) {
            throw ParseError("point has " + std::to_string(points[i].size()) + " coordinates, expected " +
                                 std::to_string(cloud.dim()),
                             i + 1);
        }
        cloud.add(points[i]);
    }
    return cloud;
}

json graph_to_json(const EmbeddedGraph& g) {
    json edges = json::array();
    for (const auto& e : g.graph().edges()) {
        edges.push_back({e.a, e.b});
    }
    return {{"vertices", coords_json(g.positions())}, {"edges", std::move(edges)}};
}

EmbeddedGraph graph_from_json(const json& j) {
    auto vertices = get_field<std::vector<Coords>>(j, "vertices");
    auto pairs = get_field<std::vector<std::vector<Index>>>(j, "edges");
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k].size() != 2) {
            throw ParseError("edge " + std::to_string(k) + " is not a pair");
        }
        edges.push_back({pairs[k][0], pairs[k][1]});
    }
    try {
        AbstractGraph graph(vertices.size(), std::move(edges));
        return EmbeddedGraph(std::move(graph), std::move(vertices));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid graph: ") + e.what());
    }
}

json stratification_to_json(const Stratification& s) {
    json incidence = json::array();
    for (const auto& [a, b] : s.incidence) {
        incidence.push_back({a, b});
    }
    json out = {{"labels", s.labels},
                {"vertex_clusters", clusters_json(s.vertex_clusters)},
                {"edge_clusters", clusters_json(s.edge_clusters)},
                {"incidence", incidence}};
    out["graph"] = {{"vertex_count", s.vertex_clusters.size()}, {"edges", incidence}};
    return out;
}

Stratification stratification_from_json(const json& j) {
    Stratification s;
    s.labels = get_field<DimensionLabels>(j, "labels");
    s.vertex_clusters = get_field<std::vector<Cluster>>(j, "vertex_clusters");
    s.edge_clusters = get_field<std::vector<Cluster>>(j, "edge_clusters");
    for (const auto& pair : get_field<std::vector<std::vector<Index>>>(j, "incidence")) {
        if (pair.size() != 2) {
            throw ParseError("incidence entry is not a pair");
        }
        s.incidence.emplace_back(pair[0], pair[1]);
    }
    try {
        check_stratification(s, s.labels.size());
    } catch (const InvalidValue& e) {
        throw ParseError(std::string("invalid stratification: ") + e.what());
    }
    return s;
}

json fit_result_to_json(const FitResult& r) {
    return {{"vertices", coords_json(r.vertex_positions)},
            {"thetas", r.thetas},
            {"objective", r.objective_trace},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"pinned", r.pinned}};
}

FitResult fit_result_from_json(const json& j) {
    FitResult r;
    r.vertex_positions = get_field<std::vector<Coords>>(j, "vertices");
    r.thetas = get_field<std::vector<double>>(j, "thetas");
    r.objective_trace = get_field<std::vector<double>>(j, "objective");
    r.iterations = get_field<std::size_t>(j, "iterations");
    r.converged = get_field<bool>(j, "converged");
    r.pinned = get_field<std::vector<Index>>(j, "pinned");
    return r;
}

json report_to_json(const EvaluationReport& r) {
    return {{"isomorphic", r.isomorphic},
            {"max_vertex_error", optional_number(r.max_vertex_error)},
            {"mean_vertex_error", optional_number(r.mean_vertex_error)},
            {"hausdorff_sample_to_model", optional_number(r.hausdorff_sample_to_model)}};
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read " + path.string());
    }
    return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

json read_json(const std::filesystem::path& path) {
    auto text = read_text(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

PointCloud read_cloud(const std::filesystem::path& path, std::optional<double> epsilon) {
    return read_cloud(path, format_for(path), epsilon);
}

PointCloud read_cloud(const std::filesystem::path& path, CloudFormat format, std::optional<double> epsilon) {
    if (format == CloudFormat::csv) {
        if (!epsilon) {
            throw ParseError("CSV point clouds need epsilon supplied separately");
        }
        return parse_cloud_csv(read_text(path), *epsilon);
    }
    auto cloud = cloud_from_json(read_json(path));
    if (epsilon && *epsilon != cloud.epsilon()) {
        PointCloud out(cloud.dim(), *epsilon);
        for (Index i = 0; i < cloud.size(); ++i) {
            out.add(cloud.point(i));
        }
        return out;
    }
    return cloud;
}

void write_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
    write_cloud(path, cloud, format_for(path));
}

void write_cloud(const std::filesystem::path& path, const PointCloud& cloud, CloudFormat format) {
    if (format == CloudFormat::csv) {
        write_text(path, format_cloud_csv(cloud));
    } else {
        write_json(path, cloud_to_json(cloud));
    }
}

EmbeddedGraph read_embedded_graph(const std::filesystem::path& path) { return graph_from_json(read_json(path)); }

void write_embedded_graph(const std::filesystem::path& path, const EmbeddedGraph& g) {
    write_json(path, graph_to_json(g));
}

Stratification read_stratification(const std::filesystem::path& path) {
    return stratification_from_json(read_json(path));
}

void write_stratification(const std::filesystem::path& path, const Stratification& s) {
    write_json(path, stratification_to_json(s));
}

void write_report(const std::filesystem::path& path, const EvaluationReport& r) { write_json(path, report_to_json(r)); }

}  // namespace strata::io
