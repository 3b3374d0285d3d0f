#include <doctest.h>

#include <filesystem>
#include <random>

#include "strata/io.hpp"
#include "support.hpp"

using namespace strata;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
    auto dir = fs::temp_directory_path() / ("strata_io_" + std::string(name));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("CSV with an epsilon flag") {
    auto cloud = io::parse_cloud_csv("0,0\n1,0\n", 0.1);
    CHECK(cloud.size() == 2);
    CHECK(cloud.dim() == 2);
    CHECK(cloud.epsilon() == 0.1);
    CHECK(cloud.point(1)[0] == 1.0);
}

TEST_CASE("CSV row with the wrong field count names its row") {
    try {
        io::parse_cloud_csv("0,0\n1,0,2\n", 0.1);
        FAIL("expected a parse error");
    } catch (const io::ParseError& e) {
        CHECK(e.row() == 2);
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("CSV bad number names row and field") {
    try {
        io::parse_cloud_csv("0,0\n1,x\n", 0.1);
        FAIL("expected a parse error");
    } catch (const io::ParseError& e) {
        CHECK(e.row() == 2);
        CHECK(e.field() == 2);
    }
}

TEST_CASE("CSV blank lines and whitespace") {
    auto cloud = io::parse_cloud_csv(" 1.5 , -2\r\n\n3,4\n", 0.2);
    REQUIRE(cloud.size() == 2);
    CHECK(cloud.point(0)[0] == 1.5);
    CHECK(cloud.point(0)[1] == -2.0);
}

TEST_CASE("CSV round trip is exact on random doubles") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int trial = 0; trial < 20; ++trial) {
        PointCloud cloud(3, 0.1);
        for (int i = 0; i < 50; ++i) {
            cloud.add(std::vector<double>{u(rng), u(rng) * 1e-9, u(rng) * 1e9});
        }
        CHECK(io::parse_cloud_csv(io::format_cloud_csv(cloud), 0.1) == cloud);
    }
}

TEST_CASE("cloud JSON round trip is exact") {
    auto cloud = testing::uniform_cloud(100, 2, 0.05, 3);
    CHECK(io::cloud_from_json(io::cloud_to_json(cloud)) == cloud);
    CHECK(io::cloud_from_json(io::json::parse(io::cloud_to_json(cloud).dump())) == cloud);
}

TEST_CASE("embedded graph JSON round trip through a file") {
    auto dir = temp_dir("graph");
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testing::random_graph(6, 0.4, rng);
        std::vector<Coords> pos;
        for (std::size_t v = 0; v < 6; ++v) {
            pos.push_back({u(rng), u(rng), u(rng)});
        }
        EmbeddedGraph graph(g, pos);
        io::write_embedded_graph(dir / "g.json", graph);
        CHECK(io::read_embedded_graph(dir / "g.json") == graph);
    }
    CHECK(io::read_embedded_graph(dir / "g.json").graph().vertex_count() == 6);
    fs::remove_all(dir);
}

TEST_CASE("stratification and fit result round trips") {
    Stratification s;
    s.labels = {0, 1, 1, 0};
    s.vertex_clusters = {{0}, {3}};
    s.edge_clusters = {{1, 2}};
    s.incidence = {{0, 1}};
    auto j = io::stratification_to_json(s);
    CHECK(j.contains("graph"));
    CHECK(io::stratification_from_json(j) == s);

    FitResult r;
    r.vertex_positions = {{0.1, 0.2}, {1.0 / 3.0, 2.0}};
    r.thetas = {0.0, 0.25, 0.75, 0.0};
    r.objective_trace = {2.0, 1.0, 0.5};
    r.iterations = 2;
    r.converged = true;
    r.pinned = {1};
    auto back = io::fit_result_from_json(io::json::parse(io::fit_result_to_json(r).dump()));
    CHECK(back.vertex_positions == r.vertex_positions);
    CHECK(back.thetas == r.thetas);
    CHECK(back.objective_trace == r.objective_trace);
    CHECK(back.iterations == 2);
    CHECK(back.converged);
    CHECK(back.pinned == r.pinned);
}

TEST_CASE("malformed JSON documents are parse errors") {
    CHECK_THROWS_AS(io::cloud_from_json(io::json::parse(R"({"points": [[0, 0]]})")), io::ParseError);
    CHECK_THROWS_AS(io::cloud_from_json(io::json::parse(R"({"epsilon": 0.1, "points": [[0, 0], [1]]})")),
                    io::ParseError);
    CHECK_THROWS_AS(io::graph_from_json(io::json::parse(R"({"vertices": [[0], [1]], "edges": [[0, 0]]})")),
                    io::ParseError);
    CHECK_THROWS_AS(io::graph_from_json(io::json::parse(R"({"vertices": [[0], [1]], "edges": [[0, 1, 2]]})")),
                    io::ParseError);
}

TEST_CASE("reading files") {
    auto dir = temp_dir("files");
    CHECK_THROWS_AS(io::read_text(dir / "absent.csv"), io::IoError);

    io::write_text(dir / "c.csv", "0,0\n1,0\n");
    CHECK_THROWS_AS(io::read_cloud(dir / "c.csv"), io::ParseError);
    CHECK(io::read_cloud(dir / "c.csv", 0.1).size() == 2);

    auto cloud = testing::uniform_cloud(10, 2, 0.3, 5);
    io::write_cloud(dir / "c.json", cloud);
    CHECK(io::read_cloud(dir / "c.json") == cloud);
    CHECK(io::read_cloud(dir / "c.json", 0.2).epsilon() == 0.2);

    io::write_text(dir / "bad.json", "{ not json");
    CHECK_THROWS_AS(io::read_json(dir / "bad.json"), io::ParseError);
    fs::remove_all(dir);
}
