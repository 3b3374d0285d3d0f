#include <doctest.h>

#include <cmath>
#include <limits>

#include "strata/core.hpp"

using namespace strata;

TEST_CASE("three finite points with positive epsilon are valid") {
    PointCloud cloud({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, 0.1);
    auto report = validate_cloud(cloud);
    CHECK(report.valid());
    CHECK(report.warnings.empty());
    CHECK_NOTHROW(require_valid(cloud));
}

TEST_CASE("non-finite coordinate is reported with its index") {
    PointCloud cloud({{std::numeric_limits<double>::quiet_NaN(), 0.0}}, 0.1);
    auto report = validate_cloud(cloud);
    REQUIRE_FALSE(report.valid());
    CHECK(report.findings.front() == "non-finite coordinate at index 0");

    PointCloud later({{0.0, 0.0}, {1.0, 0.0}, {0.0, std::numeric_limits<double>::infinity()}}, 0.1);
    CHECK(validate_cloud(later).findings.front() == "non-finite coordinate at index 2");
    CHECK_THROWS_AS(require_valid(later), InvalidValue);
}

TEST_CASE("non-positive epsilon is reported") {
    PointCloud cloud({{0.0, 0.0}}, 0.0);
    auto report = validate_cloud(cloud);
    REQUIRE_FALSE(report.valid());
    CHECK(report.findings.front() == "epsilon must be positive");
    CHECK_FALSE(validate_cloud(PointCloud({{0.0, 0.0}}, -1.0)).valid());
}

TEST_CASE("duplicate points are warnings, not findings") {
    PointCloud cloud({{0.5, 0.5}, {0.5, 0.5}}, 0.1);
    auto report = validate_cloud(cloud);
    CHECK(report.valid());
    CHECK(report.warnings.size() == 1);
}

TEST_CASE("empty cloud is rejected by require_valid") {
    CHECK_THROWS_AS(require_valid(PointCloud(2, 0.1)), InvalidValue);
}

TEST_CASE("mixed point lengths are rejected") {
    PointCloud cloud(2, 0.1);
    cloud.add(std::vector<double>{1.0, 2.0});
    CHECK_THROWS_AS(cloud.add(std::vector<double>{1.0, 2.0, 3.0}), DimensionMismatch);
    CHECK(cloud.size() == 1);
    CHECK_THROWS_AS(PointCloud({{0.0, 0.0}, {1.0}}, 0.1), DimensionMismatch);
}

TEST_CASE("subset keeps order and epsilon") {
    PointCloud cloud({{0.0}, {1.0}, {2.0}, {3.0}}, 0.25);
    std::vector<Index> pick = {3, 1};
    auto sub = cloud.subset(pick);
    CHECK(sub.size() == 2);
    CHECK(sub.epsilon() == 0.25);
    CHECK(sub.point(0)[0] == 3.0);
    CHECK(sub.point(1)[0] == 1.0);
}

TEST_CASE("abstract graph rejects malformed edges") {
    CHECK_THROWS_AS(AbstractGraph(2, {{0, 2}}), InvalidValue);
    CHECK_THROWS_AS(AbstractGraph(2, {{1, 1}}), InvalidValue);
    CHECK_THROWS_AS(AbstractGraph(3, {{0, 1}, {1, 0}}), InvalidValue);

    AbstractGraph g(4, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 3));
    CHECK(g.degrees() == std::vector<std::size_t>{2, 2, 2, 0});
    CHECK(g.adjacency()[0] == std::vector<Index>{1, 2});
}

TEST_CASE("embedded graph needs distinct finite positions of one length") {
    AbstractGraph g(2, {{0, 1}});
    CHECK_NOTHROW(EmbeddedGraph(g, {{0.0, 0.0}, {1.0, 0.0}}));
    CHECK_THROWS_AS(EmbeddedGraph(g, {{0.0, 0.0}}), InvalidValue);
    CHECK_THROWS_AS(EmbeddedGraph(g, {{0.0, 0.0}, {0.0, 0.0}}), InvalidValue);
    CHECK_THROWS_AS(EmbeddedGraph(g, {{0.0, 0.0}, {1.0, NAN}}), InvalidValue);
    CHECK_THROWS_AS(EmbeddedGraph(g, {{0.0, 0.0}, {1.0}}), DimensionMismatch);
}

TEST_CASE("stratification checks") {
    Stratification s;
    s.labels = {0, 1, 0};
    s.vertex_clusters = {{0}, {2}};
    s.edge_clusters = {{1}};
    s.incidence = {{0, 1}};
    CHECK_NOTHROW(check_stratification(s, 3));
    CHECK(s.graph() == AbstractGraph(2, {{0, 1}}));

    auto missing = s;
    missing.vertex_clusters = {{0}};
    CHECK_THROWS_AS(check_stratification(missing, 3), InvalidValue);

    auto mislabeled = s;
    mislabeled.labels = {1, 1, 0};
    CHECK_THROWS_AS(check_stratification(mislabeled, 3), InvalidValue);

    auto twice = s;
    twice.edge_clusters = {{1, 2}};
    CHECK_THROWS_AS(check_stratification(twice, 3), InvalidValue);
}

TEST_CASE("distances") {
    std::vector<double> a = {0.0, 0.0};
    std::vector<double> b = {3.0, 4.0};
    CHECK(squared_distance(a, b) == 25.0);
    CHECK(distance(a, b) == 5.0);
}
