#include <doctest.h>

#include <algorithm>
#include <random>

#include "strata/metrics.hpp"
#include "support.hpp"

using namespace strata;

namespace {

std::vector<Coords> random_set(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Coords> out(n, Coords(dim));
    for (auto& p : out) {
        for (auto& c : p) {
            c = u(rng);
        }
    }
    return out;
}

/// All simple graphs on n vertices, by edge subset bitmask.
std::vector<AbstractGraph> all_graphs(std::size_t n) {
    std::vector<Edge> slots;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            slots.push_back({i, j});
        }
    }
    std::vector<AbstractGraph> out;
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t k = 0; k < slots.size(); ++k) {
            if (mask & (1u << k)) {
                edges.push_back(slots[k]);
            }
        }
        out.emplace_back(n, edges);
    }
    return out;
}

}  // namespace

TEST_CASE("Hausdorff examples") {
    std::vector<Coords> a = {{0.0, 0.0}, {1.0, 1.0}};
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff({{0.0, 0.0}}, {{3.0, 4.0}}) == 5.0);
    CHECK(hausdorff({{0.0}, {1.0}}, {{0.0}, {2.0}}) == 1.0);
    CHECK_THROWS_AS(hausdorff({}, a), InvalidValue);
    CHECK_THROWS_AS(hausdorff({{0.0}}, a), DimensionMismatch);
}

TEST_CASE("Hausdorff is symmetric and obeys the triangle inequality") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> size(1, 30);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = 1 + trial % 4;
        auto a = random_set(rng, size(rng), dim);
        auto b = random_set(rng, size(rng), dim);
        auto c = random_set(rng, size(rng), dim);
        const double ab = hausdorff(a, b);
        CHECK(ab == hausdorff(b, a));
        CHECK(hausdorff(a, c) <= ab + hausdorff(b, c) + 1e-12);
        CHECK(ab >= 0.0);
    }
}

TEST_CASE("test graph against a relabelled copy") {
    auto g = testing::section4_graph_2d().graph();
    std::mt19937_64 rng(12);
    std::vector<Index> perm = {0, 1, 2, 3, 4};
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        auto h = testing::relabel(g, perm);
        auto m = graph_isomorphic(h, g);
        REQUIRE(m.has_value());
        for (const auto& e : h.edges()) {
            CHECK(g.adjacent((*m)[e.a], (*m)[e.b]));
        }
        // The test graph has one nontrivial automorphism (swap 2 and 3), so
        // the inverse permutation is among the isomorphisms found.
        std::vector<Index> inverse(5);
        for (Index v = 0; v < 5; ++v) {
            inverse[perm[v]] = v;
        }
        auto all = all_isomorphisms(h, g);
        CHECK(all.size() == 2);
        CHECK(std::find(all.begin(), all.end(), inverse) != all.end());
    }
}

TEST_CASE("path and triangle are not isomorphic") {
    AbstractGraph path(3, {{0, 1}, {1, 2}});
    AbstractGraph triangle(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK_FALSE(graph_isomorphic(path, triangle).has_value());
    CHECK(all_isomorphisms(path, triangle).empty());
    CHECK(all_isomorphisms(path, path).size() == 2);
}

TEST_CASE("isomorphism agrees with the permutation oracle on all small graphs") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto graphs = all_graphs(n);
        for (const auto& g1 : graphs) {
            for (const auto& g2 : graphs) {
                CHECK(graph_isomorphic(g1, g2).has_value() == testing::permutation_isomorphic(g1, g2));
            }
        }
    }
}

TEST_CASE("isomorphism agrees with the permutation oracle on 5 vertices") {
    auto graphs = all_graphs(5);
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<std::size_t> pick(0, graphs.size() - 1);
    std::vector<Index> perm = {0, 1, 2, 3, 4};
    for (int trial = 0; trial < 3000; ++trial) {
        const auto& g1 = graphs[pick(rng)];
        // Half the pairs are relabelled copies so both answers occur often.
        AbstractGraph g2;
        if (trial % 2 == 0) {
            std::shuffle(perm.begin(), perm.end(), rng);
            g2 = testing::relabel(g1, perm);
        } else {
            g2 = graphs[pick(rng)];
        }
        CHECK(graph_isomorphic(g1, g2).has_value() == testing::permutation_isomorphic(g1, g2));
    }
}

TEST_CASE("all isomorphisms equals the automorphism count by brute force") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = testing::random_graph(5, 0.5, rng);
        std::vector<Index> perm = {0, 1, 2, 3, 4};
        std::size_t count = 0;
        do {
            bool ok = true;
            for (const auto& e : g.edges()) {
                ok = ok && g.adjacent(perm[e.a], perm[e.b]);
            }
            count += ok;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(all_isomorphisms(g, g).size() == count);
    }
}

TEST_CASE("graphs beyond the size bound are refused") {
    AbstractGraph big(13, {});
    CHECK_THROWS_AS(graph_isomorphic(big, big), UnsupportedSize);
    AbstractGraph ok(12, {});
    CHECK(graph_isomorphic(AbstractGraph(12, {{0, 1}}), AbstractGraph(12, {{5, 7}})).has_value());
    CHECK(graph_isomorphic(ok, ok).has_value());
}

TEST_CASE("vertex error of identical graphs") {
    auto g = testing::section4_graph_2d();
    auto e = vertex_error(g, g);
    CHECK(e.max_error == 0.0);
    CHECK(e.mean_error == 0.0);
    CHECK(e.mapping == VertexMapping{0, 1, 2, 3, 4});
}

TEST_CASE("vertex error of a uniform shift") {
    auto truth = testing::section4_graph_3d();
    std::vector<Coords> moved = truth.positions();
    for (auto& p : moved) {
        p[0] += 0.18;
        p[2] -= 0.24;
    }
    auto e = vertex_error(EmbeddedGraph(truth.graph(), moved), truth);
    CHECK(e.max_error == doctest::Approx(0.3));
    CHECK(e.mean_error == doctest::Approx(0.3));
}

TEST_CASE("square with two candidate mappings picks the closer one") {
    // Truth: square 0-1-2-3. Fitted: same square with 1 and 3 swapped in
    // position, so the identity labels are far and the reflection is exact.
    AbstractGraph square(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    EmbeddedGraph truth(square, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    EmbeddedGraph fitted(square, {{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}});
    auto candidates = all_isomorphisms(square, square);
    CHECK(candidates.size() == 8);

    auto e = vertex_error(fitted, truth);
    CHECK(e.max_error == 0.0);
    CHECK(e.mapping == VertexMapping{0, 3, 2, 1});

    // Brute force over the candidates.
    double best = 1e300;
    for (const auto& m : candidates) {
        double worst = 0.0;
        for (Index v = 0; v < 4; ++v) {
            worst = std::max(worst, distance(fitted.position(v), truth.position(m[v])));
        }
        best = std::min(best, worst);
    }
    CHECK(e.max_error == best);
}

TEST_CASE("vertex error refuses non-isomorphic graphs") {
    auto a = testing::segment_graph();
    EmbeddedGraph b(AbstractGraph(2, {}), {{0.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(vertex_error(a, b), NotIsomorphic);
}

TEST_CASE("evaluate") {
    auto truth = testing::section4_graph_2d();
    auto report = evaluate(truth, truth);
    CHECK(report.isomorphic);
    CHECK(report.max_vertex_error == 0.0);
    CHECK_FALSE(report.hausdorff_sample_to_model.has_value());

    auto wrong = evaluate(testing::segment_graph(), truth);
    CHECK_FALSE(wrong.isomorphic);
    CHECK_FALSE(wrong.max_vertex_error.has_value());

    PointCloud cloud(2, 0.1);
    for (const auto& p : truth.positions()) {
        cloud.add(p);
    }
    auto with_cloud = evaluate(truth, truth, &cloud);
    REQUIRE(with_cloud.hausdorff_sample_to_model.has_value());
    CHECK(*with_cloud.hausdorff_sample_to_model >= 2.0);
}
