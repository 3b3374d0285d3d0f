#include "strata/neighborhood_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace strata {

namespace {

constexpr double max_cell = 9.0e15;

}  // namespace

std::size_t GridIndex::KeyHash::operator()(const std::vector<std::int64_t>& key) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto k : key) {
        h ^= static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

GridIndex::GridIndex(const PointCloud& cloud, double cell_size)
    : GridIndex(cloud, cell_size, [&] {
          std::vector<Index> all(cloud.size());
          std::iota(all.begin(), all.end(), Index{0});
          return all;
      }()) {}

GridIndex::GridIndex(const PointCloud& cloud, double cell_size, std::vector<Index> members)
    : cloud_(&cloud), cell_(cell_size), members_(std::move(members)) {
    if (!(cell_ > 0.0) || !std::isfinite(cell_)) {
        throw InvalidValue("grid cell size must be positive and finite");
    }
    std::sort(members_.begin(), members_.end());
    std::vector<std::int64_t> key(cloud.dim());
    for (auto i : members_) {
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < key.size(); ++k) {
            key[k] = cell_of(p[k]);
        }
        cells_[key].push_back(i);
    }
}

std::int64_t GridIndex::cell_of(double x) const {
    return static_cast<std::int64_t>(std::clamp(std::floor(x / cell_), -max_cell, max_cell));
}

template <typename Fn>
void GridIndex::visit(std::span<const double> q, double r, Fn&& fn) const {
    const std::size_t dim = cloud_->dim();
    std::vector<std::int64_t> lo(dim);
    std::vector<std::int64_t> hi(dim);
    double cells = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
        lo[k] = cell_of(q[k] - r);
        hi[k] = cell_of(q[k] + r);
        cells *= static_cast<double>(hi[k] - lo[k] + 1);
    }
    if (cells > static_cast<double>(std::max(cells_.size(), std::size_t{1}))) {
        for (auto i : members_) {
            fn(i);
        }
        return;
    }
    std::vector<std::int64_t> key = lo;
    while (true) {
        if (auto it = cells_.find(key); it != cells_.end()) {
            for (auto i : it->second) {
                fn(i);
            }
        }
        std::size_t k = 0;
        for (; k < dim; ++k) {
            if (key[k] < hi[k]) {
                ++key[k];
                break;
            }
            key[k] = lo[k];
        }
        if (k == dim) {
            break;
        }
    }
}

std::vector<Index> GridIndex::radius_query(std::span<const double> q, double r) const {
    if (q.size() != cloud_->dim()) {
        throw DimensionMismatch("query has " + std::to_string(q.size()) + " coordinates, cloud has " +
                                std::to_string(cloud_->dim()));
    }
    std::vector<Index> out;
    const double r2 = r * r;
    visit(q, r, [&](Index i) {
        if (squared_distance(cloud_->point(i), q) <= r2) {
            out.push_back(i);
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

double GridIndex::nearest_distance(std::span<const double> q, double hint) const {
    if (members_.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    double r = hint > 0.0 ? hint : cell_;
    while (true) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t seen = 0;
        visit(q, r, [&](Index i) {
            ++seen;
            best = std::min(best, squared_distance(cloud_->point(i), q));
        });
        // A hit inside the search radius is the true nearest; a full scan is too.
        if (best <= r * r || seen == members_.size()) {
            return std::sqrt(best);
        }
        r *= 2.0;
    }
}

std::vector<Index> radius_neighbors(const PointCloud& cloud, std::span<const double> q, double r) {
    if (q.size() != cloud.dim()) {
        throw DimensionMismatch("query has " + std::to_string(q.size()) + " coordinates, cloud has " +
                                std::to_string(cloud.dim()));
    }
    GridIndex index(cloud, r > 0.0 ? r : 1.0);
    return index.radius_query(q, r);
}

NeighborhoodGraph::NeighborhoodGraph(const PointCloud& cloud, double radius, std::vector<std::vector<Index>> adjacency)
    : cloud_(&cloud), radius_(radius), adjacency_(std::move(adjacency)) {}

std::size_t NeighborhoodGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& a : adjacency_) {
        twice += a.size();
    }
    return twice / 2;
}

NeighborhoodGraph build_graph(const PointCloud& cloud, double radius) {
    require_valid(cloud);
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidValue("graph radius must be positive");
    }
    GridIndex index(cloud, radius);
    std::vector<std::vector<Index>> adjacency(cloud.size());
    for (Index i = 0; i < cloud.size(); ++i) {
        auto near = index.radius_query(cloud.point(i), radius);
        near.erase(std::remove(near.begin(), near.end(), i), near.end());
        adjacency[i] = std::move(near);
    }
    return NeighborhoodGraph(cloud, radius, std::move(adjacency));
}

std::vector<Cluster> ComponentLabeling::groups() const {
    std::vector<Index> reps(labels);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    std::vector<Cluster> out(reps.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        auto slot = std::lower_bound(reps.begin(), reps.end(), labels[k]) - reps.begin();
        out[slot].push_back(indices[k]);
    }
    for (auto& c : out) {
        std::sort(c.begin(), c.end());
    }
    return out;
}

ComponentLabeling components(const NeighborhoodGraph& graph, std::span<const Index> subset, double max_edge) {
    if (max_edge > graph.radius()) {
        throw InvalidValue("component threshold " + std::to_string(max_edge) + " exceeds graph radius " +
                           std::to_string(graph.radius()));
    }
    // (global index, position in subset), sorted for membership lookups.
    std::vector<std::pair<Index, std::size_t>> lookup;
    lookup.reserve(subset.size());
    for (std::size_t k = 0; k < subset.size(); ++k) {
        if (subset[k] >= graph.size()) {
            throw std::out_of_range("subset index " + std::to_string(subset[k]) + " outside graph of " +
                                    std::to_string(graph.size()) + " points");
        }
        lookup.emplace_back(subset[k], k);
    }
    std::sort(lookup.begin(), lookup.end());

    const auto& cloud = graph.cloud();
    const double max2 = max_edge * max_edge;
    DisjointSets sets(subset.size());
    for (std::size_t k = 0; k < subset.size(); ++k) {
        const Index i = subset[k];
        for (auto j : graph.neighbors(i)) {
            if (j <= i) {
                continue;
            }
            auto it = std::lower_bound(lookup.begin(), lookup.end(), std::pair<Index, std::size_t>{j, 0});
            if (it == lookup.end() || it->first != j) {
                continue;
            }
            if (squared_distance(cloud.point(i), cloud.point(j)) <= max2) {
                for (; it != lookup.end() && it->first == j; ++it) {
                    sets.unite(k, it->second);
                }
            }
        }
    }
    // Repeated subset entries belong together.
    for (std::size_t k = 1; k < lookup.size(); ++k) {
        if (lookup[k].first == lookup[k - 1].first) {
            sets.unite(lookup[k].second, lookup[k - 1].second);
        }
    }

    ComponentLabeling out;
    out.indices.assign(subset.begin(), subset.end());
    out.labels.resize(subset.size());
    std::vector<Index> smallest(subset.size(), std::numeric_limits<Index>::max());
    for (std::size_t k = 0; k < subset.size(); ++k) {
        auto root = sets.find(k);
        smallest[root] = std::min(smallest[root], subset[k]);
    }
    for (std::size_t k = 0; k < subset.size(); ++k) {
        auto root = sets.find(k);
        out.labels[k] = smallest[root];
        if (root == k) {
            ++out.component_count;
        }
    }
    return out;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
        return false;
    }
    if (size_[a] < size_[b]) {
        std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

}  // namespace strata
