#pragma once

// Random test instances. Uses std::mt19937 directly so test-case generation
// shares nothing with the library's own RNG.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "netcorr/graph.hpp"
#include "netcorr/node_data.hpp"

namespace testutil {

inline netcorr::Graph random_graph(std::mt19937& rng, int n, double p) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    if (edges.empty()) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        int u = pick(rng), v = pick(rng);
        while (v == u) v = pick(rng);
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return netcorr::Graph(n, std::move(edges), std::move(labels));
}

inline std::vector<double> random_values(std::mt19937& rng, int n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = dist(rng);
    return x;
}

/// Mask with `absent` nodes dropped, biased so at least `min_present` nodes
/// remain present.
inline std::vector<std::uint8_t> random_mask(std::mt19937& rng, int n, int absent,
                                             int min_present = 3) {
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n), 1);
    std::uniform_int_distribution<int> pick(0, n - 1);
    int dropped = 0;
    while (dropped < absent && n - dropped > min_present) {
        int i = pick(rng);
        if (m[static_cast<std::size_t>(i)]) {
            m[static_cast<std::size_t>(i)] = 0;
            ++dropped;
        }
    }
    return m;
}

/// True when the induced subgraph on present nodes still has an edge and the
/// present values are non-constant: the preconditions shared by most
/// statistics.
inline bool usable_instance(const netcorr::Graph& g, const std::vector<double>& x,
                            const std::vector<std::uint8_t>& m) {
    bool edge = false;
    for (const auto& [u, v] : g.edges())
        if (m[static_cast<std::size_t>(u)] && m[static_cast<std::size_t>(v)]) {
            edge = true;
            break;
        }
    if (!edge) return false;
    double first = 0.0;
    bool seen = false, varied = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!m[i]) continue;
        if (!seen) {
            first = x[i];
            seen = true;
        } else if (x[i] != first) {
            varied = true;
        }
    }
    return varied;
}

} // namespace testutil
