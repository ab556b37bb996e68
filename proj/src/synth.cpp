#include "netcorr/synth.hpp"

#include <string>
#include <utility>

#include "netcorr/detail/rng.hpp"
#include "netcorr/error.hpp"

namespace netcorr {

namespace {

std::vector<std::string> index_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

} // namespace

std::vector<double> propagate(const Graph& g, std::vector<double> x, int source, int steps) {
    if (static_cast<int>(x.size()) != g.n_nodes())
        throw InputError("state length does not match graph");
    if (source < 0 || source >= g.n_nodes()) throw InputError("propagation source out of range");
    if (steps < 0) throw InputError("propagation steps must be nonnegative");
    // The source is held at 1 while the other nodes update, so every round
    // averages a field in which the source reads as 1. After the last round
    // the source keeps its own smoothed value instead of the boundary spike;
    // downstream statistics then see data, not the clamp itself.
    std::vector<double> next(x.size());
    for (int m = 0; m < steps; ++m) {
        x[static_cast<std::size_t>(source)] = 1.0;
        for (int i = 0; i < g.n_nodes(); ++i) {
            const auto& nbrs = g.neighbors(i);
            if (nbrs.empty()) {
                next[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
                continue;
            }
            double s = 0.0;
            for (int j : nbrs) s += x[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(i)] = s / static_cast<double>(nbrs.size());
        }
        x.swap(next);
    }
    return x;
}

NodeData value_propagation(const Graph& g, const PropagationSpec& spec, Diagnostics* diag) {
    if (spec.source < 0 || spec.source >= g.n_nodes())
        throw InputError("propagation source out of range");
    if (spec.noise_sd < 0.0) throw InputError("noise sd must be nonnegative");
    if (diag && !is_connected(g))
        diag->warn("graph is not connected: nodes unreachable from the source stay 0");
    std::vector<double> x(static_cast<std::size_t>(g.n_nodes()), 0.0);
    x[static_cast<std::size_t>(spec.source)] = 1.0;
    x = propagate(g, std::move(x), spec.source, spec.steps);
    if (spec.noise_sd > 0.0) {
        detail::Rng rng(spec.seed);
        for (auto& v : x) v += rng.normal(0.0, spec.noise_sd);
    }
    return NodeData::full(std::move(x), "propagation");
}

Graph er_graph(int n, double p, std::uint64_t seed) {
    if (n < 1) throw InputError("node count must be positive");
    if (p < 0.0 || p > 1.0) throw InputError("edge probability must lie in [0, 1]");
    detail::Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) edges.emplace_back(i, j);
    return Graph(n, std::move(edges), index_labels(n));
}

PlantedPartition planted_partition(int n, int blocks, double p_in, double p_out,
                                   std::uint64_t seed) {
    if (n < 1) throw InputError("node count must be positive");
    if (blocks < 1) throw InputError("block count must be positive");
    if (blocks > n) throw InputError("more blocks than nodes");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw InputError("edge probability must lie in [0, 1]");
    if (p_in <= p_out) throw InputError("planted partition requires p_in > p_out");

    PlantedPartition out;
    out.block.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.block[static_cast<std::size_t>(i)] =
            static_cast<int>((static_cast<long long>(i) * blocks) / n);

    detail::Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double p = out.block[static_cast<std::size_t>(i)] ==
                               out.block[static_cast<std::size_t>(j)]
                           ? p_in
                           : p_out;
            if (rng.uniform01() < p) edges.emplace_back(i, j);
        }
    }
    out.graph = Graph(n, std::move(edges), index_labels(n));
    return out;
}

} // namespace netcorr
