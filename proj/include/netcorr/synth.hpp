#pragma once

#include <cstdint>
#include <vector>

#include "netcorr/graph.hpp"
#include "netcorr/node_data.hpp"
#include "netcorr/weights.hpp"

namespace netcorr {

/// Value propagation: a unit source diffused by neighbour averaging.
struct PropagationSpec {
    int source = 0;
    int steps = 0;        // M synchronous rounds
    double noise_sd = 0.0; // sigma of the Gaussian added after the last round
    std::uint64_t seed = 0;
};

/// Run `steps` synchronous neighbour-averaging rounds from the state in `x`:
/// the source is pinned to 1, then every node takes the mean of its
/// neighbours' previous-round values (isolated nodes keep theirs). After the
/// last round the source carries its own averaged value like any other node.
/// No noise. Exposed separately so data like "propagate from one source,
/// then continue from another" can be built.
std::vector<double> propagate(const Graph& g, std::vector<double> x, int source, int steps);

/// The full generator: x = indicator of the source, `steps` rounds of
/// propagate(), then i.i.d. Gaussian(0, noise_sd^2) added to every node,
/// the source included. Disconnected graphs only warn: nodes unreachable
/// from the source stay 0 before noise.
NodeData value_propagation(const Graph& g, const PropagationSpec& spec,
                           Diagnostics* diag = nullptr);

/// Erdos-Renyi G(n, p): every unordered pair drawn independently.
Graph er_graph(int n, double p, std::uint64_t seed);

/// A planted-partition graph plus its ground-truth block per node.
struct PlantedPartition {
    Graph graph;
    std::vector<int> block;
};

/// n nodes split evenly into `blocks` contiguous groups; within-block pairs
/// wired with p_in, across-block pairs with p_out (p_in > p_out).
PlantedPartition planted_partition(int n, int blocks, double p_in, double p_out,
                                   std::uint64_t seed);

/// Zachary's karate club (34 nodes, 78 edges), labels "1".."34".
Graph karate();

} // namespace netcorr
