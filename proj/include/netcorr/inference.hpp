#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netcorr/graph.hpp"
#include "netcorr/node_data.hpp"
#include "netcorr/weights.hpp"

namespace netcorr {

enum class NullKind { data_permutation, conditional_permutation, configuration };
enum class Tail { upper, lower, two_sided };

std::string to_string(NullKind kind);
std::string to_string(Tail tail);

struct NullSpec {
    NullKind kind = NullKind::data_permutation;
    int replicates = 999;
    std::uint64_t seed = 0;
    std::optional<int> swaps_per_sample; // configuration kind; default 10*E
    Tail tail = Tail::upper;
    int threads = 1; // execution knob; results are identical at any value
};

/// Monte Carlo summary for one statistic under one null model. The p-value
/// uses the plus-one estimator, (1 + #{replicates at least as extreme}) /
/// (1 + replicates), so it is never exactly 0.
struct NullResult {
    double observed = 0.0;
    double p_value = 1.0;
    std::vector<double> replicate_values; // NaN marks a failed replicate
    double null_mean = 0.0;
    double null_sd = 0.0;
    int failed = 0;
};

using UnivariateStat = std::function<double(const WeightMatrix&, const NodeData&)>;
using BivariateStat = std::function<double(const WeightMatrix&, const NodeData&, const NodeData&)>;
using WeightsBuilder = std::function<WeightMatrix(const Graph&)>;

/// Data-permutation null: each replicate shuffles the present values of x
/// uniformly and re-evaluates the statistic. Deterministic for a fixed seed
/// at any thread count. Aborts when more than 10% of replicates fail.
NullResult permutation_null(const UnivariateStat& stat, const WeightMatrix& W, const NodeData& x,
                            const NullSpec& spec);

/// Bivariate variant: permutes x only, holding y and the network fixed.
NullResult permutation_null(const BivariateStat& stat, const WeightMatrix& W, const NodeData& x,
                            const NodeData& y, const NullSpec& spec);

/// Conditional randomization for the node Moran indices: for each node i the
/// value z_i stays fixed while the values at the other nodes are permuted.
/// Returns one NullResult per node; absent nodes get an empty result with
/// NaN observed value.
std::vector<NullResult> conditional_permutation_local(const WeightMatrix& W, const NodeData& x,
                                                      const NullSpec& spec);

/// Degree-preserving rewiring: n_swaps accepted double edge swaps
/// ((a,b),(c,d) -> (a,d),(c,b)); proposals that would create a self-loop or
/// duplicate edge are rejected. Throws NotRewireableError when not a single
/// proposal is accepted within a budget of 100 * n_swaps attempts.
Graph double_edge_swap(const Graph& g, int n_swaps, std::uint64_t seed);

/// Configuration-model null: each replicate rewires a fresh copy of the
/// observed graph (spec.swaps_per_sample accepted swaps, default 10*E),
/// rebuilds the weights with `make_weights`, and re-evaluates the statistic
/// with the data fixed. Graphs that admit no swap at all (a clique) keep the
/// observed topology, so every replicate ties and the p-value is 1.
NullResult configuration_null(const UnivariateStat& stat, const Graph& g,
                              const WeightsBuilder& make_weights, const NodeData& x,
                              const NullSpec& spec);

NullResult configuration_null(const BivariateStat& stat, const Graph& g,
                              const WeightsBuilder& make_weights, const NodeData& x,
                              const NodeData& y, const NullSpec& spec);

/// Per-node configuration null for the node Moran indices: one rewired graph
/// per replicate, shared across all nodes, so the whole vector costs the same
/// as a single global run. Absent nodes get an empty result with NaN observed
/// value.
std::vector<NullResult> configuration_local(const Graph& g, const WeightsBuilder& make_weights,
                                            const NodeData& x, const NullSpec& spec);

} // namespace netcorr
