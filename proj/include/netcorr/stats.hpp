#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netcorr/graph.hpp"
#include "netcorr/inference.hpp"
#include "netcorr/node_data.hpp"
#include "netcorr/weights.hpp"

namespace netcorr {

/// Moran scatter quadrants. Ties (z or lag exactly 0) go to the Low side.
enum class Quadrant { HH, HL, LH, LL };

std::string to_string(Quadrant q);

/// The Moran scatter plot: centered values against their lag, one entry per
/// present node. The slope is the origin regression of lag on z and equals
/// the global Moran index when |W| = N.
struct MoranScatter {
    std::vector<int> nodes;      // node indices, present nodes only
    std::vector<double> z;       // centered value
    std::vector<double> z_lag;   // lagged centered value
    std::vector<Quadrant> quadrant;
    double slope = 0.0;
};

struct CorrelogramPoint {
    int d = 0;
    std::optional<double> value;   // absent when |W(d)| = 0
    double total_weight = 0.0;     // |W(d)| over present nodes
    std::optional<double> p_value; // attached when a null was requested
};

/// Mean-centered values over the present nodes; absent nodes carry 0 and stay
/// masked. Requires at least two present nodes.
std::vector<double> center(const NodeData& x);

/// Global Moran index: I = (N/|W|) (z . z~) / |z|^2 over present nodes.
double global_moran(const WeightMatrix& W, const NodeData& x);

/// Node Moran indices I_i = z_i z~_i / |z|^2. Absent nodes get NaN.
std::vector<double> local_moran(const WeightMatrix& W, const NodeData& x);

/// Requires a row-normalized weight kind.
MoranScatter moran_scatter(const WeightMatrix& W, const NodeData& x);

/// Geary's C = (N-1) sum_ij w_ij (x_i - x_j)^2 / (2 |W| sum_i z_i^2).
double geary_c(const WeightMatrix& W, const NodeData& x);

/// Getis-Ord global G = sum_{i!=j} w_ij x_i x_j / sum_{i!=j} x_i x_j.
/// Requires nonnegative data with at least one nonzero value. If every cross
/// product is zero the statistic is 0 by convention.
double getis_ord_global(const WeightMatrix& W, const NodeData& x);

/// Per-node G_i = sum_{j!=i} w_ij x_j / sum_{j!=i} x_j. Nodes whose
/// denominator is zero report nullopt rather than dividing by zero.
std::vector<std::optional<double>> getis_ord_local(const WeightMatrix& W, const NodeData& x);

/// Continuous assortativity with binary adjacency:
/// (sum_ij x_i A_ij x_j - sum_ij x_i (k_i k_j / 2E) x_j) / var(k),
/// population variance of degrees. Computed on the subgraph induced by the
/// present nodes; degrees there must not all be equal.
double assortativity_continuous(const Graph& g, const NodeData& x);

/// Same statistic read off a binary-adjacency matrix (degrees are the row
/// sums). Lets the configuration null rebuild it per rewired replicate
/// through the common (W, x) statistic shape.
double assortativity_continuous(const WeightMatrix& W, const NodeData& x);

/// Network correlation with one lag factor, on mean-centered data:
/// rho_G = sum_ij w_ij x_i y_j / sqrt(sum w x_i x_j) sqrt(sum w y_i y_j).
/// Fails with "network variance not positive" when a root term is <= 0.
double coscia_rho(const WeightMatrix& W, const NodeData& x, const NodeData& y);

/// Lee's L = (N / sum_i (sum_j w_ij)^2) (x~ . y~) / (|x||y|) on mean-centered
/// data. Symmetric in x and y; L(x,x) >= 0. Conventionally computed with the
/// row-normalized-with-self-loops weights so x_i and y_i interact directly.
double lee_l(const WeightMatrix& W, const NodeData& x, const NodeData& y);

/// Pearson correlation over jointly present nodes.
double pearson_r(const NodeData& x, const NodeData& y);

/// Two-sided p-value for a Pearson correlation from the t distribution with
/// n - 2 degrees of freedom.
double pearson_p_two_sided(double r, int n);

/// Moran correlogram: I(d) for d = 1..d_max using the binary distance-class
/// matrix W(d) and prefactor N/|W(d)|; row_normalize switches to the
/// row-normalized W(d). Classes with |W(d)| = 0 report an absent value. A
/// NullSpec attaches p-values per distance (data-permutation or
/// configuration kinds).
std::vector<CorrelogramPoint> correlogram(const Graph& g, const NodeData& x, int d_max,
                                          const std::optional<NullSpec>& null = {},
                                          bool row_normalize = false);

} // namespace netcorr
