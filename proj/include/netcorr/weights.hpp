#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netcorr/graph.hpp"

namespace netcorr {

/// Collects non-fatal warnings (isolated nodes, masked values, ...).
struct Diagnostics {
    std::vector<std::string> warnings;
    void warn(std::string msg) { warnings.push_back(std::move(msg)); }
    bool empty() const { return warnings.empty(); }
};

enum class WeightKind {
    binary_adjacency,
    row_normalized,
    row_normalized_self_loops,
    distance_class,
};

std::string to_string(WeightKind kind);

/// Sparse row-oriented interaction weights w_ij.
struct WeightMatrix {
    int n = 0;
    WeightKind kind = WeightKind::binary_adjacency;
    int distance = 0; // distance_class kind only
    std::vector<std::vector<std::pair<int, double>>> rows; // (column, weight), sorted by column
    double total_weight = 0.0; // |W| = sum of all stored weights

    double row_sum(int i) const {
        double s = 0.0;
        for (const auto& [j, w] : rows[static_cast<std::size_t>(i)]) s += w;
        return s;
    }
};

/// w_ij = 1 for every edge, both directions; |W| = 2E.
WeightMatrix binary_adjacency(const Graph& g);

/// w_ij = 1/k_i over the neighbors of i. With self_loops, the diagonal entry
/// is included before normalization, so each weight is 1/(k_i + 1). Isolated
/// nodes get an all-zero row and a warning.
WeightMatrix row_normalized(const Graph& g, bool self_loops = false, Diagnostics* diag = nullptr);

/// Binary symmetric matrix with w_ij = 1 iff the shortest path between i and
/// j has length exactly d (d >= 1). Beyond the diameter the matrix is empty,
/// which is a valid result with total_weight 0.
WeightMatrix distance_class(const Graph& g, int d);

/// All distance classes 1..d_max from one BFS sweep.
std::vector<WeightMatrix> distance_classes(const Graph& g, int d_max);

/// Restricts W to the present nodes: rows and columns of absent nodes are
/// dropped, and rows of row-normalized kinds are renormalized to sum 1 over
/// the surviving entries. Binary kinds keep unit weights.
WeightMatrix restricted(const WeightMatrix& W, const std::vector<std::uint8_t>& present);

/// Lagged vector: out_i = sum_j w_ij z_j. Zero rows give 0.
std::vector<double> lag(const WeightMatrix& W, const std::vector<double>& z);

} // namespace netcorr
