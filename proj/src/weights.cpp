#include "netcorr/weights.hpp"

#include <algorithm>
#include <deque>

#include "netcorr/error.hpp"

namespace netcorr {

std::string to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::binary_adjacency: return "binary-adjacency";
        case WeightKind::row_normalized: return "row-normalized";
        case WeightKind::row_normalized_self_loops: return "row-normalized-with-self-loops";
        case WeightKind::distance_class: return "distance-class";
    }
    return "unknown";
}

WeightMatrix binary_adjacency(const Graph& g) {
    WeightMatrix W;
    W.n = g.n_nodes();
    W.kind = WeightKind::binary_adjacency;
    W.rows.resize(static_cast<std::size_t>(W.n));
    for (int i = 0; i < W.n; ++i) {
        auto& row = W.rows[static_cast<std::size_t>(i)];
        row.reserve(g.neighbors(i).size());
        for (int j : g.neighbors(i)) row.emplace_back(j, 1.0);
        W.total_weight += static_cast<double>(row.size());
    }
    return W;
}

WeightMatrix row_normalized(const Graph& g, bool self_loops, Diagnostics* diag) {
    WeightMatrix W;
    W.n = g.n_nodes();
    W.kind = self_loops ? WeightKind::row_normalized_self_loops : WeightKind::row_normalized;
    W.rows.resize(static_cast<std::size_t>(W.n));
    for (int i = 0; i < W.n; ++i) {
        const auto& nbrs = g.neighbors(i);
        auto& row = W.rows[static_cast<std::size_t>(i)];
        if (nbrs.empty() && !self_loops) {
            if (diag) diag->warn("isolated node has an all-zero weight row: " + g.label(i));
            continue;
        }
        double w = 1.0 / static_cast<double>(nbrs.size() + (self_loops ? 1 : 0));
        row.reserve(nbrs.size() + (self_loops ? 1 : 0));
        bool placed_diag = !self_loops;
        for (int j : nbrs) {
            if (!placed_diag && i < j) {
                row.emplace_back(i, w);
                placed_diag = true;
            }
            row.emplace_back(j, w);
        }
        if (!placed_diag) row.emplace_back(i, w);
        W.total_weight += w * static_cast<double>(row.size());
    }
    return W;
}

WeightMatrix distance_class(const Graph& g, int d) {
    if (d < 1) throw InputError("distance class requires d >= 1");
    WeightMatrix W;
    W.n = g.n_nodes();
    W.kind = WeightKind::distance_class;
    W.distance = d;
    W.rows.resize(static_cast<std::size_t>(W.n));
    for (int s = 0; s < W.n; ++s) {
        auto dist = bfs_distances(g, s);
        auto& row = W.rows[static_cast<std::size_t>(s)];
        for (int j = 0; j < W.n; ++j) {
            if (dist[static_cast<std::size_t>(j)] == d) row.emplace_back(j, 1.0);
        }
        W.total_weight += static_cast<double>(row.size());
    }
    return W;
}

std::vector<WeightMatrix> distance_classes(const Graph& g, int d_max) {
    if (d_max < 1) throw InputError("distance class requires d >= 1");
    std::vector<WeightMatrix> out(static_cast<std::size_t>(d_max));
    for (int d = 1; d <= d_max; ++d) {
        auto& W = out[static_cast<std::size_t>(d - 1)];
        W.n = g.n_nodes();
        W.kind = WeightKind::distance_class;
        W.distance = d;
        W.rows.resize(static_cast<std::size_t>(W.n));
    }
    for (int s = 0; s < g.n_nodes(); ++s) {
        auto dist = bfs_distances(g, s);
        for (int j = 0; j < g.n_nodes(); ++j) {
            int d = dist[static_cast<std::size_t>(j)];
            if (d >= 1 && d <= d_max) {
                auto& W = out[static_cast<std::size_t>(d - 1)];
                W.rows[static_cast<std::size_t>(s)].emplace_back(j, 1.0);
                W.total_weight += 1.0;
            }
        }
    }
    return out;
}

WeightMatrix restricted(const WeightMatrix& W, const std::vector<std::uint8_t>& present) {
    if (static_cast<int>(present.size()) != W.n) throw InputError("mask length does not match weight matrix");
    WeightMatrix R;
    R.n = W.n;
    R.kind = W.kind;
    R.distance = W.distance;
    R.rows.resize(static_cast<std::size_t>(W.n));
    bool renormalize =
        W.kind == WeightKind::row_normalized || W.kind == WeightKind::row_normalized_self_loops;
    for (int i = 0; i < W.n; ++i) {
        if (!present[static_cast<std::size_t>(i)]) continue;
        auto& row = R.rows[static_cast<std::size_t>(i)];
        double kept = 0.0;
        for (const auto& [j, w] : W.rows[static_cast<std::size_t>(i)]) {
            if (present[static_cast<std::size_t>(j)]) {
                row.emplace_back(j, w);
                kept += w;
            }
        }
        if (renormalize && kept > 0.0) {
            for (auto& [j, w] : row) w /= kept;
            kept = 1.0;
        }
        R.total_weight += kept;
    }
    return R;
}

std::vector<double> lag(const WeightMatrix& W, const std::vector<double>& z) {
    if (static_cast<int>(z.size()) != W.n) throw InputError("vector length does not match weight matrix");
    std::vector<double> out(z.size(), 0.0);
    for (int i = 0; i < W.n; ++i) {
        double s = 0.0;
        for (const auto& [j, w] : W.rows[static_cast<std::size_t>(i)]) s += w * z[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

} // namespace netcorr
