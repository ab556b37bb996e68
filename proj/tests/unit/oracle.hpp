#pragma once

// Brute-force reference implementations for the tests. Every statistic is
// evaluated as a literal dense double loop over its defining sum, with none
// of the library's sparsity, masking shortcuts or shared helpers; distances
// use Floyd-Warshall instead of BFS. Deliberately slow: keep instances small.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "netcorr/graph.hpp"
#include "netcorr/node_data.hpp"

namespace oracle {

struct Dense {
    int n = 0;
    std::vector<double> w;
    Dense() = default;
    explicit Dense(int size) : n(size), w(static_cast<std::size_t>(size) * size, 0.0) {}
    double& at(int i, int j) { return w[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

inline std::vector<std::uint8_t> all_present(int n) {
    return std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1);
}

inline Dense binary(const netcorr::Graph& g, const std::vector<std::uint8_t>& m) {
    Dense W(g.n_nodes());
    for (const auto& [u, v] : g.edges()) {
        if (!m[static_cast<std::size_t>(u)] || !m[static_cast<std::size_t>(v)]) continue;
        W.at(u, v) = 1.0;
        W.at(v, u) = 1.0;
    }
    return W;
}

/// Row-normalized over the present neighbours (optionally including a
/// self-loop): dropping absent nodes and renormalizing in one step.
inline Dense row_norm(const netcorr::Graph& g, const std::vector<std::uint8_t>& m,
                      bool self_loops) {
    Dense A = binary(g, m);
    Dense W(A.n);
    for (int i = 0; i < A.n; ++i) {
        if (!m[static_cast<std::size_t>(i)]) continue;
        double count = self_loops ? 1.0 : 0.0;
        for (int j = 0; j < A.n; ++j) count += A.at(i, j);
        if (count <= 0.0) continue;
        for (int j = 0; j < A.n; ++j)
            if (A.at(i, j) > 0.0) W.at(i, j) = 1.0 / count;
        if (self_loops) W.at(i, i) = 1.0 / count;
    }
    return W;
}

/// All-pairs shortest paths by Floyd-Warshall on the full graph; then
/// w_ij = 1 when dist(i,j) = d and both ends are present.
inline Dense distance_w(const netcorr::Graph& g, const std::vector<std::uint8_t>& m, int d) {
    int n = g.n_nodes();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n), inf));
    for (int i = 0; i < n; ++i) dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    for (const auto& [u, v] : g.edges()) {
        dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
        dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double via = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                             dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                if (via < dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
            }
    Dense W(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!m[static_cast<std::size_t>(i)] || !m[static_cast<std::size_t>(j)]) continue;
            if (dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == d) W.at(i, j) = 1.0;
        }
    return W;
}

inline double wsum(const Dense& W) {
    double s = 0.0;
    for (double v : W.w) s += v;
    return s;
}

inline int present_count(const std::vector<std::uint8_t>& m) {
    int c = 0;
    for (auto b : m) c += b ? 1 : 0;
    return c;
}

inline double mean_present(const std::vector<double>& x, const std::vector<std::uint8_t>& m) {
    double s = 0.0;
    int c = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (m[i]) {
            s += x[i];
            ++c;
        }
    return s / c;
}

/// Centered copy; absent entries are pinned to zero so they drop out of
/// every sum below.
inline std::vector<double> center(const std::vector<double>& x,
                                  const std::vector<std::uint8_t>& m) {
    double mu = mean_present(x, m);
    std::vector<double> z(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (m[i]) z[i] = x[i] - mu;
    return z;
}

inline double moran(const Dense& W, const std::vector<double>& x,
                    const std::vector<std::uint8_t>& m) {
    auto z = center(x, m);
    double num = 0.0, zz = 0.0;
    for (int i = 0; i < W.n; ++i)
        for (int j = 0; j < W.n; ++j) num += W.at(i, j) * z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(j)];
    for (double v : z) zz += v * v;
    return (present_count(m) / wsum(W)) * num / zz;
}

inline std::vector<double> local_moran(const Dense& W, const std::vector<double>& x,
                                       const std::vector<std::uint8_t>& m) {
    auto z = center(x, m);
    double zz = 0.0;
    for (double v : z) zz += v * v;
    std::vector<double> out(z.size(), std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < W.n; ++i) {
        if (!m[static_cast<std::size_t>(i)]) continue;
        double lag = 0.0;
        for (int j = 0; j < W.n; ++j) lag += W.at(i, j) * z[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] * lag / zz;
    }
    return out;
}

inline double scatter_slope(const Dense& W, const std::vector<double>& x,
                            const std::vector<std::uint8_t>& m) {
    auto z = center(x, m);
    double num = 0.0, zz = 0.0;
    for (int i = 0; i < W.n; ++i) {
        double lag = 0.0;
        for (int j = 0; j < W.n; ++j) lag += W.at(i, j) * z[static_cast<std::size_t>(j)];
        num += z[static_cast<std::size_t>(i)] * lag;
    }
    for (double v : z) zz += v * v;
    return num / zz;
}

inline double geary(const Dense& W, const std::vector<double>& x,
                    const std::vector<std::uint8_t>& m) {
    auto z = center(x, m);
    double num = 0.0, zz = 0.0;
    for (int i = 0; i < W.n; ++i)
        for (int j = 0; j < W.n; ++j) {
            if (!m[static_cast<std::size_t>(i)] || !m[static_cast<std::size_t>(j)]) continue;
            double d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            num += W.at(i, j) * d * d;
        }
    for (double v : z) zz += v * v;
    return (present_count(m) - 1) * num / (2.0 * wsum(W) * zz);
}

inline double getis(const Dense& W, const std::vector<double>& x,
                    const std::vector<std::uint8_t>& m) {
    double num = 0.0, sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < W.n; ++i) {
        if (!m[static_cast<std::size_t>(i)]) continue;
        sum += x[static_cast<std::size_t>(i)];
        sum_sq += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        for (int j = 0; j < W.n; ++j) {
            if (i == j || !m[static_cast<std::size_t>(j)]) continue;
            num += W.at(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
        }
    }
    double den = sum * sum - sum_sq;
    if (den <= 0.0) return 0.0;
    return num / den;
}

inline double lee(const Dense& W, const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<std::uint8_t>& m) {
    auto zx = center(x, m);
    auto zy = center(y, m);
    double row_sq = 0.0, num = 0.0, xx = 0.0, yy = 0.0;
    for (int i = 0; i < W.n; ++i) {
        double rs = 0.0, lx = 0.0, ly = 0.0;
        for (int j = 0; j < W.n; ++j) {
            rs += W.at(i, j);
            lx += W.at(i, j) * zx[static_cast<std::size_t>(j)];
            ly += W.at(i, j) * zy[static_cast<std::size_t>(j)];
        }
        row_sq += rs * rs;
        num += lx * ly;
    }
    for (double v : zx) xx += v * v;
    for (double v : zy) yy += v * v;
    return (present_count(m) / row_sq) * num / (std::sqrt(xx) * std::sqrt(yy));
}

/// nullopt when either network variance under the square root is not
/// positive (the library throws there).
inline std::optional<double> coscia(const Dense& W, const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    const std::vector<std::uint8_t>& m) {
    auto zx = center(x, m);
    auto zy = center(y, m);
    double num = 0.0, vx = 0.0, vy = 0.0;
    for (int i = 0; i < W.n; ++i)
        for (int j = 0; j < W.n; ++j) {
            num += zx[static_cast<std::size_t>(i)] * W.at(i, j) * zy[static_cast<std::size_t>(j)];
            vx += zx[static_cast<std::size_t>(i)] * W.at(i, j) * zx[static_cast<std::size_t>(j)];
            vy += zy[static_cast<std::size_t>(i)] * W.at(i, j) * zy[static_cast<std::size_t>(j)];
        }
    if (vx <= 0.0 || vy <= 0.0) return std::nullopt;
    return num / (std::sqrt(vx) * std::sqrt(vy));
}

/// Eq. 4 style assortativity on the present-node induced subgraph: degrees
/// count present neighbours, the degree variance is the population variance
/// and the data are NOT mean-centered.
inline std::optional<double> assortativity(const netcorr::Graph& g, const std::vector<double>& x,
                                           const std::vector<std::uint8_t>& m) {
    Dense A = binary(g, m);
    int n = present_count(m);
    std::vector<double> k(static_cast<std::size_t>(A.n), 0.0);
    double two_e = 0.0;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            k[static_cast<std::size_t>(i)] += A.at(i, j);
            two_e += A.at(i, j);
        }
    double edge_term = 0.0, kx = 0.0, ksum = 0.0, ksq = 0.0;
    for (int i = 0; i < A.n; ++i) {
        for (int j = 0; j < A.n; ++j)
            edge_term += A.at(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
        if (!m[static_cast<std::size_t>(i)]) continue;
        kx += k[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        ksum += k[static_cast<std::size_t>(i)];
        ksq += k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)];
    }
    double var_k = ksq / n - (ksum / n) * (ksum / n);
    if (var_k <= 0.0) return std::nullopt;
    double null_term = two_e > 0.0 ? kx * kx / two_e : 0.0;
    return (edge_term - null_term) / var_k;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<std::uint8_t>& m) {
    auto zx = center(x, m);
    auto zy = center(y, m);
    double xy = 0.0, xx = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < zx.size(); ++i) {
        xy += zx[i] * zy[i];
        xx += zx[i] * zx[i];
        yy += zy[i] * zy[i];
    }
    return xy / (std::sqrt(xx) * std::sqrt(yy));
}

/// Mean of Moran's I over every permutation of the present values
/// (exhaustive; factorial in the present count).
inline double exhaustive_permutation_mean(const Dense& W, std::vector<double> values,
                                          const std::vector<std::uint8_t>& m) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) idx.push_back(i);
    std::vector<double> vals;
    for (auto i : idx) vals.push_back(values[i]);
    std::sort(vals.begin(), vals.end());
    double sum = 0.0;
    long count = 0;
    std::vector<double> x(values.size(), 0.0);
    do {
        for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = vals[k];
        sum += moran(W, x, m);
        ++count;
    } while (std::next_permutation(vals.begin(), vals.end()));
    return sum / static_cast<double>(count);
}

} // namespace oracle
