#include "netcorr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "netcorr/error.hpp"

namespace netcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_dims(const WeightMatrix& W, const NodeData& x) {
    if (W.n != x.n()) throw InputError("data length does not match weight matrix");
}

/// Weights restricted to the present nodes, avoiding the copy when nothing
/// is masked.
class EffectiveWeights {
public:
    EffectiveWeights(const WeightMatrix& W, const NodeData& x) {
        if (x.all_present()) {
            ptr_ = &W;
        } else {
            storage_ = restricted(W, x.mask);
            ptr_ = &storage_;
        }
    }
    EffectiveWeights(const WeightMatrix& W, const std::vector<std::uint8_t>& joint_mask, bool any_masked) {
        if (!any_masked) {
            ptr_ = &W;
        } else {
            storage_ = restricted(W, joint_mask);
            ptr_ = &storage_;
        }
    }
    const WeightMatrix& get() const { return *ptr_; }

private:
    WeightMatrix storage_;
    const WeightMatrix* ptr_ = nullptr;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct JointMask {
    std::vector<std::uint8_t> mask;
    int n_present = 0;
    bool any_masked = false;
};

JointMask joint_mask(const NodeData& x, const NodeData& y) {
    if (x.n() != y.n()) throw InputError("bivariate data lengths differ");
    JointMask jm;
    jm.mask.resize(x.mask.size());
    for (std::size_t i = 0; i < x.mask.size(); ++i) {
        jm.mask[i] = (x.mask[i] && y.mask[i]) ? 1 : 0;
        if (jm.mask[i])
            ++jm.n_present;
        else
            jm.any_masked = true;
    }
    return jm;
}

/// Mean-centered values over the nodes selected by `mask`; others carry 0.
std::vector<double> center_masked(const NodeData& x, const std::vector<std::uint8_t>& mask,
                                  int n_present) {
    if (n_present < 2) throw InputError("centering requires at least two present values");
    double sum = 0.0;
    for (int i = 0; i < x.n(); ++i)
        if (mask[static_cast<std::size_t>(i)]) sum += x.values[static_cast<std::size_t>(i)];
    double mean = sum / static_cast<double>(n_present);
    std::vector<double> z(x.values.size(), 0.0);
    for (int i = 0; i < x.n(); ++i)
        if (mask[static_cast<std::size_t>(i)])
            z[static_cast<std::size_t>(i)] = x.values[static_cast<std::size_t>(i)] - mean;
    return z;
}

} // namespace

std::string to_string(Quadrant q) {
    switch (q) {
        case Quadrant::HH: return "HH";
        case Quadrant::HL: return "HL";
        case Quadrant::LH: return "LH";
        case Quadrant::LL: return "LL";
    }
    return "?";
}

std::vector<double> center(const NodeData& x) { return center_masked(x, x.mask, x.n_present()); }

double global_moran(const WeightMatrix& W, const NodeData& x) {
    check_dims(W, x);
    EffectiveWeights eff(W, x);
    if (eff.get().total_weight <= 0.0) throw InputError("empty weight matrix");
    auto z = center(x);
    double zz = dot(z, z);
    if (zz <= 0.0) throw InputError("constant data");
    auto zl = lag(eff.get(), z);
    double n = static_cast<double>(x.n_present());
    return (n / eff.get().total_weight) * dot(z, zl) / zz;
}

std::vector<double> local_moran(const WeightMatrix& W, const NodeData& x) {
    check_dims(W, x);
    EffectiveWeights eff(W, x);
    if (eff.get().total_weight <= 0.0) throw InputError("empty weight matrix");
    auto z = center(x);
    double zz = dot(z, z);
    if (zz <= 0.0) throw InputError("constant data");
    auto zl = lag(eff.get(), z);
    std::vector<double> out(z.size(), kNaN);
    for (int i = 0; i < x.n(); ++i) {
        if (x.present(i))
            out[static_cast<std::size_t>(i)] =
                z[static_cast<std::size_t>(i)] * zl[static_cast<std::size_t>(i)] / zz;
    }
    return out;
}

MoranScatter moran_scatter(const WeightMatrix& W, const NodeData& x) {
    if (W.kind != WeightKind::row_normalized && W.kind != WeightKind::row_normalized_self_loops)
        throw InputError("Moran scatter requires row-normalized weights");
    check_dims(W, x);
    EffectiveWeights eff(W, x);
    if (eff.get().total_weight <= 0.0) throw InputError("empty weight matrix");
    auto z = center(x);
    double zz = dot(z, z);
    if (zz <= 0.0) throw InputError("constant data");
    auto zl = lag(eff.get(), z);

    MoranScatter sc;
    for (int i = 0; i < x.n(); ++i) {
        if (!x.present(i)) continue;
        double zi = z[static_cast<std::size_t>(i)];
        double li = zl[static_cast<std::size_t>(i)];
        sc.nodes.push_back(i);
        sc.z.push_back(zi);
        sc.z_lag.push_back(li);
        if (zi > 0.0)
            sc.quadrant.push_back(li > 0.0 ? Quadrant::HH : Quadrant::HL);
        else
            sc.quadrant.push_back(li > 0.0 ? Quadrant::LH : Quadrant::LL);
    }
    sc.slope = dot(z, zl) / zz;
    return sc;
}

double geary_c(const WeightMatrix& W, const NodeData& x) {
    check_dims(W, x);
    EffectiveWeights eff(W, x);
    const auto& Weff = eff.get();
    if (Weff.total_weight <= 0.0) throw InputError("empty weight matrix");
    auto z = center(x);
    double zz = dot(z, z);
    if (zz <= 0.0) throw InputError("constant data");
    double num = 0.0;
    for (int i = 0; i < Weff.n; ++i) {
        if (!x.present(i)) continue;
        double xi = x.values[static_cast<std::size_t>(i)];
        for (const auto& [j, w] : Weff.rows[static_cast<std::size_t>(i)]) {
            double diff = xi - x.values[static_cast<std::size_t>(j)];
            num += w * diff * diff;
        }
    }
    double n = static_cast<double>(x.n_present());
    return (n - 1.0) * num / (2.0 * Weff.total_weight * zz);
}

double getis_ord_global(const WeightMatrix& W, const NodeData& x) {
    check_dims(W, x);
    EffectiveWeights eff(W, x);
    const auto& Weff = eff.get();
    double sum = 0.0, sum_sq = 0.0;
    bool any_nonzero = false;
    for (int i = 0; i < x.n(); ++i) {
        if (!x.present(i)) continue;
        double v = x.values[static_cast<std::size_t>(i)];
        if (v < 0.0) throw InputError("Getis–Ord requires nonnegative data");
        if (v > 0.0) any_nonzero = true;
        sum += v;
        sum_sq += v * v;
    }
    if (!any_nonzero) throw InputError("Getis–Ord requires a nonzero value");
    double num = 0.0;
    for (int i = 0; i < Weff.n; ++i) {
        if (!x.present(i)) continue;
        double xi = x.values[static_cast<std::size_t>(i)];
        for (const auto& [j, w] : Weff.rows[static_cast<std::size_t>(i)]) {
            if (j == i) continue;
            num += w * xi * x.values[static_cast<std::size_t>(j)];
        }
    }
    double denom = sum * sum - sum_sq; // sum over ordered pairs i != j
    if (denom <= 0.0) return 0.0;      // a single mass point has no cross products
    return num / denom;
}

std::vector<std::optional<double>> getis_ord_local(const WeightMatrix& W, const NodeData& x) {
    check_dims(W, x);
    EffectiveWeights eff(W, x);
    const auto& Weff = eff.get();
    double sum = 0.0;
    bool any_nonzero = false;
    for (int i = 0; i < x.n(); ++i) {
        if (!x.present(i)) continue;
        double v = x.values[static_cast<std::size_t>(i)];
        if (v < 0.0) throw InputError("Getis–Ord requires nonnegative data");
        if (v > 0.0) any_nonzero = true;
        sum += v;
    }
    if (!any_nonzero) throw InputError("Getis–Ord requires a nonzero value");
    std::vector<std::optional<double>> out(x.values.size());
    for (int i = 0; i < x.n(); ++i) {
        if (!x.present(i)) continue;
        double denom = sum - x.values[static_cast<std::size_t>(i)];
        if (denom == 0.0) continue; // undefined: all remaining mass sits on i
        double num = 0.0;
        for (const auto& [j, w] : Weff.rows[static_cast<std::size_t>(i)]) {
            if (j == i) continue;
            num += w * x.values[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = num / denom;
    }
    return out;
}

double assortativity_continuous(const Graph& g, const NodeData& x) {
    if (g.n_nodes() != x.n()) throw InputError("data length does not match graph");
    // Induced subgraph on present nodes: degrees count present neighbors only.
    std::vector<int> k(static_cast<std::size_t>(g.n_nodes()), 0);
    double two_e = 0.0;
    double edge_term = 0.0;
    for (const auto& [u, v] : g.edges()) {
        if (!x.present(u) || !x.present(v)) continue;
        ++k[static_cast<std::size_t>(u)];
        ++k[static_cast<std::size_t>(v)];
        two_e += 2.0;
        edge_term += 2.0 * x.values[static_cast<std::size_t>(u)] * x.values[static_cast<std::size_t>(v)];
    }
    int n = x.n_present();
    if (n < 2) throw InputError("centering requires at least two present values");
    double k_sum = 0.0, k_sq = 0.0, kx = 0.0;
    for (int i = 0; i < g.n_nodes(); ++i) {
        if (!x.present(i)) continue;
        double ki = static_cast<double>(k[static_cast<std::size_t>(i)]);
        k_sum += ki;
        k_sq += ki * ki;
        kx += ki * x.values[static_cast<std::size_t>(i)];
    }
    double mean_k = k_sum / static_cast<double>(n);
    double var_k = k_sq / static_cast<double>(n) - mean_k * mean_k;
    if (var_k <= 0.0) throw InputError("degenerate degree variance");
    double null_term = (two_e > 0.0) ? kx * kx / two_e : 0.0;
    return (edge_term - null_term) / var_k;
}

double assortativity_continuous(const WeightMatrix& W, const NodeData& x) {
    if (W.kind != WeightKind::binary_adjacency)
        throw InputError("assortativity needs binary adjacency weights");
    check_dims(W, x);
    std::vector<int> k(static_cast<std::size_t>(W.n), 0);
    double two_e = 0.0;
    double edge_term = 0.0;
    for (int i = 0; i < W.n; ++i) {
        if (!x.present(i)) continue;
        for (const auto& [j, w] : W.rows[static_cast<std::size_t>(i)]) {
            if (j <= i || !x.present(j)) continue;
            ++k[static_cast<std::size_t>(i)];
            ++k[static_cast<std::size_t>(j)];
            two_e += 2.0 * w;
            edge_term += 2.0 * w * x.values[static_cast<std::size_t>(i)] * x.values[static_cast<std::size_t>(j)];
        }
    }
    int n = x.n_present();
    if (n < 2) throw InputError("centering requires at least two present values");
    double k_sum = 0.0, k_sq = 0.0, kx = 0.0;
    for (int i = 0; i < W.n; ++i) {
        if (!x.present(i)) continue;
        double ki = static_cast<double>(k[static_cast<std::size_t>(i)]);
        k_sum += ki;
        k_sq += ki * ki;
        kx += ki * x.values[static_cast<std::size_t>(i)];
    }
    double mean_k = k_sum / static_cast<double>(n);
    double var_k = k_sq / static_cast<double>(n) - mean_k * mean_k;
    if (var_k <= 0.0) throw InputError("degenerate degree variance");
    double null_term = (two_e > 0.0) ? kx * kx / two_e : 0.0;
    return (edge_term - null_term) / var_k;
}

double coscia_rho(const WeightMatrix& W, const NodeData& x, const NodeData& y) {
    check_dims(W, x);
    auto jm = joint_mask(x, y);
    EffectiveWeights eff(W, jm.mask, jm.any_masked);
    if (eff.get().total_weight <= 0.0) throw InputError("empty weight matrix");
    auto zx = center_masked(x, jm.mask, jm.n_present);
    auto zy = center_masked(y, jm.mask, jm.n_present);
    auto zx_lag = lag(eff.get(), zx);
    auto zy_lag = lag(eff.get(), zy);
    double net_var_x = dot(zx, zx_lag);
    double net_var_y = dot(zy, zy_lag);
    if (net_var_x <= 0.0 || net_var_y <= 0.0) throw InputError("network variance not positive");
    return dot(zx, zy_lag) / (std::sqrt(net_var_x) * std::sqrt(net_var_y));
}

double lee_l(const WeightMatrix& W, const NodeData& x, const NodeData& y) {
    check_dims(W, x);
    auto jm = joint_mask(x, y);
    EffectiveWeights eff(W, jm.mask, jm.any_masked);
    const auto& Weff = eff.get();
    if (Weff.total_weight <= 0.0) throw InputError("empty weight matrix");
    auto zx = center_masked(x, jm.mask, jm.n_present);
    auto zy = center_masked(y, jm.mask, jm.n_present);
    double xx = dot(zx, zx);
    double yy = dot(zy, zy);
    if (xx <= 0.0 || yy <= 0.0) throw InputError("constant data");
    double row_sum_sq = 0.0;
    for (int i = 0; i < Weff.n; ++i) {
        if (jm.any_masked && !jm.mask[static_cast<std::size_t>(i)]) continue;
        double s = Weff.row_sum(i);
        row_sum_sq += s * s;
    }
    if (row_sum_sq <= 0.0) throw InputError("empty weight matrix");
    auto x_lag = lag(Weff, zx);
    auto y_lag = lag(Weff, zy);
    double n = static_cast<double>(jm.n_present);
    return (n / row_sum_sq) * dot(x_lag, y_lag) / (std::sqrt(xx) * std::sqrt(yy));
}

double pearson_r(const NodeData& x, const NodeData& y) {
    auto jm = joint_mask(x, y);
    if (jm.n_present < 2) throw InputError("Pearson requires at least two present pairs");
    auto zx = center_masked(x, jm.mask, jm.n_present);
    auto zy = center_masked(y, jm.mask, jm.n_present);
    double xx = dot(zx, zx);
    double yy = dot(zy, zy);
    if (xx <= 0.0 || yy <= 0.0) throw InputError("constant data");
    double r = dot(zx, zy) / (std::sqrt(xx) * std::sqrt(yy));
    return std::clamp(r, -1.0, 1.0);
}

double pearson_p_two_sided(double r, int n) {
    if (n < 3) throw InputError("Pearson test requires n >= 3");
    if (std::abs(r) >= 1.0) return 0.0;
    double df = static_cast<double>(n - 2);
    double t = r * std::sqrt(df / (1.0 - r * r));
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

namespace {

/// Divide every row of a binary distance-class matrix by its sum; the total
/// becomes the count of nonzero rows, mirroring row_normalized().
void row_normalize_in_place(WeightMatrix& W) {
    W.total_weight = 0.0;
    for (auto& row : W.rows) {
        double s = 0.0;
        for (const auto& [j, w] : row) s += w;
        if (s > 0.0) {
            for (auto& [j, w] : row) w /= s;
            W.total_weight += 1.0;
        }
    }
}

} // namespace

std::vector<CorrelogramPoint> correlogram(const Graph& g, const NodeData& x, int d_max,
                                          const std::optional<NullSpec>& null,
                                          bool row_normalize) {
    if (d_max < 1) throw InputError("correlogram requires d_max >= 1");
    if (g.n_nodes() != x.n()) throw InputError("data length does not match graph");
    if (null && null->kind == NullKind::conditional_permutation)
        throw InputError("correlogram p-values use the data-permutation or configuration null");

    // The same construction must apply to configuration-model replicates, so
    // it is spelled out once: the class matrix, cut to the present nodes,
    // then optionally row-normalized.
    auto make_wd = [&x, row_normalize](WeightMatrix Wd) {
        if (!x.all_present()) Wd = restricted(Wd, x.mask);
        if (row_normalize) row_normalize_in_place(Wd);
        return Wd;
    };

    auto classes = distance_classes(g, d_max);
    std::vector<CorrelogramPoint> out;
    out.reserve(classes.size());
    for (int d = 1; d <= d_max; ++d) {
        auto Wd = make_wd(std::move(classes[static_cast<std::size_t>(d - 1)]));
        CorrelogramPoint pt;
        pt.d = d;
        pt.total_weight = Wd.total_weight;
        if (pt.total_weight > 0.0) {
            pt.value = global_moran(Wd, x);
            if (null) {
                if (null->kind == NullKind::configuration) {
                    auto builder = [&make_wd, d](const Graph& gr) {
                        return make_wd(distance_class(gr, d));
                    };
                    pt.p_value =
                        configuration_null(UnivariateStat(&global_moran), g, builder, x, *null)
                            .p_value;
                } else {
                    pt.p_value =
                        permutation_null(UnivariateStat(&global_moran), Wd, x, *null).p_value;
                }
            }
        }
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace netcorr
