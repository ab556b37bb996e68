#include "netcorr/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_set>
#include <utility>

#include "netcorr/detail/rng.hpp"
#include "netcorr/error.hpp"
#include "netcorr/stats.hpp"

namespace netcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Run fn(0..n-1) on up to `threads` workers. Items pull from a shared
/// counter, so any partitioning yields the same per-item work; determinism
/// is the item's own responsibility (each derives its own random stream).
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    int workers = std::min(threads, n);
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto body = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void check_spec(const NullSpec& spec, NullKind expected) {
    if (spec.kind != expected)
        throw InputError("null spec kind does not match the requested operation");
    if (spec.replicates < 1) throw InputError("null replicates must be at least 1");
}

/// Tail count, mean, sd and the plus-one p-value from the replicate vector.
/// NaN entries are failed replicates; more than 10% of them aborts.
NullResult summarize(double observed, std::vector<double> reps, const NullSpec& spec) {
    NullResult res;
    res.observed = observed;
    int ok = 0;
    double sum = 0.0;
    for (double v : reps) {
        if (std::isnan(v)) {
            ++res.failed;
        } else {
            ++ok;
            sum += v;
        }
    }
    if (10 * res.failed > spec.replicates)
        throw Error("more than 10% of null replicates failed");
    double mean = ok > 0 ? sum / ok : kNaN;
    double ss = 0.0;
    for (double v : reps)
        if (!std::isnan(v)) ss += (v - mean) * (v - mean);
    res.null_mean = mean;
    res.null_sd = ok > 0 ? std::sqrt(ss / ok) : kNaN;
    int count = 0;
    for (double v : reps) {
        if (std::isnan(v)) continue;
        bool hit = false;
        switch (spec.tail) {
            case Tail::upper: hit = v >= observed; break;
            case Tail::lower: hit = v <= observed; break;
            case Tail::two_sided: hit = std::abs(v - mean) >= std::abs(observed - mean); break;
        }
        if (hit) ++count;
    }
    res.p_value = (1.0 + count) / (1.0 + static_cast<double>(spec.replicates));
    res.replicate_values = std::move(reps);
    return res;
}

struct PresentValues {
    std::vector<std::size_t> idx;
    std::vector<double> vals;
};

PresentValues present_values(const NodeData& x) {
    PresentValues pv;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        if (x.mask[i]) {
            pv.idx.push_back(i);
            pv.vals.push_back(x.values[i]);
        }
    }
    return pv;
}

/// Shared driver: evaluate `eval` once per replicate on a fresh uniform
/// permutation of x's present values.
template <typename Eval>
NullResult permute_and_eval(double observed, const NodeData& x, const NullSpec& spec,
                            const Eval& eval) {
    auto pv = present_values(x);
    std::vector<double> reps(static_cast<std::size_t>(spec.replicates), kNaN);
    parallel_for(spec.replicates, spec.threads, [&](int r) {
        detail::Rng rng(detail::derive_seed(spec.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> shuffled = pv.vals;
        rng.shuffle(shuffled);
        NodeData xr = x;
        for (std::size_t k = 0; k < pv.idx.size(); ++k) xr.values[pv.idx[k]] = shuffled[k];
        try {
            reps[static_cast<std::size_t>(r)] = eval(xr);
        } catch (const Error&) {
            // leave NaN: this replicate failed
        }
    });
    return summarize(observed, std::move(reps), spec);
}

} // namespace

std::string to_string(NullKind kind) {
    switch (kind) {
        case NullKind::data_permutation: return "data-permutation";
        case NullKind::conditional_permutation: return "conditional-permutation";
        case NullKind::configuration: return "configuration";
    }
    return "?";
}

std::string to_string(Tail tail) {
    switch (tail) {
        case Tail::upper: return "upper";
        case Tail::lower: return "lower";
        case Tail::two_sided: return "two-sided";
    }
    return "?";
}

NullResult permutation_null(const UnivariateStat& stat, const WeightMatrix& W, const NodeData& x,
                            const NullSpec& spec) {
    check_spec(spec, NullKind::data_permutation);
    double observed = stat(W, x);
    return permute_and_eval(observed, x, spec, [&](const NodeData& xr) { return stat(W, xr); });
}

NullResult permutation_null(const BivariateStat& stat, const WeightMatrix& W, const NodeData& x,
                            const NodeData& y, const NullSpec& spec) {
    check_spec(spec, NullKind::data_permutation);
    double observed = stat(W, x, y);
    return permute_and_eval(observed, x, spec,
                            [&](const NodeData& xr) { return stat(W, xr, y); });
}

std::vector<NullResult> conditional_permutation_local(const WeightMatrix& W, const NodeData& x,
                                                      const NullSpec& spec) {
    check_spec(spec, NullKind::conditional_permutation);
    if (W.n != x.n()) throw InputError("data length does not match weight matrix");
    const WeightMatrix* Weff = &W;
    WeightMatrix storage;
    if (!x.all_present()) {
        storage = restricted(W, x.mask);
        Weff = &storage;
    }
    if (Weff->total_weight <= 0.0) throw InputError("empty weight matrix");
    auto z = center(x);
    double zz = 0.0;
    for (double v : z) zz += v * v;
    if (zz <= 0.0) throw InputError("constant data");
    auto zl = lag(*Weff, z);

    const int n = x.n();
    std::vector<NullResult> out(static_cast<std::size_t>(n));
    parallel_for(n, spec.threads, [&](int i) {
        auto& res = out[static_cast<std::size_t>(i)];
        if (!x.present(i)) {
            res.observed = kNaN;
            res.p_value = 1.0;
            return;
        }
        double zi = z[static_cast<std::size_t>(i)];
        double observed = zi * zl[static_cast<std::size_t>(i)] / zz;

        // Values available to land on i's neighbours: every other present z.
        std::vector<double> pool;
        pool.reserve(static_cast<std::size_t>(x.n_present() - 1));
        for (int j = 0; j < n; ++j)
            if (j != i && x.present(j)) pool.push_back(z[static_cast<std::size_t>(j)]);

        double w_self = 0.0;
        std::vector<double> support; // off-diagonal weights of row i
        for (const auto& [j, w] : Weff->rows[static_cast<std::size_t>(i)]) {
            if (j == i)
                w_self = w;
            else
                support.push_back(w);
        }
        auto k = support.size();

        // Drawing k values without replacement is a partial Fisher-Yates
        // prefix; the prefix is uniform from any starting arrangement, so
        // the pool can carry over from one replicate to the next.
        detail::Rng rng(detail::derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
        std::vector<double> reps(static_cast<std::size_t>(spec.replicates), kNaN);
        for (int r = 0; r < spec.replicates; ++r) {
            rng.partial_shuffle(pool, k);
            double zlag = w_self * zi;
            for (std::size_t t = 0; t < k; ++t) zlag += support[t] * pool[t];
            reps[static_cast<std::size_t>(r)] = zi * zlag / zz;
        }
        res = summarize(observed, std::move(reps), spec);
    });
    return out;
}

Graph double_edge_swap(const Graph& g, int n_swaps, std::uint64_t seed) {
    if (g.n_edges() < 2) throw InputError("double edge swap requires at least two edges");
    if (n_swaps < 1) throw InputError("swap count must be at least 1");
    auto edges = g.edges();
    const auto E = edges.size();
    const std::uint64_t n = static_cast<std::uint64_t>(g.n_nodes());
    auto key = [n](int a, int b) {
        auto [lo, hi] = std::minmax(a, b);
        return static_cast<std::uint64_t>(lo) * n + static_cast<std::uint64_t>(hi);
    };
    std::unordered_set<std::uint64_t> present;
    present.reserve(E * 2);
    for (const auto& [u, v] : edges) present.insert(key(u, v));

    detail::Rng rng(seed);
    const long long budget = 100LL * n_swaps;
    int accepted = 0;
    for (long long attempt = 0; attempt < budget && accepted < n_swaps; ++attempt) {
        std::size_t e1 = static_cast<std::size_t>(rng.below(E));
        std::size_t e2 = static_cast<std::size_t>(rng.below(E));
        if (e1 == e2) continue;
        auto [a, b] = edges[e1];
        auto [c, d] = edges[e2];
        if (rng.coin()) std::swap(c, d); // both rewirings of the pair
        // propose (a,d) and (c,b)
        if (a == d || c == b) continue;
        std::uint64_t k1 = key(a, d), k2 = key(c, b);
        if (k1 == k2 || present.count(k1) || present.count(k2)) continue;
        present.erase(key(a, b));
        present.erase(key(c, d));
        present.insert(k1);
        present.insert(k2);
        edges[e1] = std::minmax(a, d);
        edges[e2] = std::minmax(c, b);
        ++accepted;
    }
    if (accepted == 0) throw NotRewireableError("graph not rewireable");
    std::sort(edges.begin(), edges.end());
    return Graph(g.n_nodes(), std::move(edges), g.labels());
}

namespace {

template <typename Eval>
NullResult configuration_core(double observed, const Graph& g, const WeightsBuilder& make_weights,
                              const NullSpec& spec, const Eval& eval) {
    int swaps = spec.swaps_per_sample.value_or(10 * g.n_edges());
    if (swaps < 1) throw InputError("swaps per sample must be at least 1");
    std::vector<double> reps(static_cast<std::size_t>(spec.replicates), kNaN);
    parallel_for(spec.replicates, spec.threads, [&](int r) {
        try {
            WeightMatrix Wr;
            try {
                Graph gr = double_edge_swap(g, swaps,
                                            detail::derive_seed(spec.seed,
                                                                static_cast<std::uint64_t>(r)));
                Wr = make_weights(gr);
            } catch (const NotRewireableError&) {
                Wr = make_weights(g); // rigid graph: the replicate keeps the observed topology
            }
            reps[static_cast<std::size_t>(r)] = eval(Wr);
        } catch (const Error&) {
            // leave NaN: this replicate failed
        }
    });
    return summarize(observed, std::move(reps), spec);
}

} // namespace

NullResult configuration_null(const UnivariateStat& stat, const Graph& g,
                              const WeightsBuilder& make_weights, const NodeData& x,
                              const NullSpec& spec) {
    check_spec(spec, NullKind::configuration);
    double observed = stat(make_weights(g), x);
    return configuration_core(observed, g, make_weights, spec,
                              [&](const WeightMatrix& Wr) { return stat(Wr, x); });
}

NullResult configuration_null(const BivariateStat& stat, const Graph& g,
                              const WeightsBuilder& make_weights, const NodeData& x,
                              const NodeData& y, const NullSpec& spec) {
    check_spec(spec, NullKind::configuration);
    double observed = stat(make_weights(g), x, y);
    return configuration_core(observed, g, make_weights, spec,
                              [&](const WeightMatrix& Wr) { return stat(Wr, x, y); });
}

std::vector<NullResult> configuration_local(const Graph& g, const WeightsBuilder& make_weights,
                                            const NodeData& x, const NullSpec& spec) {
    check_spec(spec, NullKind::configuration);
    if (g.n_nodes() != x.n()) throw InputError("data length does not match graph");
    auto observed = local_moran(make_weights(g), x);
    int swaps = spec.swaps_per_sample.value_or(10 * g.n_edges());
    if (swaps < 1) throw InputError("swaps per sample must be at least 1");

    // One rewired graph per replicate covers every node, so the vector costs
    // no more than a single global run. An empty row marks a failed replicate.
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(spec.replicates));
    parallel_for(spec.replicates, spec.threads, [&](int r) {
        try {
            WeightMatrix Wr;
            try {
                Graph gr = double_edge_swap(g, swaps,
                                            detail::derive_seed(spec.seed,
                                                                static_cast<std::uint64_t>(r)));
                Wr = make_weights(gr);
            } catch (const NotRewireableError&) {
                Wr = make_weights(g);
            }
            rows[static_cast<std::size_t>(r)] = local_moran(Wr, x);
        } catch (const Error&) {
            // leave the row empty: this replicate failed
        }
    });

    const int n = x.n();
    std::vector<NullResult> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& res = out[static_cast<std::size_t>(i)];
        if (!x.present(i)) {
            res.observed = kNaN;
            res.p_value = 1.0;
            continue;
        }
        std::vector<double> reps(static_cast<std::size_t>(spec.replicates), kNaN);
        for (int r = 0; r < spec.replicates; ++r) {
            const auto& row = rows[static_cast<std::size_t>(r)];
            if (!row.empty()) reps[static_cast<std::size_t>(r)] = row[static_cast<std::size_t>(i)];
        }
        res = summarize(observed[static_cast<std::size_t>(i)], std::move(reps), spec);
    }
    return out;
}

} // namespace netcorr
