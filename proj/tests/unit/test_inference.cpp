#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "netcorr/error.hpp"
#include "netcorr/inference.hpp"
#include "netcorr/stats.hpp"
#include "netcorr/weights.hpp"

using namespace netcorr;

namespace {

Graph path3() { return build_graph({{"1", "2"}, {"2", "3"}}); }

UnivariateStat moran_stat() {
    return [](const WeightMatrix& W, const NodeData& x) { return global_moran(W, x); };
}

NullSpec data_spec(int replicates, std::uint64_t seed, int threads = 1) {
    NullSpec s;
    s.kind = NullKind::data_permutation;
    s.replicates = replicates;
    s.seed = seed;
    s.threads = threads;
    return s;
}

} // namespace

TEST_CASE("permutation p-values use the plus-one estimator") {
    Graph g = path3();
    auto W = row_normalized(g);
    NodeData x = NodeData::full({0.0, 0.0, 1.0});
    auto res = permutation_null(moran_stat(), W, x, data_spec(199, 3));
    CHECK(res.observed == doctest::Approx(-0.25));
    CHECK(res.p_value >= 1.0 / 200.0);
    CHECK(res.p_value <= 1.0);
    CHECK(res.replicate_values.size() == 199);
    CHECK(res.failed == 0);
    // N=3 permutation distribution of I has mean -1/(N-1) = -1/2
    CHECK(res.null_mean == doctest::Approx(-0.5).epsilon(0.15));
}

TEST_CASE("identical seeds reproduce; different seeds differ") {
    Graph g = path3();
    auto W = row_normalized(g);
    NodeData x = NodeData::full({0.1, 0.9, 0.4});
    auto a = permutation_null(moran_stat(), W, x, data_spec(299, 42));
    auto b = permutation_null(moran_stat(), W, x, data_spec(299, 42));
    CHECK(a.p_value == b.p_value);
    CHECK(a.replicate_values == b.replicate_values);
    auto c = permutation_null(moran_stat(), W, x, data_spec(299, 43));
    CHECK(a.replicate_values != c.replicate_values);
}

TEST_CASE("thread count never changes the result") {
    std::mt19937 rng(17);
    Graph g = testutil::random_graph(rng, 12, 0.3);
    NodeData x = NodeData::full(testutil::random_values(rng, 12));
    auto W = row_normalized(g);
    auto serial = permutation_null(moran_stat(), W, x, data_spec(499, 7, 1));
    auto parallel = permutation_null(moran_stat(), W, x, data_spec(499, 7, 8));
    CHECK(serial.p_value == parallel.p_value);
    CHECK(serial.replicate_values == parallel.replicate_values);
    CHECK(serial.null_mean == parallel.null_mean);
}

TEST_CASE("tails count the right replicates") {
    Graph g = path3();
    auto W = row_normalized(g);
    NodeData x = NodeData::full({0.0, 0.0, 1.0});
    auto up = data_spec(199, 5);
    auto lo = data_spec(199, 5);
    lo.tail = Tail::lower;
    auto two = data_spec(199, 5);
    two.tail = Tail::two_sided;
    auto ru = permutation_null(moran_stat(), W, x, up);
    auto rl = permutation_null(moran_stat(), W, x, lo);
    auto rt = permutation_null(moran_stat(), W, x, two);
    // same replicate stream, complementary counting
    CHECK(ru.replicate_values == rl.replicate_values);
    int nu = 0, nl = 0;
    for (double v : ru.replicate_values) {
        if (v >= ru.observed) ++nu;
        if (v <= ru.observed) ++nl;
    }
    CHECK(ru.p_value == doctest::Approx((1.0 + nu) / 200.0));
    CHECK(rl.p_value == doctest::Approx((1.0 + nl) / 200.0));
    CHECK(rt.p_value <= 1.0);
}

TEST_CASE("bivariate permutation holds y fixed") {
    Graph g = path3();
    auto W = row_normalized(g, true);
    NodeData x = NodeData::full({0.0, 0.0, 1.0});
    NodeData y = NodeData::full({2.0, 5.0, 3.0});
    BivariateStat lee = [](const WeightMatrix& w, const NodeData& a, const NodeData& b) {
        return lee_l(w, a, b);
    };
    auto res = permutation_null(lee, W, x, y, data_spec(99, 1));
    CHECK(res.observed == doctest::Approx(lee_l(W, x, y)));
    CHECK(res.replicate_values.size() == 99);
}

TEST_CASE("null spec kind must match the operation") {
    Graph g = path3();
    auto W = row_normalized(g);
    NodeData x = NodeData::full({0.0, 0.0, 1.0});
    NullSpec wrong;
    wrong.kind = NullKind::configuration;
    CHECK_THROWS_AS(permutation_null(moran_stat(), W, x, wrong), InputError);
    NullSpec few = data_spec(0, 0);
    CHECK_THROWS_AS(permutation_null(moran_stat(), W, x, few), InputError);
}

TEST_CASE("a stat failing on most replicates aborts the run") {
    Graph g = path3();
    auto W = row_normalized(g);
    NodeData x = NodeData::full({0.0, 0.0, 1.0});
    // succeeds on the observed arrangement, throws on every other one
    UnivariateStat fragile = [](const WeightMatrix& w, const NodeData& v) {
        if (v.values != std::vector<double>{0.0, 0.0, 1.0}) throw Error("replicate failure");
        return global_moran(w, v);
    };
    CHECK_THROWS_WITH_AS(permutation_null(fragile, W, x, data_spec(199, 2)),
                         "more than 10% of null replicates failed", Error);
}

TEST_CASE("conditional permutation: per-node results on the path") {
    Graph g = path3();
    auto W = row_normalized(g);
    NodeData x = NodeData::full({0.0, 0.0, 1.0});
    NullSpec spec;
    spec.kind = NullKind::conditional_permutation;
    spec.replicates = 999;
    spec.seed = 9;
    auto res = conditional_permutation_local(W, x, spec);
    REQUIRE(res.size() == 3);
    auto li = local_moran(W, x);
    for (int i = 0; i < 3; ++i) {
        CHECK(res[static_cast<std::size_t>(i)].observed ==
              doctest::Approx(li[static_cast<std::size_t>(i)]));
        CHECK(res[static_cast<std::size_t>(i)].p_value >= 1.0 / 1000.0);
        CHECK(res[static_cast<std::size_t>(i)].p_value <= 1.0);
    }
    // node 2 ("3"): z_2 fixed, one neighbour drawing from {z_0, z_1} which are
    // equal, so every replicate ties the observed value and p = 1
    CHECK(res[2].p_value == 1.0);
}

TEST_CASE("conditional permutation handles absent nodes and threads") {
    Graph g = build_graph({{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "1"}});
    NodeData x({0.3, 0.9, 0.1, 0.5}, {1, 0, 1, 1});
    auto W = row_normalized(g);
    NullSpec spec;
    spec.kind = NullKind::conditional_permutation;
    spec.replicates = 299;
    spec.seed = 4;
    auto serial = conditional_permutation_local(W, x, spec);
    spec.threads = 4;
    auto parallel = conditional_permutation_local(W, x, spec);
    REQUIRE(serial.size() == 4);
    CHECK(std::isnan(serial[1].observed));
    CHECK(serial[1].p_value == 1.0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(serial[i].p_value == parallel[i].p_value);
        CHECK(serial[i].replicate_values == parallel[i].replicate_values);
    }
}

TEST_CASE("double edge swap preserves the degree sequence") {
    std::mt19937 rng(31);
    Graph g = testutil::random_graph(rng, 20, 0.25);
    auto before = g.degrees();
    Graph h = double_edge_swap(g, 200, 77);
    CHECK(h.degrees() == before);
    CHECK(h.n_edges() == g.n_edges());
    // simple graph invariants survive
    for (const auto& [u, v] : h.edges()) CHECK(u < v);
}

TEST_CASE("rigid graphs are reported as not rewireable") {
    Graph k3 = build_graph({{"1", "2"}, {"1", "3"}, {"2", "3"}});
    CHECK_THROWS_WITH_AS(double_edge_swap(k3, 10, 0), "graph not rewireable",
                         NotRewireableError);
    Graph p2 = build_graph({{"1", "2"}});
    CHECK_THROWS_AS(double_edge_swap(p2, 10, 0), InputError); // fewer than two edges
    CHECK_THROWS_AS(double_edge_swap(k3, 0, 0), InputError);  // swap count
}

TEST_CASE("configuration null on a clique ties every replicate") {
    Graph k5 = build_graph({{"1", "2"}, {"1", "3"}, {"1", "4"}, {"1", "5"},
                            {"2", "3"}, {"2", "4"}, {"2", "5"}, {"3", "4"},
                            {"3", "5"}, {"4", "5"}});
    NodeData x = NodeData::full({0.8, 0.1, 0.7, 0.4, 0.2});
    NullSpec spec;
    spec.kind = NullKind::configuration;
    spec.replicates = 99;
    spec.seed = 12;
    WeightsBuilder builder = [](const Graph& gr) { return row_normalized(gr); };
    auto res = configuration_null(moran_stat(), k5, builder, x, spec);
    CHECK(res.observed == doctest::Approx(-0.25));
    CHECK(res.p_value == 1.0);
    CHECK(res.null_sd == 0.0);
}

TEST_CASE("configuration null varies the topology but not the data") {
    std::mt19937 rng(8);
    Graph g = testutil::random_graph(rng, 16, 0.25);
    NodeData x = NodeData::full(testutil::random_values(rng, 16));
    NullSpec spec;
    spec.kind = NullKind::configuration;
    spec.replicates = 49;
    spec.seed = 21;
    WeightsBuilder builder = [](const Graph& gr) { return row_normalized(gr); };
    auto res = configuration_null(moran_stat(), g, builder, x, spec);
    CHECK(res.replicate_values.size() == 49);
    CHECK(res.failed == 0);
    // thread determinism holds here too
    spec.threads = 5;
    auto par = configuration_null(moran_stat(), g, builder, x, spec);
    CHECK(par.replicate_values == res.replicate_values);
}

TEST_CASE("configuration_local shares one rewiring per replicate") {
    std::mt19937 rng(14);
    Graph g = testutil::random_graph(rng, 14, 0.3);
    NodeData x = NodeData::full(testutil::random_values(rng, 14));
    NullSpec spec;
    spec.kind = NullKind::configuration;
    spec.replicates = 99;
    spec.seed = 2;
    WeightsBuilder builder = [](const Graph& gr) { return row_normalized(gr); };
    auto res = configuration_local(g, builder, x, spec);
    REQUIRE(res.size() == 14);
    auto li = local_moran(builder(g), x);
    for (std::size_t i = 0; i < res.size(); ++i) {
        CHECK(res[i].observed == doctest::Approx(li[i]));
        CHECK(res[i].p_value >= 0.01);
        CHECK(res[i].p_value <= 1.0);
        CHECK(res[i].replicate_values.size() == 99);
    }
    // absent node: empty result
    NodeData masked = x;
    masked.mask[3] = 0;
    auto res2 = configuration_local(g, builder, masked, spec);
    CHECK(std::isnan(res2[3].observed));
    CHECK(res2[3].p_value == 1.0);
}

TEST_CASE("enum names used in documents are stable") {
    CHECK(to_string(NullKind::data_permutation) == "data-permutation");
    CHECK(to_string(NullKind::conditional_permutation) == "conditional-permutation");
    CHECK(to_string(NullKind::configuration) == "configuration");
    CHECK(to_string(Tail::upper) == "upper");
    CHECK(to_string(Tail::lower) == "lower");
    CHECK(to_string(Tail::two_sided) == "two-sided");
}
