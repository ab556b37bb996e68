#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "netcorr/error.hpp"
#include "netcorr/graph.hpp"
#include "netcorr/weights.hpp"

using namespace netcorr;

namespace {

Graph path3() { return build_graph({{"1", "2"}, {"2", "3"}}); }

double row_total(const WeightMatrix& W, int i) {
    double s = 0.0;
    for (const auto& [j, w] : W.rows[static_cast<std::size_t>(i)]) s += w;
    return s;
}

} // namespace

TEST_CASE("binary adjacency is symmetric with zero diagonal") {
    Graph g = path3();
    auto W = binary_adjacency(g);
    CHECK(W.kind == WeightKind::binary_adjacency);
    CHECK(W.total_weight == doctest::Approx(2.0 * g.n_edges()));
    for (int i = 0; i < W.n; ++i)
        for (const auto& [j, w] : W.rows[static_cast<std::size_t>(i)]) {
            CHECK(j != i);
            CHECK(w == 1.0);
        }
}

TEST_CASE("row_normalized rows sum to one and |W| = N") {
    Graph g = path3();
    auto W = row_normalized(g);
    CHECK(W.kind == WeightKind::row_normalized);
    for (int i = 0; i < 3; ++i) CHECK(row_total(W, i) == doctest::Approx(1.0));
    CHECK(W.total_weight == doctest::Approx(3.0));
    CHECK(W.row_sum(1) == doctest::Approx(1.0));
}

TEST_CASE("row_normalized with self-loops places the diagonal entry") {
    Graph g = path3();
    auto W = row_normalized(g, true);
    CHECK(W.kind == WeightKind::row_normalized_self_loops);
    // middle node: three entries (self + two neighbours), each 1/3
    const auto& row = W.rows[1];
    REQUIRE(row.size() == 3);
    bool diag = false;
    for (const auto& [j, w] : row) {
        CHECK(w == doctest::Approx(1.0 / 3.0));
        if (j == 1) diag = true;
    }
    CHECK(diag);
}

TEST_CASE("row_normalized warns about isolated nodes") {
    Graph g = build_graph({{"a", "b"}}, {"a", "b", "c"});
    Diagnostics diag;
    auto W = row_normalized(g, false, &diag);
    CHECK(W.rows[2].empty());
    REQUIRE(diag.warnings.size() == 1);
    CHECK(diag.warnings[0].find("isolated") != std::string::npos);

    // with a self-loop the isolated row becomes pure diagonal
    auto Ws = row_normalized(g, true);
    REQUIRE(Ws.rows[2].size() == 1);
    CHECK(Ws.rows[2][0].first == 2);
    CHECK(Ws.rows[2][0].second == 1.0);
}

TEST_CASE("distance_class matches pairwise BFS distances") {
    // square with one diagonal chord: 0-1-2-3-0 plus 0-2
    Graph g = build_graph({{"0", "1"}, {"1", "2"}, {"2", "3"}, {"3", "0"}, {"0", "2"}});
    auto W1 = distance_class(g, 1);
    auto W2 = distance_class(g, 2);
    CHECK(W1.total_weight == doctest::Approx(10.0)); // 5 edges, both directions
    CHECK(W2.total_weight == doctest::Approx(2.0));  // only the 1-3 pair
    CHECK(W1.distance == 1);
    CHECK(W2.distance == 2);
    CHECK_THROWS_AS(distance_class(g, 0), InputError);
}

TEST_CASE("distance_classes agrees with one-at-a-time construction") {
    std::mt19937 rng(7);
    Graph g = testutil::random_graph(rng, 9, 0.3);
    auto all = distance_classes(g, 4);
    REQUIRE(all.size() == 4);
    for (int d = 1; d <= 4; ++d) {
        auto single = distance_class(g, d);
        const auto& batch = all[static_cast<std::size_t>(d - 1)];
        CHECK(batch.total_weight == doctest::Approx(single.total_weight));
        REQUIRE(batch.rows.size() == single.rows.size());
        for (std::size_t i = 0; i < single.rows.size(); ++i) CHECK(batch.rows[i] == single.rows[i]);
    }
}

TEST_CASE("restricted drops absent rows and columns") {
    Graph g = path3();
    auto W = binary_adjacency(g);
    auto R = restricted(W, {1, 0, 1});
    CHECK(R.rows[0].empty()); // only neighbour was node 1, now absent
    CHECK(R.rows[1].empty());
    CHECK(R.rows[2].empty());
    CHECK(R.total_weight == 0.0);
    CHECK_THROWS_AS(restricted(W, {1, 0}), InputError);
}

TEST_CASE("restricted renormalizes row-normalized kinds") {
    // star: centre 0 with leaves 1,2,3; drop leaf 3
    Graph g = build_graph({{"0", "1"}, {"0", "2"}, {"0", "3"}});
    auto W = row_normalized(g);
    auto R = restricted(W, {1, 1, 1, 0});
    REQUIRE(R.rows[0].size() == 2);
    for (const auto& [j, w] : R.rows[0]) CHECK(w == doctest::Approx(0.5));
    CHECK(R.total_weight == doctest::Approx(3.0));
}

TEST_CASE("restricted keeps binary weights unrenormalized") {
    Graph g = build_graph({{"0", "1"}, {"0", "2"}, {"0", "3"}});
    auto W = binary_adjacency(g);
    auto R = restricted(W, {1, 1, 1, 0});
    REQUIRE(R.rows[0].size() == 2);
    for (const auto& [j, w] : R.rows[0]) CHECK(w == 1.0);
    CHECK(R.total_weight == doctest::Approx(4.0));
}

TEST_CASE("lag computes the weighted neighbour average") {
    Graph g = path3();
    auto W = row_normalized(g);
    auto zl = lag(W, {0.0, 0.0, 1.0});
    CHECK(zl[0] == doctest::Approx(0.0));
    CHECK(zl[1] == doctest::Approx(0.5));
    CHECK(zl[2] == doctest::Approx(0.0));
    CHECK_THROWS_AS(lag(W, {1.0, 2.0}), InputError);
}
