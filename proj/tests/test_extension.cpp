#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dioph/extension.hpp"

using namespace dioph;

namespace {

std::vector<BigInt> big(std::initializer_list<u64> xs) {
    std::vector<u64> v(xs);
    return to_big(v);
}

// All w <= bound adjacent to every element of S, by direct testing.
std::vector<u64> brute_common(const std::vector<u64>& S, u64 bound) {
    std::vector<u64> out;
    for (u64 w = 1; w <= bound; ++w) {
        if (std::find(S.begin(), S.end(), w) != S.end()) continue;
        bool all = true;
        for (u64 s : S) all = all && is_square(static_cast<u128>(s) * w + 1);
        if (all) out.push_back(w);
    }
    return out;
}

bool fresh(const std::vector<BigInt>& V, const BigInt& w) {
    for (const auto& v : V)
        if (same_square_free_part(v, w)) return false;
    return true;
}

SimpleGraph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    SimpleGraph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

}  // namespace

TEST_CASE("isolated extensions") {
    const auto V = big({1, 3, 8, 120});
    const auto rep = extend_isolated(V, 5);
    REQUIRE(rep.values.size() == 5);
    for (const auto& w : rep.values) {
        for (const auto& v : V) CHECK_FALSE(edge_test(v, w));
        CHECK(fresh(V, w));
    }
    for (std::size_t a = 0; a < rep.values.size(); ++a)
        for (std::size_t b = a + 1; b < rep.values.size(); ++b)
            CHECK_FALSE(same_square_free_part(rep.values[a], rep.values[b]));

    const auto one = extend_isolated(big({1}), 1);
    REQUIRE(one.primes == std::vector<u64>{2});
    CHECK(one.aux_prime == 3);
    CHECK(one.modulus == 36);
    CHECK(one.residue == 21);
    CHECK(one.values[0] == 21);

    // 2w + 1 is divisible by p exactly once.
    const auto two = extend_isolated(big({2}), 4);
    const u64 p = two.primes[0];
    for (const auto& w : two.values) {
        const BigInt t = 2 * w + 1;
        CHECK(valuation(t, p) == 1);
    }
}

TEST_CASE("pendant extensions") {
    const auto V = big({1, 3, 8, 120});
    const auto rep = extend_pendant(V, 0, 4);
    REQUIRE(rep.values.size() == 4);
    const u64 q = rep.aux_prime;
    const auto oracle = brute_common({1}, 1000000);
    for (const auto& w : rep.values) {
        CHECK(edge_test(BigInt(1), w));
        for (std::size_t j = 1; j < V.size(); ++j) CHECK_FALSE(edge_test(V[j], w));
        CHECK(fresh(V, w));
        CHECK(valuation(w, q) % 2 == 1);
        if (w <= 1000000) CHECK(std::binary_search(oracle.begin(), oracle.end(), w.get_ui()));
    }
    for (u64 v : {2, 5, 7, 12, 30, 99}) {
        const auto single = extend_pendant(big({v}), 0, 1);
        REQUIRE(single.values.size() == 1);
        CHECK(edge_test(BigInt(v), single.values[0]));
        CHECK(single.modulus % v == 0);
    }
}

TEST_CASE("double extensions") {
    const auto r13 = extend_double(big({1, 3}), 0, 1, 3);
    REQUIRE(r13.values.size() == 3);
    CHECK(r13.values[0] == 8);
    const std::set<BigInt> orbit_values = {8, 120, 1680};
    const auto oracle = brute_common({1, 3}, 10000000);
    for (const auto& w : r13.values) {
        CHECK(edge_test(BigInt(1), w));
        CHECK(edge_test(BigInt(3), w));
        if (w <= 10000000) CHECK(std::binary_search(oracle.begin(), oracle.end(), w.get_ui()));
    }

    const auto V = big({1, 3, 8});
    const auto r = extend_double(V, 0, 1, 2);
    for (const auto& w : r.values) {
        CHECK(w != 120);
        CHECK(edge_test(BigInt(1), w));
        CHECK(edge_test(BigInt(3), w));
        CHECK_FALSE(edge_test(BigInt(8), w));
        CHECK(fresh(V, w));
    }

    const auto r24 = extend_double(big({2, 4}), 0, 1, 2);
    for (const auto& w : r24.values) {
        CHECK(edge_test(BigInt(2), w));
        CHECK(edge_test(BigInt(4), w));
    }
    CHECK_THROWS_AS(extend_double(big({2, 8}), 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(extend_double(big({1, 16}), 0, 1, 1), std::invalid_argument);
}

TEST_CASE("double extensions agree with the bounded oracle") {
    for (auto [a, b] : std::vector<std::pair<u64, u64>>{{1, 3}, {2, 4}, {1, 8}, {3, 5}, {2, 12}, {5, 7}}) {
        const auto rep = extend_double(big({a, b}), 0, 1, 3);
        for (const auto& w : rep.values) {
            if (w > 5000000) continue;
            const std::vector<u64> S = {a, b};
            const auto common = common_neighbors_bounded(S, 5000000);
            CHECK(std::binary_search(common.begin(), common.end(), w.get_ui()));
        }
    }
}

TEST_CASE("common neighbors") {
    CHECK(common_neighbors_equal_sqfree(1, 16) == std::vector<u64>{3});
    CHECK(common_neighbors_equal_sqfree(1, 4).empty());
    CHECK(common_neighbors_equal_sqfree(1, 9).empty());
    CHECK_THROWS_AS(common_neighbors_equal_sqfree(1, 3), std::invalid_argument);
    for (auto [a, b] : std::vector<std::pair<u64, u64>>{{1, 16}, {2, 8}, {3, 12}, {1, 25}, {5, 20}, {2, 18}, {4, 9}}) {
        const std::vector<u64> S = {a, b};
        CHECK_MESSAGE(common_neighbors_equal_sqfree(a, b) == brute_common(S, 200000), a << "," << b);
    }

    const std::vector<u64> s138 = {1, 3, 8};
    CHECK(common_neighbors_bounded(s138, 1000000) == std::vector<u64>{120});
    const std::vector<u64> s123 = {1, 2, 3};
    CHECK(common_neighbors_bounded(s123, 1000000).empty());
    const std::vector<u64> s13_120 = {1, 3, 120};
    CHECK(common_neighbors_bounded(s13_120, 1000000) == std::vector<u64>{8, 1680});
    const std::vector<u64> s = {2, 12};
    CHECK(common_neighbors_bounded(s, 100000) == brute_common(s, 100000));
}

TEST_CASE("regular extensions") {
    const auto t = RegularTriple::make(1, 3, 8);
    CHECK(t.r == 2);
    CHECK(t.s == 3);
    CHECK(t.t == 5);
    const auto [dm, dp] = regular_extensions(t);
    CHECK(dm == 0);
    CHECK(dp == 120);
    const auto [em, ep] = regular_extensions(RegularTriple::make(1, 3, 120));
    CHECK(em == 8);
    CHECK(ep == 1680);
    CHECK_THROWS_AS(RegularTriple::make(1, 2, 3), std::invalid_argument);

    for (u64 k = 2; k <= 30; ++k) {
        const auto tr = RegularTriple::make(k - 1, k + 1, 4 * k);
        const auto [lo, hi] = regular_extensions(tr);
        CHECK(hi == BigInt(16 * k * k * k - 4 * k));
        CHECK(lo >= 0);
        CHECK(lo < BigInt(4 * k));
        CHECK(hi > BigInt(4 * k));
    }
}

TEST_CASE("K5 minus an edge family") {
    const auto m2 = family_k5_minus_edge(2);
    CHECK(m2.values[0] == 1);
    CHECK(m2.values[4] == 11781);
    for (u64 k = 2; k <= 50; ++k) {
        const auto m = family_k5_minus_edge(k);
        const auto g = witness_graph(m.values);
        CHECK(g.edge_count() == 9);
        CHECK_FALSE(g.has_edge(m.missing_edge.first, m.missing_edge.second));
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) CHECK(g.has_edge(a, b));
    }
    CHECK_THROWS_AS(family_k5_minus_edge(1), std::invalid_argument);
}

TEST_CASE("represent small graphs") {
    // complement of C6
    SimpleGraph anti(6);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            if ((b - a) % 6 != 1 && (b - a) % 6 != 5) anti.add_edge(a, b);
    const auto ra = represent_graph(anti);
    REQUIRE(ra.status == RepresentStatus::found);
    CHECK(witness_graph(ra.witness) == anti);
    const auto given = witness_graph(big({1, 3, 8, 10, 96, 168}));
    CHECK(given.edge_count() == 9);

    SimpleGraph k5(5);
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) k5.add_edge(a, b);
    RepresentOptions quick;
    quick.search_bound = 200;
    quick.max_search_nodes = 200000;
    const auto rk = represent_graph(k5, quick);
    CHECK(rk.status == RepresentStatus::unknown);
    CHECK(rk.known_impossible);

    // Max degree <= 2: paths, cycles, matchings, isolated vertices.
    const std::vector<SimpleGraph> low = {
        from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
        from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}),
        from_edges(6, {{0, 1}, {2, 3}, {4, 5}}),
        from_edges(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}}),
        from_edges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}}),
        SimpleGraph(4),
    };
    for (const auto& g : low) {
        const auto r = represent_graph(g);
        REQUIRE(r.status == RepresentStatus::found);
        CHECK(witness_graph(r.witness) == g);
    }

    // K4 plus a pendant and a triangle hanging off it.
    const auto mixed = from_edges(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 4}});
    const auto rm = represent_graph(mixed);
    REQUIRE(rm.status == RepresentStatus::found);
    CHECK(witness_graph(rm.witness) == mixed);
}

TEST_CASE("random extensions keep every postcondition") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<u64> pick(1, 500);
    for (int trial = 0; trial < 15; ++trial) {
        std::set<u64> chosen;
        while (chosen.size() < 5) chosen.insert(pick(rng));
        const std::vector<u64> raw(chosen.begin(), chosen.end());
        const auto V = to_big(raw);
        for (const auto& w : extend_isolated(V, 3).values) {
            const std::vector<std::size_t> none;
            CHECK(verify_extension(V, w, none));
        }
        for (const auto& w : extend_pendant(V, 2, 3).values) {
            const std::vector<std::size_t> one = {2};
            CHECK(verify_extension(V, w, one));
        }
        std::size_t i = 0, j = 1;
        while (same_square_free_part(V[i], V[j])) ++j;
        for (const auto& w : extend_double(V, i, j, 3).values) {
            const std::vector<std::size_t> two = {i, j};
            CHECK(verify_extension(V, w, two));
        }
    }
}
