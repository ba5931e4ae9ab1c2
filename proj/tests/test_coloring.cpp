#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "dioph/analysis.hpp"
#include "dioph/coloring.hpp"
#include "dioph/known_sets.hpp"

using namespace dioph;

namespace {

SimpleGraph cycle(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

SimpleGraph complete(int n) {
    SimpleGraph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

bool brute_colorable(const SimpleGraph& g, unsigned k) {
    const int n = g.size();
    if (n == 0) return true;
    if (k == 0) return false;
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    while (true) {
        if (is_proper_coloring(g, c)) return true;
        int i = 0;
        while (i < n && ++c[static_cast<std::size_t>(i)] == static_cast<int>(k)) c[static_cast<std::size_t>(i++)] = 0;
        if (i == n) return false;
    }
}

std::vector<u64> eighty_set() { return {kNonFourColorable80.begin(), kNonFourColorable80.end()}; }

}  // namespace

TEST_CASE("sweep examples") {
    const std::vector<u64> quad = {1, 3, 8, 120};
    const SimpleGraph k4 = build_set(quad).to_simple();
    ColorState s(k4, 4);
    CHECK(s.assign(0, 0));
    CHECK(s.assign(1, 1));
    CHECK(s.assign(2, 2));
    CHECK(sweep(s));
    CHECK(s.color_of(3) == 3);

    SimpleGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    ColorState p(path, 2);
    p.assign(0, 0);
    CHECK(sweep(p));
    CHECK(p.color_of(1) == 1);
    CHECK(p.color_of(2) == 0);

    ColorState t(complete(3), 2);
    t.assign(0, 0);
    t.assign(1, 1);
    CHECK_FALSE(sweep(t));
    CHECK(t.contradictory());
}

TEST_CASE("sweep is monotone and order-independent") {
    std::mt19937_64 rng(11);
    const auto g = build_range(300).to_simple();
    for (int trial = 0; trial < 50; ++trial) {
        ColorState base(g, 4);
        std::uniform_int_distribution<int> vert(0, g.size() - 1);
        std::uniform_int_distribution<unsigned> col(0, 3);
        for (int i = 0; i < 25; ++i) base.remove(vert(rng), col(rng));
        for (int i = 0; i < 4; ++i) base.assign(vert(rng), col(rng));
        ColorState ordered = base;
        const bool ok = sweep(ordered);
        for (int r = 0; r < 4; ++r) {
            ColorState shuffled = base;
            std::mt19937_64 order_rng(rng());
            CHECK(sweep(shuffled, nullptr, &order_rng) == ok);
            if (!ok) continue;
            for (int v = 0; v < g.size(); ++v) CHECK(shuffled.candidates(v) == ordered.candidates(v));
        }
        if (ok) {
            for (int v = 0; v < g.size(); ++v) CHECK((ordered.candidates(v) & ~base.candidates(v)) == 0);
        }
    }
}

TEST_CASE("k_colorable small graphs") {
    CHECK_FALSE(k_colorable(cycle(5), 2).colorable);
    const auto r = k_colorable(cycle(5), 3);
    CHECK(r.colorable);
    CHECK(is_proper_coloring(cycle(5), r.colors));
    CHECK_FALSE(k_colorable(cycle(5), 0).colorable);
    CHECK(k_colorable(SimpleGraph(0), 0).colorable);
    CHECK_FALSE(k_colorable(complete(5), 4).colorable);
    CHECK(k_colorable(complete(5), 5).colorable);
}

TEST_CASE("k_colorable agrees with exhaustive enumeration") {
    std::mt19937_64 rng(3);
    // Draw from the 80-vertex set so that most samples carry edges.
    const auto pool = eighty_set();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> size(1, 8);
    int nontrivial = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::set<u64> chosen;
        const int n = size(rng);
        while (static_cast<int>(chosen.size()) < n) chosen.insert(pool[pick(rng)]);
        const std::vector<u64> v(chosen.begin(), chosen.end());
        const SimpleGraph g = build_set(v).to_simple();
        if (g.edge_count() > 0) ++nontrivial;
        for (unsigned k = 1; k <= 4; ++k) {
            const auto res = k_colorable(g, k);
            CHECK(res.colorable == brute_colorable(g, k));
            if (res.colorable) CHECK(is_proper_coloring(g, res.colors));
        }
    }
    CHECK(nontrivial > 100);
    // Denser abstract graphs too.
    std::bernoulli_distribution coin(0.6);
    for (int trial = 0; trial < 100; ++trial) {
        SimpleGraph g(7);
        for (int a = 0; a < 7; ++a)
            for (int b = a + 1; b < 7; ++b)
                if (coin(rng)) g.add_edge(a, b);
        for (unsigned k = 1; k <= 4; ++k) CHECK(k_colorable(g, k).colorable == brute_colorable(g, k));
    }
}

TEST_CASE("chromatic number") {
    const std::vector<u64> quad = {1, 3, 8, 120};
    CHECK(chromatic_number(build_set(quad)) == 4);
    const std::vector<u64> single = {5};
    CHECK(chromatic_number(build_set(single)) == 1);
    CHECK(chromatic_number(cycle(7)) == 3);
}

TEST_CASE("the 80-vertex set") {
    const auto V = eighty_set();
    const auto g = build_set(V);
    const auto r4 = k_colorable(g, 4, V);
    CHECK_FALSE(r4.colorable);
    CHECK(r4.symmetry_clique.size() == 4);
    const auto r5 = k_colorable(g, 5, V);
    REQUIRE(r5.colorable);
    CHECK(is_proper_coloring(g.to_simple(), r5.colors));
    CHECK(chromatic_number(g, V) == 5);

    // 1365 is load-bearing.
    std::vector<u64> without(V.begin(), V.end() - 1);
    CHECK(k_colorable(build_set(without), 4, without).colorable);
}

TEST_CASE("1000-vertex heuristic graph is not 4-colorable") {
    const auto top = heuristic_top(1000000, 1000);
    const auto r = k_colorable(build_set(top), 4, top);
    CHECK_FALSE(r.colorable);
    CHECK(r.stats.seconds < 60.0);
    CHECK(r.stats.peak_open < 10000);
}

TEST_CASE("branch prefixes partition the search") {
    const auto V = eighty_set();
    const auto g = build_set(V).to_simple();
    ColoringOptions base;
    base.labels = V;
    const auto full = k_colorable(g, 5, base);
    REQUIRE(full.colorable);
    bool any = false;
    for (unsigned child = 0; child < 5; ++child) {
        ColoringOptions o = base;
        o.branch_prefix = {child};
        const auto part = k_colorable(g, 5, o);
        if (part.colorable) {
            any = true;
            CHECK(is_proper_coloring(g, part.colors));
        }
    }
    CHECK(any);
}

TEST_CASE("minimality") {
    const auto rep = minimality_check(complete(5), 4);
    CHECK(rep.minimal);
    CHECK(rep.critical.size() == 5);
    CHECK_THROWS_AS(minimality_check(complete(4), 4), std::invalid_argument);
}

TEST_CASE("shift-2 coloring") {
    for (u64 N : {1, 100, 2000}) {
        const auto g = build_range(N, 2);
        const auto colors = mod4_coloring_shift2(g);
        CHECK(is_proper_coloring(g.to_simple(), colors));
    }
}

TEST_CASE("exports") {
    std::ostringstream out;
    write_coloring(out, {1, 3, 8}, {0, 1, 2});
    CHECK(out.str() == "1 0\n3 1\n8 2\n");
    const auto r = k_colorable(cycle(5), 3);
    const std::string doc = coloring_stats_json(r, 3);
    CHECK(doc.find("\"schema_version\"") != std::string::npos);
    CHECK(doc.find("\"peak_open_branches\"") != std::string::npos);
}
