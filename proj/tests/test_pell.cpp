#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dioph/pell.hpp"

using namespace dioph;

namespace {

// Minimal y <= limit with 1 + D y^2 square; 0 when none.
u64 brute_unit_y(u64 D, u64 limit) {
    for (u64 y = 1; y <= limit; ++y) {
        if (is_square(static_cast<u128>(D) * y * y + 1)) return y;
    }
    return 0;
}

u64 iterate_order(const PellUnit& unit, u64 m) {
    if (m == 1) return 1;
    const u64 x0 = BigInt(unit.mu % m).get_ui(), y0 = BigInt(unit.nu % m).get_ui(), d = unit.D % m;
    u64 x = x0, y = y0;
    for (u64 t = 1;; ++t) {
        if (x == 1 % m && y == 0) return t;
        const u64 nx = (x * x0 + d * y % m * y0) % m;
        const u64 ny = (x * y0 + y * x0) % m;
        x = nx;
        y = ny;
    }
}

}  // namespace

TEST_CASE("fundamental unit examples") {
    auto u2 = fundamental_unit(2);
    CHECK(u2.mu == 3);
    CHECK(u2.nu == 2);
    auto u3 = fundamental_unit(3);
    CHECK(u3.mu == 2);
    CHECK(u3.nu == 1);
    auto u24 = fundamental_unit(24);
    CHECK(u24.mu == 5);
    CHECK(u24.nu == 1);
    CHECK_THROWS_AS(fundamental_unit(16), std::invalid_argument);
    // 61: famous large solution
    auto u61 = fundamental_unit(61);
    CHECK(u61.mu == BigInt("1766319049"));
    CHECK(u61.nu == BigInt("226153980"));
}

TEST_CASE("fundamental unit matches brute force for D <= 200") {
    int compared = 0;
    for (u64 D = 2; D <= 200; ++D) {
        if (is_square(D)) continue;
        const PellUnit u = fundamental_unit(D);
        CHECK(u.mu * u.mu - BigInt(D) * u.nu * u.nu == 1);
        const u64 y = brute_unit_y(D, 100000);
        if (y == 0) {
            CHECK(u.nu > 100000);
            continue;
        }
        CHECK_MESSAGE(u.nu == y, "D = " << D);
        ++compared;
    }
    CHECK(compared > 150);
}

TEST_CASE("orbits") {
    const PellInstance inst(3, -2);
    const auto o = orbit(inst, {1, 1}, 3);
    REQUIRE(o.solutions.size() == 4);
    CHECK(o.solutions[0] == PellPair{1, 1});
    CHECK(o.solutions[1] == PellPair{5, 3});
    CHECK(o.solutions[2] == PellPair{19, 11});
    CHECK(o.solutions[3] == PellPair{71, 41});
    // Common neighbors of {1, 3}: w = Y^2 - 1.
    CHECK(o.solutions[2].y * o.solutions[2].y - 1 == 120);
    CHECK(o.solutions[3].y * o.solutions[3].y - 1 == 1680);

    const auto o2 = orbit(PellInstance(2, 1), {3, 2}, 1);
    CHECK(o2.solutions[1] == PellPair{17, 12});

    for (u64 vi : {2, 3, 5, 7}) {
        for (u64 vj : {6, 10, 11}) {
            const PellInstance g(vi * vj, BigInt(vi) * (BigInt(vi) - BigInt(vj)));
            const auto og = orbit(g, {vi, 1}, 6);
            for (std::size_t t = 0; t < og.solutions.size(); ++t) {
                const auto& s = og.solutions[t];
                CHECK(s.x * s.x - BigInt(vi * vj) * s.y * s.y == g.N);
                if (t > 0) {
                    CHECK(s.x > og.solutions[t - 1].x);
                }
            }
        }
    }
    CHECK_THROWS_AS(orbit(PellInstance(3, -2), {2, 1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(PellInstance(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(PellInstance(3, 0), std::invalid_argument);
}

TEST_CASE("unit order modulo m") {
    const PellUnit u2 = fundamental_unit(2);
    CHECK(unit_order_mod(u2, 7) == 3);
    CHECK(unit_order_mod(u2, 1) == 1);
    const PellUnit u3 = fundamental_unit(3);
    CHECK(unit_order_mod(u3, 2) == iterate_order(u3, 2));

    for (u64 D : {2, 3, 5, 6, 7, 10, 13, 15, 24, 30}) {
        const PellUnit u = fundamental_unit(D);
        for (u64 m = 1; m <= 200; ++m) {
            const u64 t = unit_order_mod(u, m);
            if (t != iterate_order(u, m)) FAIL("order mismatch D=" << D << " m=" << m);
            // t is minimal: t/p is not an order for any prime p | t
            const PellPair one = pell_power(u, t);
            CHECK((one.x - 1) % BigInt(m) == 0);
            CHECK(one.y % BigInt(m) == 0);
            if (t > 1) {
                const Factorization fac = factorize(t);
                for (const auto& [p, _] : fac.factors()) {
                    const PellPair part = pell_power(u, t / p);
                    const bool identity = (part.x - 1) % BigInt(m) == 0 && part.y % BigInt(m) == 0;
                    CHECK_FALSE(identity);
                }
            }
        }
    }
}

TEST_CASE("continued fraction period") {
    CHECK(continued_fraction_period(2) == 1);
    CHECK(continued_fraction_period(3) == 2);
    CHECK(continued_fraction_period(7) == 4);
    CHECK(continued_fraction_period(13) == 5);
}
