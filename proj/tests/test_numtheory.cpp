#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dioph/numtheory.hpp"

using namespace dioph;

namespace {

u64 brute_square_free(u64 n) {
    u64 out = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2 == 1) out *= p;
    }
    return out * n;
}

std::vector<u64> brute_roots(u64 a) {
    std::vector<u64> out;
    for (u64 x = 0; x < a; ++x) {
        if ((x * x) % a == 1 % a) out.push_back(x);
    }
    return out;
}

}  // namespace

TEST_CASE("square detection") {
    CHECK(is_square(u64{3 * 8 + 1}));
    CHECK(is_square(u64{0}));
    CHECK(isqrt(u64{0}) == 0);
    CHECK_FALSE(is_square(u64{1 * 2 + 1}));
    CHECK(isqrt(~u64{0}) == 4294967295ULL);
    for (u64 n = 0; n < 100000; ++n) {
        const u64 r = isqrt(n);
        CHECK_UNARY(r * r <= n);
        CHECK_UNARY((r + 1) * (r + 1) > n);
        if (is_square(n) != (r * r == n)) FAIL("is_square disagrees at " << n);
    }
    const u128 big = static_cast<u128>(4294967311ULL) * 4294967311ULL;
    CHECK(is_square(big));
    CHECK_FALSE(is_square(big + 1));
    CHECK(is_square(BigInt("1000000000000000000000000000000000000")));
    CHECK_THROWS_AS(is_square(BigInt(-4)), std::invalid_argument);
}

TEST_CASE("factorize") {
    const auto f24 = factorize(24);
    CHECK(f24.factors() == std::map<u64, unsigned>{{2, 3}, {3, 1}});
    CHECK(f24.omega() == 2);
    CHECK(factorize(1).factors().empty());
    CHECK(factorize(1).omega() == 0);
    const auto f840 = factorize(840);
    CHECK(f840.factors() == std::map<u64, unsigned>{{2, 3}, {3, 1}, {5, 1}, {7, 1}});
    CHECK(f840.omega() == 4);
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);

    // Beyond the sieve: semiprime of two ~32-bit primes and a 64-bit prime.
    const u64 p = 4294967291ULL, q = 4294967279ULL;
    const auto fpq = factorize(p * q);
    CHECK(fpq.factors() == std::map<u64, unsigned>{{q, 1}, {p, 1}});
    CHECK(is_prime(18446744073709551557ULL));
    CHECK(factorize(18446744073709551557ULL).omega() == 1);

    for (u64 n = 1; n <= 20000; ++n) {
        const auto f = factorize(n);
        u64 prod = 1;
        for (const auto& [prime, e] : f.factors()) {
            CHECK_UNARY(is_prime(prime));
            for (unsigned i = 0; i < e; ++i) prod *= prime;
        }
        if (prod != n) FAIL("product mismatch at " << n);
    }
}

TEST_CASE("square-free part") {
    CHECK(square_free_part(16) == 1);
    CHECK(square_free_part(12) == 3);
    CHECK(square_free_part(7) == 7);
    for (u64 n = 1; n <= 10000; ++n) {
        const u64 s = square_free_part(n);
        REQUIRE(s == brute_square_free(n));
        CHECK(n % s == 0);
        CHECK(is_square(n / s));
        const Factorization fac = factorize(s);
        for (const auto& [_, e] : fac.factors()) CHECK(e == 1);
    }
    CHECK(same_square_free_part(BigInt(2), BigInt(8)));
    CHECK_FALSE(same_square_free_part(BigInt(2), BigInt(4)));
    CHECK(same_square_free_part(BigInt(1), BigInt(16)));
}

TEST_CASE("unit roots") {
    const auto r24 = unit_roots_mod(24);
    CHECK(r24.roots == std::vector<u64>{1, 5, 7, 11, 13, 17, 19, 23});
    CHECK(r24.count() == 8);
    CHECK(unit_roots_mod(2).roots == std::vector<u64>{1});
    CHECK(unit_roots_mod(1).roots == std::vector<u64>{0});
    CHECK(count_unit_roots(1) == 1);
    CHECK(count_unit_roots(24) == 8);
    CHECK(count_unit_roots(15) == 4);
    CHECK(count_unit_roots(4) == 2);

    for (u64 a = 1; a <= 10000; ++a) {
        const auto brute = brute_roots(a);
        const auto fast = unit_roots_mod(a);
        if (fast.roots != brute) FAIL("roots mismatch at " << a);
        if (count_unit_roots(a) != brute.size()) FAIL("closed form mismatch at " << a);
        const unsigned w = factorize(a).omega();
        CHECK(count_unit_roots(a) <= (u64{1} << (w + 1)));
    }
}

TEST_CASE("modular helpers") {
    CHECK(gcd(12, 18) == 6);
    CHECK(powmod(3, 200, 1000000007ULL) == 136318165ULL);
    CHECK(mulmod(~u64{0} - 1, ~u64{0} - 1, ~u64{0}) == 1);
    const BigInt x = crt_pair(1, 4, 3, 9);
    CHECK(x == 21);
    CHECK(valuation(BigInt(72), 2) == 3);
    CHECK(valuation(BigInt(72), 3) == 2);
    CHECK(valuation(BigInt(72), 5) == 0);
}
