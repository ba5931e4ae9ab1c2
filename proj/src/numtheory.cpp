#include "dioph/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dioph {

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 isqrt(u128 n) {
    if (n >> 64 == 0) return isqrt(static_cast<u64>(n));
    // floor(sqrt(n)) < 2^64 for any n < 2^128.
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    auto sq = [](u64 x) { return static_cast<u128>(x) * x; };
    while (r > 0 && sq(r) > n) --r;
    while (r != UINT64_MAX && sq(r + 1) <= n) ++r;
    return r;
}

namespace {

// Quadratic residues mod 64 / 63 / 65 as bit filters.
struct SquareFilter {
    bool mod64[64]{};
    bool mod63[63]{};
    bool mod65[65]{};
    SquareFilter() {
        for (unsigned i = 0; i < 64; ++i) mod64[(i * i) % 64] = true;
        for (unsigned i = 0; i < 63; ++i) mod63[(i * i) % 63] = true;
        for (unsigned i = 0; i < 65; ++i) mod65[(i * i) % 65] = true;
    }
};
const SquareFilter kFilter;

}  // namespace

bool is_square(u64 n) {
    if (!kFilter.mod64[n & 63] || !kFilter.mod63[n % 63] || !kFilter.mod65[n % 65]) return false;
    u64 r = isqrt(n);
    return r * r == n;
}

bool is_square(u128 n) {
    if (!kFilter.mod64[static_cast<unsigned>(n & 63)] || !kFilter.mod63[static_cast<unsigned>(n % 63)])
        return false;
    u64 r = isqrt(n);
    return static_cast<u128>(r) * r == n;
}

bool is_square(const BigInt& n) {
    if (sgn(n) < 0) throw std::invalid_argument("is_square: negative input");
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Factorization::Factorization(u64 n, std::map<u64, unsigned> factors) : n_(n), factors_(std::move(factors)) {}

unsigned Factorization::exponent_of(u64 p) const {
    auto it = factors_.find(p);
    return it == factors_.end() ? 0 : it->second;
}

namespace {

u64 sieve_bound_from_env() {
    if (const char* env = std::getenv("DIOPH_SIEVE_BOUND")) {
        try {
            u64 v = std::stoull(env);
            if (v >= 16) return v;
        } catch (const std::exception&) {
        }
    }
    return 10'000'000;
}

}  // namespace

SpfSieve::SpfSieve(u64 bound) : bound_(bound), spf_(bound + 1, 0) {
    for (u64 i = 2; i <= bound_; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes_.push_back(i);
        }
        for (u64 p : primes_) {
            if (p > spf_[i] || i * p > bound_) break;
            spf_[i * p] = static_cast<std::uint32_t>(p);
        }
    }
}

const SpfSieve& SpfSieve::instance() {
    static const SpfSieve sieve(sieve_bound_from_env());
    return sieve;
}

u64 gcd(u64 a, u64 b) {
    while (b != 0) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all 64-bit n.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_large(u64 n, std::map<u64, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_rho(n);
    factor_large(d, out);
    factor_large(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::map<u64, unsigned> out;
    const SpfSieve& sieve = SpfSieve::instance();
    u64 m = n;
    if (m <= sieve.bound()) {
        while (m > 1) {
            u64 p = sieve.spf(m);
            ++out[p];
            m /= p;
        }
        return {n, std::move(out)};
    }
    for (u64 p : sieve.primes()) {
        if (p * p > m) break;
        while (m % p == 0) {
            ++out[p];
            m /= p;
        }
    }
    if (m > 1) {
        u64 pmax = sieve.primes().empty() ? 1 : sieve.primes().back();
        if (static_cast<u128>(pmax) * pmax >= m || is_prime(m)) {
            ++out[m];
        } else {
            factor_large(m, out);
        }
    }
    return {n, std::move(out)};
}

u64 square_free_part(u64 n) {
    u64 result = 1;
    const Factorization fac = factorize(n);
    for (const auto& [p, e] : fac.factors()) {
        if (e % 2 == 1) result *= p;
    }
    return result;
}

bool same_square_free_part(const BigInt& x, const BigInt& y) {
    if (sgn(x) <= 0 || sgn(y) <= 0) throw std::invalid_argument("same_square_free_part: inputs must be positive");
    BigInt prod = x * y;
    return is_square(prod);
}

BigInt crt_pair(const BigInt& r1, const BigInt& m1, const BigInt& r2, const BigInt& m2) {
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0) {
        if (m2 == 1) return BigInt(r1 % m1);
        throw std::invalid_argument("crt_pair: moduli are not coprime");
    }
    BigInt t = ((r2 - r1) % m2) * inv % m2;
    if (sgn(t) < 0) t += m2;
    BigInt m = m1 * m2;
    BigInt x = (r1 + m1 * t) % m;
    if (sgn(x) < 0) x += m;
    return x;
}

unsigned valuation(const BigInt& n, u64 p) {
    if (sgn(n) == 0) throw std::invalid_argument("valuation: zero has no valuation");
    BigInt m = n;
    unsigned v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

namespace {

std::vector<u64> prime_power_unit_roots(u64 p, unsigned k, u64 pk) {
    if (p != 2) return {1, pk - 1};
    if (k == 1) return {1};
    if (k == 2) return {1, 3};
    return {1, pk / 2 - 1, pk / 2 + 1, pk - 1};
}

}  // namespace

UnitRootsModA unit_roots_mod(const Factorization& f) {
    UnitRootsModA out;
    out.a = f.value();
    if (out.a == 1) {
        out.roots = {0};
        return out;
    }
    std::vector<u64> roots{0};
    u64 modulus = 1;
    for (const auto& [p, e] : f.factors()) {
        u64 pk = 1;
        for (unsigned i = 0; i < e; ++i) pk *= p;
        std::vector<u64> local = prime_power_unit_roots(p, e, pk);
        // x = r (mod modulus), x = s (mod pk): x = r + modulus * ((s - r) * modulus^{-1} mod pk).
        u64 inv = 0;
        if (pk > 1) {
            BigInt g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), BigInt(modulus % pk).get_mpz_t(),
                       BigInt(pk).get_mpz_t());
            BigInt si = s % BigInt(pk);
            if (sgn(si) < 0) si += pk;
            inv = si.get_ui();
        }
        std::vector<u64> next;
        next.reserve(roots.size() * local.size());
        for (u64 r : roots) {
            for (u64 s : local) {
                u64 diff = (s + pk - r % pk) % pk;
                u64 t = mulmod(diff, inv, pk);
                next.push_back(r + modulus * t);
            }
        }
        roots = std::move(next);
        modulus *= pk;
    }
    std::sort(roots.begin(), roots.end());
    out.roots = std::move(roots);
    return out;
}

UnitRootsModA unit_roots_mod(u64 a) {
    if (a == 0) throw std::invalid_argument("unit_roots_mod: a must be positive");
    return unit_roots_mod(factorize(a));
}

u64 count_unit_roots(const Factorization& f) {
    const u64 a = f.value();
    if (a == 1) return 1;
    const unsigned w = f.omega();
    const unsigned v2 = f.exponent_of(2);
    if (v2 == 0) return u64{1} << w;
    if (v2 == 1) return u64{1} << (w - 1);
    if (v2 == 2) return u64{1} << w;
    return u64{1} << (w + 1);
}

u64 count_unit_roots(u64 a) {
    if (a == 0) throw std::invalid_argument("count_unit_roots: a must be positive");
    return count_unit_roots(factorize(a));
}

}  // namespace dioph
