// Exact integer primitives: square detection, factorization, square-free
// parts and the solutions of x^2 = 1 (mod a).
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace dioph {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using BigInt = mpz_class;

u64 isqrt(u64 n);
u64 isqrt(u128 n);
bool is_square(u64 n);
bool is_square(u128 n);
bool is_square(const BigInt& n);

/// Prime factorization of a positive 64-bit integer, keyed by prime.
class Factorization {
public:
    Factorization() = default;
    Factorization(u64 n, std::map<u64, unsigned> factors);

    u64 value() const { return n_; }
    const std::map<u64, unsigned>& factors() const { return factors_; }
    /// Number of distinct prime divisors.
    unsigned omega() const { return static_cast<unsigned>(factors_.size()); }
    unsigned exponent_of(u64 p) const;

private:
    u64 n_ = 1;
    std::map<u64, unsigned> factors_;
};

/// Smallest-prime-factor table, built once on first use. The bound defaults
/// to 10^7 and can be overridden with the DIOPH_SIEVE_BOUND environment
/// variable before first use.
class SpfSieve {
public:
    static const SpfSieve& instance();
    explicit SpfSieve(u64 bound);

    u64 bound() const { return bound_; }
    /// Smallest prime factor of 2 <= n <= bound.
    u64 spf(u64 n) const { return spf_[n]; }
    const std::vector<u64>& primes() const { return primes_; }

private:
    u64 bound_;
    std::vector<std::uint32_t> spf_;
    std::vector<u64> primes_;
};

bool is_prime(u64 n);

/// Throws std::invalid_argument for n == 0.
Factorization factorize(u64 n);

/// Product of the primes dividing n to an odd power.
u64 square_free_part(u64 n);

/// True when x and y have the same square-free part, i.e. x*y is a square.
bool same_square_free_part(const BigInt& x, const BigInt& y);

struct UnitRootsModA {
    u64 a = 1;
    std::vector<u64> roots;  // sorted residues in [0, a)
    u64 count() const { return roots.size(); }
};

/// All x in [0, a) with x^2 = 1 (mod a), assembled by CRT from the roots
/// modulo each prime power. a == 1 yields {0}.
UnitRootsModA unit_roots_mod(u64 a);
UnitRootsModA unit_roots_mod(const Factorization& f);

/// S(a) from the closed-form case split on the 2-adic valuation of a.
u64 count_unit_roots(u64 a);
u64 count_unit_roots(const Factorization& f);

u64 gcd(u64 a, u64 b);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Solves x = r1 (mod m1), x = r2 (mod m2) for coprime moduli; returns
/// the residue modulo m1*m2.
BigInt crt_pair(const BigInt& r1, const BigInt& m1, const BigInt& r2, const BigInt& m2);

/// p-adic valuation of a nonzero big integer.
unsigned valuation(const BigInt& n, u64 p);

}  // namespace dioph
