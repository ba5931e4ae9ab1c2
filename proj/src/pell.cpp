#include "dioph/pell.hpp"

#include <map>
#include <sstream>

namespace dioph {

PellInstance::PellInstance(u64 d, BigInt n) : D(d), N(std::move(n)) {
    if (D < 2 || is_square(D)) throw std::invalid_argument("PellInstance: D must be a non-square >= 2");
    if (sgn(N) == 0) throw std::invalid_argument("PellInstance: N must be nonzero");
}

namespace {

void check_pell_d(u64 D) {
    if (D < 2 || is_square(D)) throw std::invalid_argument("Pell: D must be a non-square >= 2");
    if (D > (u64{1} << 62)) throw std::invalid_argument("Pell: D too large");
}

}  // namespace

u64 continued_fraction_period(u64 D) {
    check_pell_d(D);
    const u64 a0 = isqrt(D);
    u64 m = 0, d = 1, a = a0, len = 0;
    do {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        ++len;
    } while (a != 2 * a0);
    return len;
}

PellUnit fundamental_unit(u64 D, u64 max_steps) {
    check_pell_d(D);
    const u64 a0 = isqrt(D);
    u64 m = 0, d = 1, a = a0;
    BigInt p_prev = 1, p = a0;
    BigInt q_prev = 0, q = 1;
    u64 len = 0;
    for (;;) {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        ++len;
        if (a == 2 * a0) break;
        if (len > max_steps) throw BudgetExceeded("fundamental_unit: continued fraction period exceeds budget");
        BigInt p_next = p * a + p_prev;
        BigInt q_next = q * a + q_prev;
        p_prev = std::move(p);
        p = std::move(p_next);
        q_prev = std::move(q);
        q = std::move(q_next);
    }
    PellUnit unit{D, p, q};
    if (len % 2 == 1) {
        // Odd period: (p, q) has norm -1; its square has norm +1.
        unit.mu = p * p + BigInt(D) * q * q;
        unit.nu = 2 * p * q;
    }
    return unit;
}

PellPair pell_multiply(const PellPair& a, const PellPair& b, u64 D) {
    return {a.x * b.x + BigInt(D) * a.y * b.y, a.x * b.y + a.y * b.x};
}

PellPair pell_power(const PellUnit& unit, u64 exponent) {
    PellPair result{1, 0};
    PellPair base{unit.mu, unit.nu};
    while (exponent > 0) {
        if (exponent & 1) result = pell_multiply(result, base, unit.D);
        exponent >>= 1;
        if (exponent > 0) base = pell_multiply(base, base, unit.D);
    }
    return result;
}

PellOrbit orbit(const PellInstance& instance, const PellPair& seed, std::size_t count) {
    BigInt residual = seed.x * seed.x - BigInt(instance.D) * seed.y * seed.y - instance.N;
    if (residual != 0) {
        std::ostringstream msg;
        msg << "orbit: seed (" << seed.x << ", " << seed.y << ") does not solve x^2 - " << instance.D
            << " y^2 = " << instance.N << " (residual " << residual << ")";
        throw std::invalid_argument(msg.str());
    }
    if (sgn(seed.x) <= 0 || sgn(seed.y) <= 0) throw std::invalid_argument("orbit: seed must be positive");
    PellOrbit out{instance, fundamental_unit(instance.D), {seed}};
    PellPair eps{out.unit.mu, out.unit.nu};
    out.solutions.reserve(count + 1);
    for (std::size_t i = 0; i < count; ++i) {
        out.solutions.push_back(pell_multiply(out.solutions.back(), eps, instance.D));
    }
    return out;
}

namespace {

struct ModPair {
    u64 x;
    u64 y;
};

ModPair mul_mod(ModPair a, ModPair b, u64 d, u64 m) {
    u64 x = (mulmod(a.x, b.x, m) + mulmod(d, mulmod(a.y, b.y, m), m)) % m;
    u64 y = (mulmod(a.x, b.y, m) + mulmod(a.y, b.x, m)) % m;
    return {x, y};
}

ModPair pow_mod(ModPair base, u64 e, u64 d, u64 m) {
    ModPair result{1 % m, 0};
    while (e > 0) {
        if (e & 1) result = mul_mod(result, base, d, m);
        base = mul_mod(base, base, d, m);
        e >>= 1;
    }
    return result;
}

ModPair pow_by_factors(ModPair base, const std::map<u64, unsigned>& exps, u64 d, u64 m) {
    for (const auto& [p, e] : exps) {
        for (unsigned i = 0; i < e; ++i) base = pow_mod(base, p, d, m);
    }
    return base;
}

void merge_factors(std::map<u64, unsigned>& into, u64 n, unsigned times = 1) {
    if (n <= 1) return;
    const Factorization fac = factorize(n);
    for (const auto& [p, e] : fac.factors()) into[p] += e * times;
}

}  // namespace

u64 unit_order_mod(const PellUnit& unit, u64 m) {
    if (m == 0) throw std::invalid_argument("unit_order_mod: m must be positive");
    if (m == 1) return 1;
    const u64 d = unit.D % m;
    const ModPair eps{BigInt(unit.mu % m).get_ui(), BigInt(unit.nu % m).get_ui()};

    // |(Z[sqrt D]/p^k)^*| = p^(2(k-1)) * |(Z[sqrt D]/p)^*|.
    std::map<u64, unsigned> group;
    const Factorization fac = factorize(m);
    for (const auto& [p, k] : fac.factors()) {
        if (k > 1) group[p] += 2 * (k - 1);
        if (p == 2) {
            group[2] += 1;
        } else if (unit.D % p == 0) {
            group[p] += 1;
            merge_factors(group, p - 1);
        } else if (powmod(unit.D % p, (p - 1) / 2, p) == 1) {
            merge_factors(group, p - 1, 2);
        } else {
            merge_factors(group, p - 1);
            merge_factors(group, p + 1);
        }
    }
    auto is_identity = [&](const ModPair& v) { return v.x == 1 % m && v.y == 0; };
    if (!is_identity(pow_by_factors(eps, group, d, m)))
        throw std::logic_error("unit_order_mod: unit group order computation is inconsistent");

    for (auto& [p, e] : group) {
        while (e > 0) {
            --e;
            if (!is_identity(pow_by_factors(eps, group, d, m))) {
                ++e;
                break;
            }
        }
    }
    u128 order = 1;
    for (const auto& [p, e] : group) {
        for (unsigned i = 0; i < e; ++i) {
            order *= p;
            if (order >> 64) throw std::overflow_error("unit_order_mod: order exceeds 64 bits");
        }
    }
    return static_cast<u64>(order);
}

}  // namespace dioph
