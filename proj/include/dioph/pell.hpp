// Pell and generalized Pell equations x^2 - D y^2 = N: fundamental units from
// the continued fraction of sqrt(D), orbits of a seed solution, and the
// multiplicative order of the unit modulo m.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dioph/numtheory.hpp"

namespace dioph {

/// Raised when a computation would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PellInstance {
    u64 D = 2;     // non-square, D >= 2
    BigInt N = 1;  // nonzero right-hand side

    PellInstance() = default;
    PellInstance(u64 d, BigInt n);
};

/// Minimal positive solution of mu^2 - D nu^2 = 1.
struct PellUnit {
    u64 D = 2;
    BigInt mu = 3;
    BigInt nu = 2;
};

struct PellPair {
    BigInt x;
    BigInt y;
    bool operator==(const PellPair&) const = default;
};

struct PellOrbit {
    PellInstance instance;
    PellUnit unit;
    std::vector<PellPair> solutions;  // seed first, strictly increasing
};

/// `max_steps` caps the continued-fraction period that will be walked.
PellUnit fundamental_unit(u64 D, u64 max_steps = 10'000'000);

/// Length of the continued-fraction period of sqrt(D).
u64 continued_fraction_period(u64 D);

/// (x + y sqrt D)(u + v sqrt D).
PellPair pell_multiply(const PellPair& a, const PellPair& b, u64 D);
PellPair pell_power(const PellUnit& unit, u64 exponent);

/// The seed followed by `count` successors under multiplication by the
/// fundamental unit. The seed must be positive and solve the instance.
PellOrbit orbit(const PellInstance& instance, const PellPair& seed, std::size_t count);

/// Smallest t >= 1 with (mu + nu sqrt D)^t = 1 in Z[sqrt D]/(m). Uses the
/// order of the unit group of the residue ring and strips prime factors.
u64 unit_order_mod(const PellUnit& unit, u64 m);

}  // namespace dioph
