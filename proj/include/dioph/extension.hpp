// Constructive extensions of a witness set by one new vertex with a
// prescribed neighborhood of size 0, 1 or 2, common-neighbor solvers, the
// regular extensions d+- of a triple, and representation of small graphs.
#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dioph/graph.hpp"
#include "dioph/pell.hpp"

namespace dioph {

struct ExtensionBudget {
    std::size_t max_candidates = 200'000;  // candidates examined per request
    u64 max_pell_steps = 2'000'000;        // continued-fraction period cap
    std::size_t max_bits = 1u << 24;       // largest candidate considered
};

enum class ExtensionMode { isolated, pendant, double_link };

std::string to_string(ExtensionMode mode);

/// Verified extensions plus the construction data that produced them.
struct ExtensionReport {
    ExtensionMode mode = ExtensionMode::isolated;
    std::vector<BigInt> values;
    std::vector<std::size_t> linked;  // indices into V adjacent to every value
    std::vector<u64> primes;          // isolated: p_i per element of V
    u64 aux_prime = 0;                // q (isolated, pendant)
    BigInt modulus = 1;               // CRT modulus of the candidate progression
    BigInt residue = 0;               // its residue
    u64 pell_d = 0;                   // pendant: q v_i; double: v_i' v_j'
    u64 unit_order = 0;               // double: t0 for the chosen orientation
    std::size_t oriented_i = 0;       // double: index whose modulus fixed t0
    std::size_t candidates_examined = 0;
};

/// w with v w + 1 non-square for every v in V and a fresh square-free part
/// (distinct from V and from the other returned values).
ExtensionReport extend_isolated(std::span<const BigInt> V, std::size_t count, const ExtensionBudget& budget = {});

/// w adjacent to V[i] only, with square-free part divisible by the auxiliary
/// prime q. V[i] must fit in 64 bits.
ExtensionReport extend_pendant(std::span<const BigInt> V, std::size_t i, std::size_t count,
                               const ExtensionBudget& budget = {});

/// w adjacent to exactly V[i] and V[j], from the orbit of the generalized
/// Pell equation X^2 - v_i' v_j' Y^2 = v_i'(v_i' - v_j') through (v_i', 1).
/// Rejects V[i], V[j] with equal square-free parts.
ExtensionReport extend_double(std::span<const BigInt> V, std::size_t i, std::size_t j, std::size_t count,
                              const ExtensionBudget& budget = {});

/// Checks the adjacency pattern (exactly `linked`) and square-free freshness
/// of w against V.
bool verify_extension(std::span<const BigInt> V, const BigInt& w, std::span<const std::size_t> linked);

std::vector<BigInt> to_big(std::span<const u64> values);

/// All w >= 1 adjacent to both a and b, when a and b share a square-free
/// part. Exact, from the divisor pairs of a fixed difference of squares.
std::vector<u64> common_neighbors_equal_sqfree(u64 a, u64 b);

/// All w <= bound adjacent to every element of S (w not in S).
std::vector<u64> common_neighbors_bounded(std::span<const u64> S, u64 bound);

struct RegularTriple {
    BigInt a, b, c;
    BigInt r, s, t;  // ab+1 = r^2, ac+1 = s^2, bc+1 = t^2

    /// Throws std::invalid_argument unless {a, b, c} is a Diophantine triple.
    static RegularTriple make(const BigInt& a, const BigInt& b, const BigInt& c);
};

/// (d-, d+) = a + b + c + 2abc -+ 2rst. Each nonzero value distinct from
/// a, b, c is checked to extend the triple to a quadruple.
std::pair<BigInt, BigInt> regular_extensions(const RegularTriple& triple);

struct FamilyMember {
    std::array<BigInt, 5> values;
    std::pair<int, int> missing_edge;  // indices of the one non-adjacent pair
};

/// (k-1, k+1, 4k, 16k^3-4k, 256k^5+256k^4-32k^3-64k^2+k+3), checked to
/// induce K5 minus one edge with the first four forming a K4.
FamilyMember family_k5_minus_edge(u64 k);

struct RepresentOptions {
    u64 search_bound = 1000;              // candidate values for brute force
    std::uint64_t max_search_nodes = 20'000'000;
    ExtensionBudget extension_budget{20'000, 200'000, 1u << 20};
    /// Whole-graph brute force when the constructive rebuild exceeds its
    /// budget or the core search fails.
    bool whole_graph_fallback = true;
};

enum class RepresentStatus { found, unknown };

struct RepresentResult {
    RepresentStatus status = RepresentStatus::unknown;
    std::vector<BigInt> witness;  // witness[v] represents target vertex v
    std::string method;           // "extensions", "extensions+core", "search" or ""
    bool known_impossible = false;  // target contains K5
    std::vector<int> peel_order;
    std::size_t core_size = 0;
};

/// Peels vertices of degree <= 2 (minimum degree, smallest label first),
/// represents the remaining core by bounded search over values with pairwise
/// distinct square-free parts, then re-adds the peeled vertices with the
/// three extension constructions. Never claims non-representability.
RepresentResult represent_graph(const SimpleGraph& target, const RepresentOptions& options = {});

/// Bounded backtracking search for a witness of `target` using values in
/// [1, bound]. Empty result when none is found within `max_nodes`.
std::vector<u64> search_witness(const SimpleGraph& target, u64 bound, std::uint64_t max_nodes,
                                bool distinct_square_free);

}  // namespace dioph
