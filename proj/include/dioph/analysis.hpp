// Empirical analyses on D({1..N}): density amplification by pruning, the
// S(a)/sqrt(a) vertex ranking, the distribution of omega, and Hamiltonian
// paths and cycles.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dioph/graph.hpp"

namespace dioph {

struct PruneStep {
    u64 vertex = 0;
    std::size_t degree = 0;
    std::size_t n_before = 0, e_before = 0;
    double density_before = 0.0, density_after = 0.0;
};

struct PruneTrace {
    std::vector<PruneStep> steps;
    GraphStats initial;
    GraphStats final;
};

/// Repeatedly deletes a minimum-degree vertex (smallest value on ties) while
/// its degree is below e/n. Every step strictly raises e/n.
std::pair<DiophGraph, PruneTrace> prune_low_degree(const DiophGraph& g);

/// Exact comparison key S(a)/sqrt(a); also available as a double.
double heuristic_score(u64 a);

/// The `count` values a in [1, N] with the largest S(a)/sqrt(a), descending,
/// ties by smaller a.
std::vector<u64> heuristic_top(u64 N, std::size_t count);

struct OmegaDistribution {
    u64 x = 0;
    std::vector<u64> counts;  // counts[k] = #{a <= x : omega(a) = k}
    double C = 2.0;
    double threshold = 0.0;  // C log log x
    u64 tail = 0;            // sum of counts[k] over k > threshold
    double bound = 0.0;      // x (log x)^(C - C log C - 1)
    bool tail_within_bound = false;
};

OmegaDistribution omega_distribution(u64 x, double C = 2.0);

/// Odd numbers descending to 1, then 8, 6, 4, 2, then 12, 14, ... .
/// Misses only 10 (when N >= 10). Requires N >= 8.
std::vector<u64> near_hamiltonian_path(u64 N);

/// 4k^2-1, ..., 3, 1, 16k^2-1, ..., 4k^2+1, 16k^2, 16k^2-2, ..., 2: a
/// Hamiltonian path of D({1..16k^2}).
std::vector<u64> hamiltonian_path_16k2(u64 k);

/// True when consecutive entries are adjacent and all entries distinct.
bool is_path_in(const DiophGraph& g, const std::vector<u64>& path);

enum class Verdict { yes, no, unknown };
std::string to_string(Verdict v);

struct HamiltonResult {
    Verdict verdict = Verdict::unknown;
    std::string method;       // "mod4", "exhaustive", "cap"
    std::vector<u64> witness; // the path or cycle when found
    std::uint64_t nodes = 0;
};

/// Mod-4 counting refutation when it applies, otherwise exhaustive
/// backtracking for graphs with at most `cap` vertices.
HamiltonResult hamiltonian_path_exists(const DiophGraph& g, std::size_t cap = 40);

struct HamiltonCycleReport {
    bool exists = false;
    bool structural_refutation = false;
    bool exhaustive_ran = false;
    bool exhaustive_exists = false;
    std::uint64_t nodes = 0;
};

/// Structural refutation on D({1..N}); also exhaustive search when
/// N <= exhaustive_cap. Throws InvariantViolation if the two disagree.
HamiltonCycleReport hamiltonian_cycle_exists(const DiophGraph& g, std::size_t exhaustive_cap = 16);

/// Exhaustive search only (no shortcut), for at most 64 vertices.
HamiltonResult hamiltonian_cycle_search(const DiophGraph& g);
HamiltonResult hamiltonian_path_search(const DiophGraph& g);

/// Every neighbor of a vertex = 2 (mod 4) is divisible by 4.
bool mod4_premise_holds(const DiophGraph& g);

std::string prune_trace_json(const PruneTrace& trace);
std::string omega_distribution_json(const OmegaDistribution& dist);

}  // namespace dioph
