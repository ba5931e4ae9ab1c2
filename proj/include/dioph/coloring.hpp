// k-colorability by candidate-set propagation ("sweeping") and branching.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dioph/graph.hpp"

namespace dioph {

using ColorMask = std::uint32_t;
inline constexpr unsigned kMaxColors = 32;

struct ColorStats {
    std::uint64_t nodes = 0;          // states created (including the root)
    std::uint64_t branch_points = 0;  // case distinctions with >1 candidate
    std::uint64_t peak_open = 0;      // max simultaneously open branches
    std::uint64_t propagations = 0;   // color removals performed by sweeps
    std::uint64_t dead_ends = 0;      // branches closed by an empty set
    double seconds = 0.0;
};

/// Per-vertex candidate colors. A singleton set means the vertex is decided.
class ColorState {
public:
    ColorState(const SimpleGraph& g, unsigned k);

    const SimpleGraph& graph() const { return *graph_; }
    unsigned k() const { return k_; }
    ColorMask candidates(int v) const { return sets_[static_cast<std::size_t>(v)]; }
    bool decided(int v) const;
    /// Color of a decided vertex, -1 otherwise.
    int color_of(int v) const;
    bool contradictory() const { return contradictory_; }

    /// Restricts v to `color`. Returns false (and marks the state
    /// contradictory) if the color is not a candidate.
    bool assign(int v, unsigned color);
    /// Removes `color` from v's candidates without propagating.
    void remove(int v, unsigned color);

private:
    friend bool sweep(ColorState&, ColorStats*, std::mt19937_64*);

    const SimpleGraph* graph_;
    unsigned k_;
    std::vector<ColorMask> sets_;
    std::vector<char> swept_;
    bool contradictory_ = false;
};

/// Propagates every decided vertex's color out of its neighbors' sets until
/// a fixpoint. Returns false on contradiction (some set empties). With `rng`,
/// the worklist is processed in random order.
bool sweep(ColorState& state, ColorStats* stats = nullptr, std::mt19937_64* rng = nullptr);

struct ColoringOptions {
    /// Permutation of 0..n-1; empty means index order.
    std::vector<int> branch_order;
    /// Vertex labels (e.g. integer values) used to recognize {1, 3, 8, 120}.
    std::vector<u64> labels;
    /// Restrict the first decisions to the given child index (0 = smallest
    /// candidate color). Lets an external harness split the search tree.
    std::vector<unsigned> branch_prefix;
};

struct ColoringResult {
    bool colorable = false;
    std::vector<int> colors;            // per vertex, when colorable
    std::vector<int> symmetry_clique;   // pre-colored 0..c-1
    ColorStats stats;
};

ColoringResult k_colorable(const SimpleGraph& g, unsigned k, const ColoringOptions& options = {});

/// `branch_order` lists vertex values; empty means ascending order.
ColoringResult k_colorable(const DiophGraph& g, unsigned k, const std::vector<u64>& branch_order = {});

/// Greedy maximal clique along `order`, or {1,3,8,120} when all present.
std::vector<int> symmetry_clique(const SimpleGraph& g, const std::vector<int>& order, const std::vector<u64>& labels);

unsigned chromatic_number(const SimpleGraph& g, const ColoringOptions& options = {});
unsigned chromatic_number(const DiophGraph& g, const std::vector<u64>& branch_order = {});

struct MinimalityReport {
    unsigned k = 0;
    std::size_t n = 0;
    /// Indices (or values, for the DiophGraph overload) whose deletion makes
    /// the graph k-colorable.
    std::vector<u64> critical;
    bool minimal = false;  // every single deletion is k-colorable
};

/// Requires g not k-colorable (throws std::invalid_argument otherwise).
MinimalityReport minimality_check(const SimpleGraph& g, unsigned k, const ColoringOptions& options = {},
                                  unsigned threads = 0);
MinimalityReport minimality_check(const DiophGraph& g, unsigned k, const std::vector<u64>& branch_order = {},
                                  unsigned threads = 0);

/// Colors even -> 0, 1 mod 4 -> 1, 3 mod 4 -> 2 and verifies every edge of a
/// shift-2 graph. Throws InvariantViolation on a monochromatic edge.
std::vector<int> mod4_coloring_shift2(const DiophGraph& g);

bool is_proper_coloring(const SimpleGraph& g, const std::vector<int>& colors);

/// "vertex color" lines.
void write_coloring(std::ostream& out, const std::vector<u64>& vertices, const std::vector<int>& colors);
/// Statistics document for a coloring run.
std::string coloring_stats_json(const ColoringResult& result, unsigned k);

}  // namespace dioph
