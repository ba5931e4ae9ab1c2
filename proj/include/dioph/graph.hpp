// Diophantine graphs D(V): vertices are distinct positive integers, and a, b
// are adjacent exactly when a*b + shift is a perfect square.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dioph/numtheory.hpp"

namespace dioph {

/// Thrown when a proven structural property is contradicted by a computed object,
/// e.g. a 5-clique in a shift-1 graph. Always indicates a defect.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Index-based undirected simple graph with sorted adjacency lists.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(int n) : adj_(static_cast<std::size_t>(n)) {}

    int size() const { return static_cast<int>(adj_.size()); }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const;
    /// Subgraph induced by `keep`, renumbered in the given order.
    SimpleGraph induced(std::span<const int> keep) const;

    bool operator==(const SimpleGraph&) const = default;

private:
    std::vector<std::vector<int>> adj_;
};

bool edge_test(u64 a, u64 b, u64 shift = 1);
bool edge_test(const BigInt& a, const BigInt& b, u64 shift = 1);

/// Immutable D(V) with compressed sorted adjacency keyed by vertex value.
class DiophGraph {
public:
    DiophGraph() = default;
    /// `edges` must be (a, b) pairs with a < b, sorted lexicographically.
    DiophGraph(std::vector<u64> vertices, std::span<const std::pair<u64, u64>> edges, u64 shift);

    u64 shift() const { return shift_; }
    std::size_t size() const { return vertices_.size(); }
    std::size_t edge_count() const { return neighbors_.size() / 2; }
    const std::vector<u64>& vertices() const { return vertices_; }
    std::optional<std::size_t> index_of(u64 v) const;
    bool contains(u64 v) const { return index_of(v).has_value(); }

    std::span<const u64> neighbors_at(std::size_t i) const;
    /// Throws std::out_of_range for a missing vertex.
    std::span<const u64> neighbors(u64 v) const;
    std::size_t degree(u64 v) const { return neighbors(v).size(); }
    bool adjacent(u64 a, u64 b) const;
    std::vector<std::pair<u64, u64>> edges() const;

    SimpleGraph to_simple() const;

    bool operator==(const DiophGraph&) const = default;

private:
    std::vector<u64> vertices_;
    std::vector<std::size_t> offsets_{0};
    std::vector<u64> neighbors_;
    u64 shift_ = 1;
};

/// D({1..N}). Shift 1 enumerates, for each a, the r with r^2 = 1 (mod a) via
/// unit_roots_mod; other shifts test all pairs. `threads` = 0 picks the
/// hardware concurrency; output does not depend on it.
DiophGraph build_range(u64 N, u64 shift = 1, unsigned threads = 0);

/// Pairwise-tested induced graph. Rejects duplicates and zero.
DiophGraph build_set(std::span<const u64> values, u64 shift = 1);

/// Adjacency pattern of an arbitrary-precision witness list, by index.
SimpleGraph witness_graph(std::span<const BigInt> values, u64 shift = 1);

DiophGraph remove_vertex(const DiophGraph& g, u64 v);
DiophGraph induced(const DiophGraph& g, std::span<const u64> subset);

struct GraphStats {
    std::size_t n = 0;
    std::size_t e = 0;
    u64 density_num = 0;  // e/n in lowest terms
    u64 density_den = 1;
    std::map<std::size_t, std::size_t> degree_histogram;
    unsigned clique_number = 0;  // searched up to 5
    bool clique_capped = false;  // true when a 5-clique exists
    std::size_t components = 0;

    double density() const { return n == 0 ? 0.0 : static_cast<double>(e) / static_cast<double>(n); }
};

/// Exact statistics. A 5-clique in a shift-1 graph throws InvariantViolation.
GraphStats stats(const DiophGraph& g);

/// Size of a largest clique, or `cap` if one of that size exists.
unsigned clique_number(const SimpleGraph& g, unsigned cap);
std::size_t component_count(const SimpleGraph& g);

struct DegreeBoundReport {
    u64 N = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0;  // max deg(a) / (8 sqrt(N/a) 2^omega(a))
    u64 argmax = 0;
};

/// Checks deg(a) <= 8 sqrt(N/a) 2^omega(a) for every vertex of D({1..N}).
/// Throws InvariantViolation on any violation.
DegreeBoundReport degree_bound_check(const DiophGraph& g);

}  // namespace dioph
