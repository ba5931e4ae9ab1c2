#include "dioph/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace dioph {

void SimpleGraph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("SimpleGraph: self-loops are not allowed");
    auto insert = [](std::vector<int>& list, int x) {
        auto it = std::lower_bound(list.begin(), list.end(), x);
        if (it == list.end() || *it != x) list.insert(it, x);
    };
    insert(adj_.at(static_cast<std::size_t>(u)), v);
    insert(adj_.at(static_cast<std::size_t>(v)), u);
}

bool SimpleGraph::has_edge(int u, int v) const {
    const auto& list = adj_.at(static_cast<std::size_t>(u));
    return std::binary_search(list.begin(), list.end(), v);
}

std::size_t SimpleGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& list : adj_) total += list.size();
    return total / 2;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < size(); ++u) {
        for (int v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

SimpleGraph SimpleGraph::induced(std::span<const int> keep) const {
    std::vector<int> position(adj_.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) position.at(static_cast<std::size_t>(keep[i])) = static_cast<int>(i);
    SimpleGraph out(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (int w : neighbors(keep[i])) {
            int j = position[static_cast<std::size_t>(w)];
            if (j >= 0) out.adj_[i].push_back(j);
        }
        std::sort(out.adj_[i].begin(), out.adj_[i].end());
    }
    return out;
}

bool edge_test(u64 a, u64 b, u64 shift) {
    if (a == b) throw std::invalid_argument("edge_test: vertices must be distinct");
    return is_square(static_cast<u128>(a) * b + shift);
}

bool edge_test(const BigInt& a, const BigInt& b, u64 shift) {
    if (a == b) throw std::invalid_argument("edge_test: vertices must be distinct");
    BigInt prod = a * b + shift;
    return is_square(prod);
}

DiophGraph::DiophGraph(std::vector<u64> vertices, std::span<const std::pair<u64, u64>> edges, u64 shift)
    : vertices_(std::move(vertices)), shift_(shift) {
    if (!std::is_sorted(vertices_.begin(), vertices_.end()) ||
        std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw std::invalid_argument("DiophGraph: vertices must be sorted and distinct");
    const std::size_t n = vertices_.size();
    std::vector<std::size_t> degree(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    idx.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        auto ia = index_of(a), ib = index_of(b);
        if (!ia || !ib || a >= b) throw std::invalid_argument("DiophGraph: bad edge");
        idx.emplace_back(*ia, *ib);
        ++degree[*ia];
        ++degree[*ib];
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
    neighbors_.assign(offsets_[n], 0);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Lexicographic edge order keeps every neighbor list sorted.
    for (const auto& [ia, ib] : idx) {
        neighbors_[fill[ia]++] = vertices_[ib];
        neighbors_[fill[ib]++] = vertices_[ia];
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
        auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
        if (!std::is_sorted(first, last)) std::sort(first, last);
        if (std::adjacent_find(first, last) != last) throw std::invalid_argument("DiophGraph: duplicate edge");
    }
}

std::optional<std::size_t> DiophGraph::index_of(u64 v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::span<const u64> DiophGraph::neighbors_at(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::span<const u64> DiophGraph::neighbors(u64 v) const {
    auto i = index_of(v);
    if (!i) throw std::out_of_range("DiophGraph: vertex " + std::to_string(v) + " not present");
    return neighbors_at(*i);
}

bool DiophGraph::adjacent(u64 a, u64 b) const {
    auto list = neighbors(a);
    return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::pair<u64, u64>> DiophGraph::edges() const {
    std::vector<std::pair<u64, u64>> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        for (u64 w : neighbors_at(i)) {
            if (w > vertices_[i]) out.emplace_back(vertices_[i], w);
        }
    }
    return out;
}

SimpleGraph DiophGraph::to_simple() const {
    SimpleGraph out(static_cast<int>(vertices_.size()));
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        for (u64 w : neighbors_at(i)) {
            std::size_t j = *index_of(w);
            if (j > i) out.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return out;
}

namespace {

using EdgeList = std::vector<std::pair<u64, u64>>;

// Runs `work(a, out)` for every a in [1, N] split into blocks across threads
// and concatenates the per-block outputs in block order.
template <typename Work>
EdgeList parallel_blocks(u64 N, unsigned threads, Work work) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const u64 block = std::max<u64>(1, std::min<u64>(4096, N / (threads * 8ull) + 1));
    const u64 nblocks = (N + block - 1) / block;
    std::vector<EdgeList> results(nblocks);
    std::atomic<u64> next{0};
    auto worker = [&] {
        for (u64 b = next++; b < nblocks; b = next++) {
            const u64 lo = 1 + b * block, hi = std::min(N, lo + block - 1);
            for (u64 a = lo; a <= hi; ++a) work(a, results[b]);
        }
    };
    if (threads == 1 || nblocks == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<u64>(threads, nblocks); ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    EdgeList edges;
    std::size_t total = 0;
    for (const auto& r : results) total += r.size();
    edges.reserve(total);
    for (auto& r : results) edges.insert(edges.end(), r.begin(), r.end());
    return edges;
}

}  // namespace

DiophGraph build_range(u64 N, u64 shift, unsigned threads) {
    if (N == 0) throw std::invalid_argument("build_range: N must be positive");
    if (shift == 0) throw std::invalid_argument("build_range: shift must be positive");
    std::vector<u64> vertices(N);
    std::iota(vertices.begin(), vertices.end(), u64{1});
    EdgeList edges;
    if (shift == 1) {
        edges = parallel_blocks(N, threads, [N](u64 a, EdgeList& out) {
            const UnitRootsModA roots = unit_roots_mod(a);
            const u64 r_max = isqrt(static_cast<u128>(a) * N + 1);
            // Only b > a is generated here, which needs r > a.
            for (u64 base = a; base <= r_max; base += a) {
                for (u64 root : roots.roots) {
                    const u64 r = base + root;
                    if (r > r_max) break;
                    if (r <= a || r < 2) continue;
                    const u64 b = static_cast<u64>((static_cast<u128>(r) * r - 1) / a);
                    if (b > a && b <= N) out.emplace_back(a, b);
                }
            }
        });
    } else {
        edges = parallel_blocks(N, threads, [N, shift](u64 a, EdgeList& out) {
            for (u64 b = a + 1; b <= N; ++b) {
                if (is_square(static_cast<u128>(a) * b + shift)) out.emplace_back(a, b);
            }
        });
    }
    return DiophGraph(std::move(vertices), edges, shift);
}

DiophGraph build_set(std::span<const u64> values, u64 shift) {
    if (shift == 0) throw std::invalid_argument("build_set: shift must be positive");
    std::vector<u64> vertices(values.begin(), values.end());
    std::sort(vertices.begin(), vertices.end());
    if (!vertices.empty() && vertices.front() == 0) throw std::invalid_argument("build_set: vertices must be positive");
    if (auto it = std::adjacent_find(vertices.begin(), vertices.end()); it != vertices.end())
        throw std::invalid_argument("build_set: duplicate vertex " + std::to_string(*it));
    EdgeList edges;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (edge_test(vertices[i], vertices[j], shift)) edges.emplace_back(vertices[i], vertices[j]);
        }
    }
    return DiophGraph(std::move(vertices), edges, shift);
}

SimpleGraph witness_graph(std::span<const BigInt> values, u64 shift) {
    SimpleGraph out(static_cast<int>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (sgn(values[i]) <= 0) throw std::invalid_argument("witness_graph: values must be positive");
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (values[i] == values[j]) throw std::invalid_argument("witness_graph: duplicate value");
            if (edge_test(values[i], values[j], shift)) out.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return out;
}

DiophGraph induced(const DiophGraph& g, std::span<const u64> subset) {
    std::vector<u64> keep(subset.begin(), subset.end());
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw std::invalid_argument("induced: duplicate vertex in subset");
    EdgeList edges;
    for (u64 v : keep) {
        if (!g.contains(v)) throw std::out_of_range("induced: vertex " + std::to_string(v) + " not present");
        for (u64 w : g.neighbors(v)) {
            if (w > v && std::binary_search(keep.begin(), keep.end(), w)) edges.emplace_back(v, w);
        }
    }
    return DiophGraph(std::move(keep), edges, g.shift());
}

DiophGraph remove_vertex(const DiophGraph& g, u64 v) {
    if (!g.contains(v)) throw std::out_of_range("remove_vertex: vertex " + std::to_string(v) + " not present");
    std::vector<u64> keep;
    keep.reserve(g.size() - 1);
    for (u64 w : g.vertices()) {
        if (w != v) keep.push_back(w);
    }
    return induced(g, keep);
}

namespace {

bool extend_clique(const SimpleGraph& g, const std::vector<int>& candidates, unsigned size, unsigned target) {
    if (size >= target) return true;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const int v = candidates[i];
        std::vector<int> next;
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (g.has_edge(v, candidates[j])) next.push_back(candidates[j]);
        }
        if (size + 1 + next.size() < target) continue;
        if (extend_clique(g, next, size + 1, target)) return true;
    }
    return false;
}

}  // namespace

unsigned clique_number(const SimpleGraph& g, unsigned cap) {
    if (g.size() == 0) return 0;
    unsigned best = 1;
    for (unsigned target = 2; target <= cap; ++target) {
        bool found = false;
        for (int v = 0; v < g.size() && !found; ++v) {
            std::vector<int> higher;
            for (int w : g.neighbors(v)) {
                if (w > v) higher.push_back(w);
            }
            if (higher.size() + 1 < target) continue;
            found = extend_clique(g, higher, 1, target);
        }
        if (!found) break;
        best = target;
    }
    return best;
}

std::size_t component_count(const SimpleGraph& g) {
    std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
    std::size_t count = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.size(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++count;
        seen[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return count;
}

GraphStats stats(const DiophGraph& g) {
    GraphStats s;
    s.n = g.size();
    s.e = g.edge_count();
    if (s.n > 0) {
        u64 d = gcd(s.e, s.n);
        s.density_num = s.e / d;
        s.density_den = s.n / d;
    }
    for (std::size_t i = 0; i < g.size(); ++i) ++s.degree_histogram[g.neighbors_at(i).size()];
    const SimpleGraph simple = g.to_simple();
    s.clique_number = clique_number(simple, 5);
    s.clique_capped = s.clique_number >= 5;
    s.components = component_count(simple);
    if (g.shift() == 1) {
        if (s.clique_capped) throw InvariantViolation("stats: found a 5-clique in a shift-1 Diophantine graph");
        if (8 * static_cast<u128>(s.e) > 3 * static_cast<u128>(s.n) * s.n)
            throw InvariantViolation("stats: edge count exceeds 3n^2/8");
    }
    return s;
}

DegreeBoundReport degree_bound_check(const DiophGraph& g) {
    DegreeBoundReport report;
    report.N = g.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.vertices()[i] != i + 1) throw std::invalid_argument("degree_bound_check: graph must be D({1..N})");
    }
    if (g.shift() != 1) throw std::invalid_argument("degree_bound_check: requires shift 1");
    const u64 N = report.N;
    std::ostringstream failures;
    for (u64 a = 1; a <= N; ++a) {
        const u64 deg = g.neighbors_at(a - 1).size();
        const unsigned w = factorize(a).omega();
        // deg <= 8 sqrt(N/a) 2^w  <=>  deg^2 a <= 64 N 4^w
        const u128 lhs = static_cast<u128>(deg) * deg * a;
        const u128 rhs = static_cast<u128>(64) * N << (2 * w);
        const double bound = 8.0 * std::sqrt(static_cast<double>(N) / static_cast<double>(a)) * std::ldexp(1.0, static_cast<int>(w));
        const double ratio = static_cast<double>(deg) / bound;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.argmax = a;
        }
        if (lhs > rhs) {
            ++report.violations;
            failures << " a=" << a << " deg=" << deg;
        }
    }
    if (report.violations > 0) throw InvariantViolation("degree bound violated:" + failures.str());
    return report;
}

}  // namespace dioph
