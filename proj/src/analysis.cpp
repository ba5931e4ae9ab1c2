#include "dioph/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

namespace dioph {

std::pair<DiophGraph, PruneTrace> prune_low_degree(const DiophGraph& g) {
    PruneTrace trace;
    trace.initial = stats(g);
    const std::size_t total = g.size();
    std::vector<std::size_t> degree(total);
    std::vector<char> alive(total, 1);
    std::set<std::pair<std::size_t, u64>> queue;
    for (std::size_t i = 0; i < total; ++i) {
        degree[i] = g.neighbors_at(i).size();
        queue.emplace(degree[i], g.vertices()[i]);
    }
    std::size_t n = total, e = g.edge_count();
    while (!queue.empty()) {
        const auto [deg, v] = *queue.begin();
        // deg < e/n
        if (static_cast<u128>(deg) * n >= e) break;
        queue.erase(queue.begin());
        PruneStep step{v, deg, n, e, static_cast<double>(e) / static_cast<double>(n), 0.0};
        const std::size_t i = *g.index_of(v);
        alive[i] = 0;
        for (u64 w : g.neighbors_at(i)) {
            const std::size_t j = *g.index_of(w);
            if (!alive[j]) continue;
            queue.erase({degree[j], w});
            --degree[j];
            queue.emplace(degree[j], w);
        }
        e -= deg;
        --n;
        step.density_after = n == 0 ? 0.0 : static_cast<double>(e) / static_cast<double>(n);
        // (e - deg)/(n - 1) > e/n exactly when deg < e/n.
        if (n == 0 || static_cast<u128>(e) * step.n_before <= static_cast<u128>(step.e_before) * n)
            throw InvariantViolation("prune_low_degree: density did not strictly increase");
        trace.steps.push_back(step);
    }
    std::vector<u64> keep;
    for (std::size_t i = 0; i < total; ++i) {
        if (alive[i]) keep.push_back(g.vertices()[i]);
    }
    DiophGraph pruned = induced(g, keep);
    trace.final = stats(pruned);
    return {std::move(pruned), std::move(trace)};
}

double heuristic_score(u64 a) {
    return static_cast<double>(count_unit_roots(a)) / std::sqrt(static_cast<double>(a));
}

std::vector<u64> heuristic_top(u64 N, std::size_t count) {
    if (N == 0) throw std::invalid_argument("heuristic_top: N must be positive");
    if (count > N) throw std::invalid_argument("heuristic_top: count exceeds N");
    std::vector<u64> s(N + 1, 0);
    for (u64 a = 1; a <= N; ++a) s[a] = count_unit_roots(a);
    std::vector<u64> values(N);
    std::iota(values.begin(), values.end(), u64{1});
    // S(a)/sqrt(a) > S(b)/sqrt(b)  <=>  S(a)^2 b > S(b)^2 a
    auto better = [&s](u64 a, u64 b) {
        const u128 lhs = static_cast<u128>(s[a] * s[a]) * b;
        const u128 rhs = static_cast<u128>(s[b] * s[b]) * a;
        return lhs != rhs ? lhs > rhs : a < b;
    };
    std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(count), values.end(), better);
    values.resize(count);
    return values;
}

OmegaDistribution omega_distribution(u64 x, double C) {
    if (x == 0) throw std::invalid_argument("omega_distribution: x must be positive");
    if (!(C > 1.0)) throw std::invalid_argument("omega_distribution: C must exceed 1");
    std::vector<std::uint8_t> omega(x + 1, 0);
    for (u64 p = 2; p <= x; ++p) {
        if (omega[p] != 0) continue;  // composite: already hit by a smaller prime
        for (u64 m = p; m <= x; m += p) ++omega[m];
    }
    OmegaDistribution d;
    d.x = x;
    d.C = C;
    for (u64 a = 1; a <= x; ++a) {
        if (omega[a] >= d.counts.size()) d.counts.resize(omega[a] + 1u, 0);
        ++d.counts[omega[a]];
    }
    const double lx = std::log(static_cast<double>(x));
    d.threshold = x >= 3 ? C * std::log(lx) : 0.0;
    for (std::size_t k = 0; k < d.counts.size(); ++k) {
        if (static_cast<double>(k) > d.threshold) d.tail += d.counts[k];
    }
    d.bound = static_cast<double>(x) * std::pow(lx, C - C * std::log(C) - 1.0);
    d.tail_within_bound = static_cast<double>(d.tail) < d.bound;
    return d;
}

std::vector<u64> near_hamiltonian_path(u64 N) {
    if (N < 8) throw std::invalid_argument("near_hamiltonian_path: N must be at least 8");
    std::vector<u64> path;
    for (u64 odd = (N % 2 == 1 ? N : N - 1);; odd -= 2) {
        path.push_back(odd);
        if (odd == 1) break;
    }
    for (u64 v : {8, 6, 4, 2}) path.push_back(v);
    for (u64 even = 12; even <= N; even += 2) path.push_back(even);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!edge_test(path[i], path[i + 1]))
            throw InvariantViolation("near_hamiltonian_path: consecutive vertices are not adjacent");
    }
    return path;
}

std::vector<u64> hamiltonian_path_16k2(u64 k) {
    if (k == 0) throw std::invalid_argument("hamiltonian_path_16k2: k must be positive");
    const u64 small = 4 * k * k, big = 16 * k * k;
    std::vector<u64> path;
    for (u64 v = small - 1;; v -= 2) {
        path.push_back(v);
        if (v == 1) break;
    }
    for (u64 v = big - 1; v >= small + 1; v -= 2) path.push_back(v);
    for (u64 v = big; v >= 2; v -= 2) path.push_back(v);
    return path;
}

bool is_path_in(const DiophGraph& g, const std::vector<u64>& path) {
    std::set<u64> seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!g.contains(path[i]) || !seen.insert(path[i]).second) return false;
        if (i > 0 && !g.adjacent(path[i - 1], path[i])) return false;
    }
    return true;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::unknown: return "unknown";
    }
    return "?";
}

bool mod4_premise_holds(const DiophGraph& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.vertices()[i] % 4 != 2) continue;
        for (u64 w : g.neighbors_at(i)) {
            if (w % 4 != 0) return false;
        }
    }
    return true;
}

namespace {

struct ClassCounts {
    std::size_t two = 0, zero = 0, other = 0;
};

ClassCounts mod4_classes(const DiophGraph& g) {
    ClassCounts c;
    for (u64 v : g.vertices()) {
        if (v % 4 == 2) {
            ++c.two;
        } else if (v % 4 == 0) {
            ++c.zero;
        } else {
            ++c.other;
        }
    }
    return c;
}

using Mask = std::uint64_t;

class HamiltonSearch {
public:
    HamiltonSearch(const DiophGraph& g, bool cycle) : g_(g), cycle_(cycle), n_(static_cast<int>(g.size())) {
        if (n_ > 64) throw std::invalid_argument("Hamiltonian search supports at most 64 vertices");
        adj_.assign(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < n_; ++i) {
            for (u64 w : g.neighbors_at(static_cast<std::size_t>(i))) adj_[static_cast<std::size_t>(i)] |= Mask{1} << *g.index_of(w);
        }
        all_ = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    }

    bool run() {
        if (n_ == 0) return !cycle_;
        if (n_ == 1) {
            path_ = {0};
            return !cycle_;
        }
        if (cycle_) {
            if (n_ < 3) return false;
            for (int v = 0; v < n_; ++v) {
                if (std::popcount(adj_[static_cast<std::size_t>(v)]) < 2) return false;
            }
            path_ = {0};
            return extend(0, Mask{1});
        }
        std::vector<int> starts;
        int low = 0;
        for (int v = 0; v < n_; ++v) {
            const int deg = std::popcount(adj_[static_cast<std::size_t>(v)]);
            if (deg == 0) return false;
            if (deg == 1) {
                ++low;
                starts.push_back(v);
            }
        }
        if (low > 2) return false;
        // A degree-1 vertex must be an endpoint; paths can be reversed.
        if (!starts.empty()) starts.resize(1);
        if (starts.empty()) {
            starts.resize(static_cast<std::size_t>(n_));
            std::iota(starts.begin(), starts.end(), 0);
        }
        for (int s : starts) {
            path_ = {s};
            if (extend(s, Mask{1} << s)) return true;
        }
        return false;
    }

    std::vector<u64> witness() const {
        std::vector<u64> out;
        for (int i : path_) out.push_back(g_.vertices()[static_cast<std::size_t>(i)]);
        return out;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    Mask reach(int from, Mask allowed) const {
        Mask seen = Mask{1} << from, frontier = seen;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= adj_[static_cast<std::size_t>(std::countr_zero(f))];
            next &= allowed & ~seen;
            seen |= next;
            frontier = next;
        }
        return seen;
    }

    bool extend(int v, Mask visited) {
        ++nodes_;
        const Mask remaining = all_ & ~visited;
        if (remaining == 0) return !cycle_ || (adj_[static_cast<std::size_t>(v)] & Mask{1});
        // Unvisited vertices must stay reachable from the current end.
        if ((reach(v, remaining) & remaining) != remaining) return false;
        // Each unvisited vertex needs two free neighbors unless it is the
        // last one; for cycles the start counts as free.
        const Mask open = remaining | (Mask{1} << v) | (cycle_ ? Mask{1} : Mask{0});
        int forced_end = 0;
        for (Mask r = remaining; r; r &= r - 1) {
            const int u = std::countr_zero(r);
            const int avail = std::popcount(adj_[static_cast<std::size_t>(u)] & open);
            if (avail == 0) return false;
            if (avail == 1 && ++forced_end > (cycle_ ? 0 : 1)) return false;
        }
        std::vector<std::pair<int, int>> moves;
        for (Mask c = adj_[static_cast<std::size_t>(v)] & remaining; c; c &= c - 1) {
            const int u = std::countr_zero(c);
            moves.emplace_back(std::popcount(adj_[static_cast<std::size_t>(u)] & remaining), u);
        }
        std::sort(moves.begin(), moves.end());
        for (const auto& [_, u] : moves) {
            path_.push_back(u);
            if (extend(u, visited | (Mask{1} << u))) return true;
            path_.pop_back();
        }
        return false;
    }

    const DiophGraph& g_;
    bool cycle_;
    int n_;
    std::vector<Mask> adj_;
    Mask all_ = 0;
    std::vector<int> path_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

HamiltonResult hamiltonian_path_search(const DiophGraph& g) {
    HamiltonSearch search(g, false);
    HamiltonResult r;
    r.method = "exhaustive";
    r.verdict = search.run() ? Verdict::yes : Verdict::no;
    if (r.verdict == Verdict::yes) r.witness = search.witness();
    r.nodes = search.nodes();
    return r;
}

HamiltonResult hamiltonian_cycle_search(const DiophGraph& g) {
    HamiltonSearch search(g, true);
    HamiltonResult r;
    r.method = "exhaustive";
    r.verdict = search.run() ? Verdict::yes : Verdict::no;
    if (r.verdict == Verdict::yes) r.witness = search.witness();
    r.nodes = search.nodes();
    return r;
}

HamiltonResult hamiltonian_path_exists(const DiophGraph& g, std::size_t cap) {
    if (mod4_premise_holds(g)) {
        // Class-2 vertices only touch class-0 vertices, so along a path
        // 2*c2 - 2 <= 2*c0; equality forces strict alternation.
        const ClassCounts c = mod4_classes(g);
        if (c.two > c.zero + 1 || (c.two == c.zero + 1 && c.other > 0 && c.two > 0)) {
            return {Verdict::no, "mod4", {}, 0};
        }
    }
    if (g.size() > cap || g.size() > 64) return {Verdict::unknown, "cap", {}, 0};
    return hamiltonian_path_search(g);
}

HamiltonCycleReport hamiltonian_cycle_exists(const DiophGraph& g, std::size_t exhaustive_cap) {
    HamiltonCycleReport report;
    if (g.size() < 3) throw std::invalid_argument("hamiltonian_cycle_exists: need at least 3 vertices");
    if (mod4_premise_holds(g)) {
        const ClassCounts c = mod4_classes(g);
        report.structural_refutation = c.two > c.zero || (c.two == c.zero && c.two > 0 && c.other > 0);
    }
    if (g.size() <= exhaustive_cap && g.size() <= 64) {
        const HamiltonResult r = hamiltonian_cycle_search(g);
        report.exhaustive_ran = true;
        report.exhaustive_exists = r.verdict == Verdict::yes;
        report.nodes = r.nodes;
        if (report.exhaustive_exists && report.structural_refutation)
            throw InvariantViolation("hamiltonian_cycle_exists: exhaustive search contradicts the mod-4 argument");
    }
    report.exists = report.exhaustive_ran ? report.exhaustive_exists : false;
    if (!report.exhaustive_ran && !report.structural_refutation)
        throw std::invalid_argument("hamiltonian_cycle_exists: no refutation applies and the graph is too large to search");
    return report;
}

std::string prune_trace_json(const PruneTrace& trace) {
    auto stats_doc = [](const GraphStats& s) {
        nlohmann::ordered_json d;
        d["n"] = s.n;
        d["e"] = s.e;
        d["density"] = {s.density_num, s.density_den};
        d["clique_number"] = s.clique_number;
        d["components"] = s.components;
        return d;
    };
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["initial"] = stats_doc(trace.initial);
    doc["final"] = stats_doc(trace.final);
    auto steps = nlohmann::ordered_json::array();
    for (const auto& s : trace.steps) {
        nlohmann::ordered_json step;
        step["vertex"] = s.vertex;
        step["degree"] = s.degree;
        step["n_before"] = s.n_before;
        step["e_before"] = s.e_before;
        steps.push_back(std::move(step));
    }
    doc["steps"] = std::move(steps);
    return doc.dump() + "\n";
}

std::string omega_distribution_json(const OmegaDistribution& d) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["x"] = d.x;
    doc["counts"] = d.counts;
    doc["C"] = d.C;
    doc["threshold"] = d.threshold;
    doc["tail"] = d.tail;
    doc["bound"] = d.bound;
    doc["tail_within_bound"] = d.tail_within_bound;
    return doc.dump() + "\n";
}

}  // namespace dioph
