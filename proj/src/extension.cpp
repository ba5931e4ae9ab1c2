#include "dioph/extension.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dioph {

std::string to_string(ExtensionMode mode) {
    switch (mode) {
        case ExtensionMode::isolated: return "isolated";
        case ExtensionMode::pendant: return "pendant";
        case ExtensionMode::double_link: return "double";
    }
    return "?";
}

std::vector<BigInt> to_big(std::span<const u64> values) {
    std::vector<BigInt> out;
    out.reserve(values.size());
    for (u64 v : values) out.emplace_back(static_cast<unsigned long>(v));
    return out;
}

namespace {

u64 next_prime(u64 p) {
    do {
        ++p;
    } while (!is_prime(p));
    return p;
}

bool divides(u64 p, const BigInt& v) { return mpz_divisible_ui_p(v.get_mpz_t(), p) != 0; }

u64 to_u64(const BigInt& v, const char* what) {
    if (sgn(v) <= 0 || !v.fits_ulong_p()) throw std::invalid_argument(std::string(what) + " must be a positive 64-bit value");
    return v.get_ui();
}

void check_witness(std::span<const BigInt> V) {
    std::set<BigInt> seen;
    for (const auto& v : V) {
        if (sgn(v) <= 0) throw std::invalid_argument("extension: witness values must be positive");
        if (!seen.insert(v).second) throw std::invalid_argument("extension: witness values must be distinct");
    }
}

// Smallest prime dividing no element of V and not in `avoid`.
u64 auxiliary_prime(std::span<const BigInt> V, const std::set<u64>& avoid) {
    for (u64 q = 2;; q = next_prime(q)) {
        if (avoid.count(q)) continue;
        if (std::none_of(V.begin(), V.end(), [q](const BigInt& v) { return divides(q, v); })) return q;
    }
}

bool satisfies(std::span<const BigInt> V, const BigInt& w, std::span<const std::size_t> linked) {
    if (sgn(w) <= 0) return false;
    for (std::size_t l = 0; l < V.size(); ++l) {
        if (V[l] == w) return false;
        const bool want = std::find(linked.begin(), linked.end(), l) != linked.end();
        BigInt value = V[l] * w + 1;
        if (is_square(value) != want) return false;
        if (same_square_free_part(V[l], w)) return false;
    }
    return true;
}

class Collector {
public:
    Collector(std::span<const BigInt> V, std::vector<std::size_t> linked, std::size_t count, bool fresh_among_outputs,
              const ExtensionBudget& budget, ExtensionReport& report)
        : V_(V), linked_(std::move(linked)), count_(count), fresh_(fresh_among_outputs), budget_(budget), report_(report) {}

    bool done() const { return report_.values.size() >= count_; }

    void offer(const BigInt& w) {
        ++report_.candidates_examined;
        if (mpz_sizeinbase(w.get_mpz_t(), 2) > budget_.max_bits)
            throw BudgetExceeded("extension: candidates exceed the size budget");
        if (report_.candidates_examined > budget_.max_candidates)
            throw BudgetExceeded("extension: candidate budget exhausted");
        if (!satisfies(V_, w, linked_)) return;
        for (const auto& prev : report_.values) {
            if (prev == w) return;
            if (fresh_ && same_square_free_part(prev, w)) return;
        }
        report_.values.push_back(w);
    }

private:
    std::span<const BigInt> V_;
    std::vector<std::size_t> linked_;
    std::size_t count_;
    bool fresh_;
    const ExtensionBudget& budget_;
    ExtensionReport& report_;
};

}  // namespace

bool verify_extension(std::span<const BigInt> V, const BigInt& w, std::span<const std::size_t> linked) {
    return satisfies(V, w, linked);
}

ExtensionReport extend_isolated(std::span<const BigInt> V, std::size_t count, const ExtensionBudget& budget) {
    check_witness(V);
    ExtensionReport report;
    report.mode = ExtensionMode::isolated;
    std::set<u64> used;
    // v_i x + 1 = p_i (mod p_i^2), so p_i exactly divides v_i x + 1.
    BigInt residue = 0, modulus = 1;
    for (const auto& v : V) {
        u64 p = 2;
        while (used.count(p) || divides(p, v)) p = next_prime(p);
        used.insert(p);
        report.primes.push_back(p);
        const BigInt p2 = BigInt(static_cast<unsigned long>(p)) * p;
        BigInt inv;
        BigInt v_mod = v % p2;
        mpz_invert(inv.get_mpz_t(), v_mod.get_mpz_t(), p2.get_mpz_t());
        BigInt r = (BigInt(static_cast<unsigned long>(p - 1)) * inv) % p2;
        residue = crt_pair(residue, modulus, r, p2);
        modulus *= p2;
    }
    // x = q (mod q^2): q exactly divides w, so q divides its square-free part.
    const u64 q = auxiliary_prime(V, used);
    report.aux_prime = q;
    const BigInt q_big(static_cast<unsigned long>(q));
    residue = crt_pair(residue, modulus, q_big, q_big * q_big);
    modulus *= q_big * q_big;
    report.modulus = modulus;
    report.residue = residue;

    Collector collect(V, {}, count, true, budget, report);
    for (BigInt x = residue; !collect.done(); x += modulus) {
        if (sgn(x) > 0) collect.offer(x);
    }
    return report;
}

ExtensionReport extend_pendant(std::span<const BigInt> V, std::size_t i, std::size_t count, const ExtensionBudget& budget) {
    check_witness(V);
    if (i >= V.size()) throw std::out_of_range("extend_pendant: index out of range");
    ExtensionReport report;
    report.mode = ExtensionMode::pendant;
    report.linked = {i};
    const u64 vi = to_u64(V[i], "extend_pendant: V[i]");
    const u64 q = auxiliary_prime(V, {});
    report.aux_prime = q;
    if (static_cast<u128>(q) * vi > (u128{1} << 62)) throw BudgetExceeded("extend_pendant: q v_i too large");
    report.pell_d = q * vi;

    // z0^2 - q v_i y0^2 = 1 with y0 = q^t y1, q not dividing y1.
    const PellUnit unit = fundamental_unit(report.pell_d, budget.max_pell_steps);
    const unsigned t = valuation(unit.nu, q);
    BigInt q_pow;
    mpz_ui_pow_ui(q_pow.get_mpz_t(), q, 2 * t + 2);
    BigInt z0 = unit.mu % q_pow;
    const BigInt vi_big(static_cast<unsigned long>(vi));
    report.residue = crt_pair(BigInt(1) % vi_big, vi_big, z0, q_pow);
    report.modulus = q_pow * vi_big;

    Collector collect(V, {i}, count, false, budget, report);
    for (BigInt x = report.residue; !collect.done(); x += report.modulus) {
        if (x <= 1) continue;
        BigInt w = (x * x - 1) / vi_big;
        collect.offer(w);
    }
    return report;
}

ExtensionReport extend_double(std::span<const BigInt> V, std::size_t i, std::size_t j, std::size_t count,
                              const ExtensionBudget& budget) {
    check_witness(V);
    if (i >= V.size() || j >= V.size()) throw std::out_of_range("extend_double: index out of range");
    if (i == j) throw std::invalid_argument("extend_double: indices must differ");
    if (same_square_free_part(V[i], V[j]))
        throw std::invalid_argument("extend_double: prescribed vertices share a square-free part");
    ExtensionReport report;
    report.mode = ExtensionMode::double_link;
    report.linked = {std::min(i, j), std::max(i, j)};

    u64 vi = to_u64(V[i], "extend_double: V[i]");
    u64 vj = to_u64(V[j], "extend_double: V[j]");
    const u64 d = gcd(vi, vj);
    const u128 D = static_cast<u128>(vi / d) * (vj / d);
    if (D > (u128{1} << 62)) throw BudgetExceeded("extend_double: v_i' v_j' exceeds 62 bits");
    report.pell_d = static_cast<u64>(D);
    const PellUnit unit = fundamental_unit(report.pell_d, budget.max_pell_steps);

    // Either vertex can play the role of v_i; take the one whose unit order
    // (and hence orbit step) is smaller.
    u64 t_i = unit_order_mod(unit, vi);
    const u64 t_j = unit_order_mod(unit, vj);
    report.oriented_i = i;
    if (t_j < t_i) {
        std::swap(vi, vj);
        t_i = t_j;
        report.oriented_i = j;
    }
    report.unit_order = t_i;
    const u64 vi_red = vi / d;

    // X_t + Y_t sqrt(D) = (v_i' + sqrt D) eps^t; for t0 | t, v_i | Y_t - 1.
    const PellPair step = pell_power(unit, t_i);
    PellPair current{BigInt(static_cast<unsigned long>(vi_red)), 1};
    const BigInt vi_big(static_cast<unsigned long>(vi));
    const BigInt vj_big(static_cast<unsigned long>(vj));
    Collector collect(V, report.linked, count, true, budget, report);
    while (!collect.done()) {
        current = pell_multiply(current, step, report.pell_d);
        BigInt numerator = current.y * current.y - 1;
        if (mpz_divisible_p(numerator.get_mpz_t(), vi_big.get_mpz_t()) == 0)
            throw std::logic_error("extend_double: orbit element is not congruent to the seed");
        BigInt w = numerator / vi_big;
        collect.offer(w);
    }
    return report;
}

std::vector<u64> common_neighbors_equal_sqfree(u64 a, u64 b) {
    if (a == 0 || b == 0 || a == b) throw std::invalid_argument("common_neighbors_equal_sqfree: need distinct positive a, b");
    const u64 g = square_free_part(a);
    if (g != square_free_part(b))
        throw std::invalid_argument("common_neighbors_equal_sqfree: a and b have different square-free parts");
    const u64 m = isqrt(a / g), n = isqrt(b / g);
    const u64 h = gcd(m, n);
    // a alpha^2 = b beta^2; with P = alpha r, Q = beta s: P^2 - Q^2 = alpha^2 - beta^2.
    const u64 alpha = n / h, beta = m / h;
    const bool positive = alpha > beta;
    const u64 delta = positive ? alpha * alpha - beta * beta : beta * beta - alpha * alpha;
    std::set<u64> found;
    std::vector<u64> divisors{1};
    const Factorization fac = factorize(delta);
    for (const auto& [p, e] : fac.factors()) {
        const std::size_t existing = divisors.size();
        u64 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t idx = 0; idx < existing; ++idx) divisors.push_back(divisors[idx] * pk);
        }
    }
    for (u64 d1 : divisors) {
        const u64 d2 = delta / d1;
        if (d1 > d2 || (d1 + d2) % 2 != 0) continue;
        // Larger square root minus smaller = d1, sum = d2.
        const u64 big = (d1 + d2) / 2, small = (d2 - d1) / 2;
        const u64 P = positive ? big : small;
        const u64 Q = positive ? small : big;
        if (P % alpha != 0 || Q % beta != 0) continue;
        const u64 r = P / alpha, s = Q / beta;
        const u128 r2 = static_cast<u128>(r) * r;
        if (r2 < 1 || (r2 - 1) % a != 0) continue;
        const u128 w = (r2 - 1) / a;
        if (w == 0 || static_cast<u128>(b) * w + 1 != static_cast<u128>(s) * s) continue;
        found.insert(static_cast<u64>(w));
    }
    return {found.begin(), found.end()};
}

std::vector<u64> common_neighbors_bounded(std::span<const u64> S, u64 bound) {
    if (S.empty()) throw std::invalid_argument("common_neighbors_bounded: empty set");
    if (bound == 0) throw std::invalid_argument("common_neighbors_bounded: bound must be positive");
    if (std::find(S.begin(), S.end(), u64{0}) != S.end())
        throw std::invalid_argument("common_neighbors_bounded: values must be positive");
    const u64 m = *std::min_element(S.begin(), S.end());
    const UnitRootsModA roots = unit_roots_mod(m);
    const u64 r_max = isqrt(static_cast<u128>(m) * bound + 1);
    std::vector<u64> out;
    for (u64 base = 0; base <= r_max; base += m) {
        for (u64 root : roots.roots) {
            const u64 r = base + root;
            if (r > r_max) break;
            if (r < 2) continue;
            const u64 w = static_cast<u64>((static_cast<u128>(r) * r - 1) / m);
            if (w > bound || std::find(S.begin(), S.end(), w) != S.end()) continue;
            if (std::all_of(S.begin(), S.end(), [w](u64 s) { return is_square(static_cast<u128>(s) * w + 1); }))
                out.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RegularTriple RegularTriple::make(const BigInt& a, const BigInt& b, const BigInt& c) {
    if (sgn(a) <= 0 || sgn(b) <= 0 || sgn(c) <= 0 || a == b || a == c || b == c)
        throw std::invalid_argument("RegularTriple: need three distinct positive integers");
    RegularTriple t{a, b, c, 0, 0, 0};
    auto root = [](const BigInt& x) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
        if (r * r != x) throw std::invalid_argument("RegularTriple: not a Diophantine triple");
        return r;
    };
    t.r = root(a * b + 1);
    t.s = root(a * c + 1);
    t.t = root(b * c + 1);
    return t;
}

std::pair<BigInt, BigInt> regular_extensions(const RegularTriple& x) {
    if (x.a * x.b + 1 != x.r * x.r || x.a * x.c + 1 != x.s * x.s || x.b * x.c + 1 != x.t * x.t)
        throw std::invalid_argument("regular_extensions: triple identities do not hold");
    const BigInt base = x.a + x.b + x.c + 2 * x.a * x.b * x.c;
    const BigInt twist = 2 * x.r * x.s * x.t;
    std::pair<BigInt, BigInt> d{base - twist, base + twist};
    for (const BigInt* dv : {&d.first, &d.second}) {
        if (sgn(*dv) == 0 || *dv == x.a || *dv == x.b || *dv == x.c) continue;
        for (const BigInt* e : {&x.a, &x.b, &x.c}) {
            BigInt value = *dv * *e + 1;
            if (!is_square(value)) throw InvariantViolation("regular_extensions: d does not extend the triple");
        }
    }
    return d;
}

FamilyMember family_k5_minus_edge(u64 k) {
    if (k < 2) throw std::invalid_argument("family_k5_minus_edge: k must be >= 2");
    const BigInt K(static_cast<unsigned long>(k));
    const BigInt k2 = K * K, k3 = k2 * K, k4 = k3 * K, k5 = k4 * K;
    FamilyMember out;
    out.values = {K - 1, K + 1, 4 * K, 16 * k3 - 4 * K, 256 * k5 + 256 * k4 - 32 * k3 - 64 * k2 + K + 3};
    const SimpleGraph g = witness_graph(out.values);
    std::vector<std::pair<int, int>> missing;
    for (int u = 0; u < 5; ++u) {
        for (int v = u + 1; v < 5; ++v) {
            if (!g.has_edge(u, v)) missing.emplace_back(u, v);
        }
    }
    if (missing.size() != 1) throw InvariantViolation("family_k5_minus_edge: not K5 minus one edge");
    for (int u = 0; u < 4; ++u) {
        for (int v = u + 1; v < 4; ++v) {
            if (!g.has_edge(u, v)) throw InvariantViolation("family_k5_minus_edge: quadruple is not a K4");
        }
    }
    out.missing_edge = missing.front();
    return out;
}

namespace {

struct SearchContext {
    const SimpleGraph& target;
    const DiophGraph& pool;
    const std::vector<u64>& sqfree;  // indexed by value
    std::vector<int> order;
    std::vector<u64> value;          // per target vertex, 0 = unplaced
    std::uint64_t nodes = 0;
    std::uint64_t max_nodes;
    bool distinct_sqfree;
};

bool place(SearchContext& ctx, std::size_t depth) {
    if (depth == ctx.order.size()) return true;
    if (++ctx.nodes > ctx.max_nodes) return false;
    const int v = ctx.order[depth];
    int anchor = -1;
    for (int w : ctx.target.neighbors(v)) {
        if (ctx.value[static_cast<std::size_t>(w)] != 0) {
            anchor = w;
            break;
        }
    }
    auto consistent = [&](u64 x) {
        for (std::size_t d = 0; d < depth; ++d) {
            const int u = ctx.order[d];
            const u64 y = ctx.value[static_cast<std::size_t>(u)];
            if (y == x) return false;
            if (ctx.pool.adjacent(x, y) != ctx.target.has_edge(u, v)) return false;
            if (ctx.distinct_sqfree && ctx.sqfree[x] == ctx.sqfree[y]) return false;
        }
        return true;
    };
    auto attempt = [&](u64 x) {
        if (!consistent(x)) return false;
        ctx.value[static_cast<std::size_t>(v)] = x;
        if (place(ctx, depth + 1)) return true;
        ctx.value[static_cast<std::size_t>(v)] = 0;
        return false;
    };
    if (anchor >= 0) {
        for (u64 x : ctx.pool.neighbors(ctx.value[static_cast<std::size_t>(anchor)])) {
            if (attempt(x)) return true;
            if (ctx.nodes > ctx.max_nodes) return false;
        }
    } else {
        for (u64 x = 1; x <= ctx.pool.size(); ++x) {
            if (attempt(x)) return true;
            if (ctx.nodes > ctx.max_nodes) return false;
        }
    }
    return false;
}

}  // namespace

std::vector<u64> search_witness(const SimpleGraph& target, u64 bound, std::uint64_t max_nodes, bool distinct_square_free) {
    const int n = target.size();
    if (n == 0) return {};
    const DiophGraph pool = build_range(bound, 1, 1);
    std::vector<u64> sqfree(bound + 1, 0);
    for (u64 x = 1; x <= bound; ++x) sqfree[x] = square_free_part(x);

    // Most-constrained first: each next vertex has the most placed neighbors.
    std::vector<int> order;
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    for (int step = 0; step < n; ++step) {
        int best = -1, best_links = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[static_cast<std::size_t>(v)]) continue;
            int links = 0;
            for (int w : target.neighbors(v)) links += placed[static_cast<std::size_t>(w)];
            if (links > best_links || (links == best_links && target.degree(v) > target.degree(best))) {
                best = v;
                best_links = links;
            }
        }
        placed[static_cast<std::size_t>(best)] = 1;
        order.push_back(best);
    }
    SearchContext ctx{target, pool, sqfree, order, std::vector<u64>(static_cast<std::size_t>(n), 0), 0, max_nodes,
                      distinct_square_free};
    if (!place(ctx, 0)) return {};
    return ctx.value;
}

RepresentResult represent_graph(const SimpleGraph& target, const RepresentOptions& options) {
    const int n = target.size();
    if (n > 16) throw std::invalid_argument("represent_graph: target has more than 16 vertices");
    RepresentResult result;
    result.known_impossible = clique_number(target, 5) >= 5;
    if (n == 0) {
        result.status = RepresentStatus::found;
        result.method = "extensions";
        return result;
    }

    // Peel vertices of degree <= 2 in the remaining graph.
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    std::vector<std::vector<int>> peeled_links;
    auto live_neighbors = [&](int v) {
        std::vector<int> out;
        for (int w : target.neighbors(v)) {
            if (alive[static_cast<std::size_t>(w)]) out.push_back(w);
        }
        return out;
    };
    for (;;) {
        int pick = -1;
        std::size_t pick_degree = 3;
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            const std::size_t deg = live_neighbors(v).size();
            if (deg < pick_degree) {
                pick = v;
                pick_degree = deg;
            }
        }
        if (pick < 0) break;
        peeled_links.push_back(live_neighbors(pick));
        result.peel_order.push_back(pick);
        alive[static_cast<std::size_t>(pick)] = 0;
    }
    std::vector<int> core;
    for (int v = 0; v < n; ++v) {
        if (alive[static_cast<std::size_t>(v)]) core.push_back(v);
    }
    result.core_size = core.size();

    auto whole_graph_search = [&]() {
        if (!options.whole_graph_fallback) return;
        const auto values = search_witness(target, options.search_bound, options.max_search_nodes, false);
        if (values.empty()) return;
        result.witness = to_big(values);
        if (!(witness_graph(result.witness) == target))
            throw std::logic_error("represent_graph: search witness does not match the target");
        result.status = RepresentStatus::found;
        result.method = "search";
    };

    std::vector<BigInt> values(static_cast<std::size_t>(n), 0);
    std::vector<BigInt> V;
    std::vector<int> vertex_of;
    if (!core.empty()) {
        const SimpleGraph core_graph = target.induced(core);
        const auto core_values = search_witness(core_graph, options.search_bound, options.max_search_nodes, true);
        if (core_values.empty()) {
            whole_graph_search();
            return result;
        }
        for (std::size_t c = 0; c < core.size(); ++c) {
            V.emplace_back(static_cast<unsigned long>(core_values[c]));
            vertex_of.push_back(core[c]);
        }
    }
    try {
        for (std::size_t step = result.peel_order.size(); step-- > 0;) {
            const int v = result.peel_order[step];
            std::vector<std::size_t> idx;
            for (int w : peeled_links[step]) {
                idx.push_back(static_cast<std::size_t>(std::find(vertex_of.begin(), vertex_of.end(), w) - vertex_of.begin()));
            }
            ExtensionReport report;
            if (idx.empty()) {
                report = extend_isolated(V, 1, options.extension_budget);
            } else if (idx.size() == 1) {
                report = extend_pendant(V, idx[0], 1, options.extension_budget);
            } else {
                report = extend_double(V, idx[0], idx[1], 1, options.extension_budget);
            }
            V.push_back(report.values.front());
            vertex_of.push_back(v);
        }
    } catch (const BudgetExceeded&) {
        whole_graph_search();
        return result;
    }
    for (std::size_t k = 0; k < V.size(); ++k) values[static_cast<std::size_t>(vertex_of[k])] = V[k];
    if (!(witness_graph(values) == target)) throw std::logic_error("represent_graph: rebuilt witness does not match the target");
    result.witness = std::move(values);
    result.status = RepresentStatus::found;
    result.method = core.empty() ? "extensions" : "extensions+core";
    return result;
}

}  // namespace dioph
