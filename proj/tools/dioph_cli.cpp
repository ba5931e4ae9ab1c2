// dioph: command-line front end. Data goes to stdout, progress and
// diagnostics to stderr. Exit 0 on success, 1 on a negative decision, 2 on
// usage errors and malformed input.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dioph/analysis.hpp"
#include "dioph/coloring.hpp"
#include "dioph/extension.hpp"
#include "dioph/graph_io.hpp"

using namespace dioph;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Global {
    std::string format = "human";
    unsigned threads = 0;
    bool json() const { return format == "json"; }
};

// Where a command gets its graph from.
struct GraphSource {
    std::string graph_file;
    std::string witness_file;
    u64 N = 0;
    u64 shift = 1;

    void attach(CLI::App* cmd) {
        auto* g = cmd->add_option("--graph", graph_file, "graph document produced by 'build'");
        auto* w = cmd->add_option("--witness", witness_file, "witness file, one integer per line");
        auto* n = cmd->add_option("--N", N, "use D({1..N})")->check(CLI::PositiveNumber);
        g->excludes(w)->excludes(n);
        w->excludes(n);
        cmd->add_option("--shift", shift, "edge iff a*b + shift is a square")->check(CLI::PositiveNumber);
    }

    // Vertex order used for branching: the witness file order when given.
    DiophGraph load(unsigned threads, std::vector<u64>* order = nullptr) const {
        if (!graph_file.empty()) {
            DiophGraph g = read_graph_file(graph_file);
            if (order) *order = g.vertices();
            return g;
        }
        if (!witness_file.empty()) {
            const auto values = read_witness_file_u64(witness_file);
            if (order) *order = values;
            return build_set(values, shift);
        }
        if (N == 0) throw UsageError("one of --graph, --witness or --N is required");
        DiophGraph g = build_range(N, shift, threads);
        if (order) *order = g.vertices();
        return g;
    }
};

std::vector<u64> parse_list(const std::string& text) {
    std::vector<u64> out;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("expected a comma-separated list of positive integers, got '" + text + "'");
        out.push_back(std::stoull(tok));
        if (out.back() == 0) throw UsageError("values must be positive");
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

Json stats_json(const GraphStats& s) {
    Json d;
    d["n"] = s.n;
    d["e"] = s.e;
    d["density"] = {s.density_num, s.density_den};
    Json hist = Json::array();
    for (const auto& [deg, count] : s.degree_histogram) hist.push_back({deg, count});
    d["degree_histogram"] = std::move(hist);
    d["clique_number"] = s.clique_number;
    d["components"] = s.components;
    return d;
}

Json document(const std::string& command) {
    Json d;
    d["schema_version"] = kSchemaVersion;
    d["command"] = command;
    return d;
}

void emit(const Json& d) { std::cout << d.dump() << "\n"; }

std::vector<std::string> big_strings(const std::vector<BigInt>& values) {
    std::vector<std::string> out;
    for (const auto& v : values) out.push_back(v.get_str());
    return out;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diophantine graphs: construction, extension, coloring and analysis"};
    app.require_subcommand(1);
    Global global;
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"human", "json"}))
        ->capture_default_str();
    app.add_option("--threads", global.threads, "worker threads (0 = all cores)")->capture_default_str();

    // build
    GraphSource build_src;
    std::string build_out;
    bool build_edges = false;
    auto* build = app.add_subcommand("build", "build D({1..N}) or D(V) and write a graph document");
    build_src.attach(build);
    build->add_option("--out,-o", build_out, "output file (default stdout)");
    build->add_flag("--edge-list", build_edges, "write 'a b' lines instead of a graph document");

    GraphSource stats_src;
    auto* stats_cmd = app.add_subcommand("stats", "vertex/edge counts, density, cliques, components");
    stats_src.attach(stats_cmd);
    bool stats_degree = false;
    stats_cmd->add_flag("--degree-bound", stats_degree, "also check deg(a) <= 8 sqrt(N/a) 2^omega(a) (ranges only)");

    GraphSource color_src;
    unsigned color_k = 4;
    std::string color_stats;
    auto* color = app.add_subcommand("color", "decide k-colorability; prints a coloring when one exists");
    color_src.attach(color);
    color->add_option("--k", color_k, "number of colors")->required()->check(CLI::Range(0u, kMaxColors));
    color->add_option("--stats-out", color_stats, "write search statistics to this file");

    GraphSource chroma_src;
    auto* chroma = app.add_subcommand("chroma", "chromatic number");
    chroma_src.attach(chroma);

    GraphSource minimal_src;
    unsigned minimal_k = 4;
    auto* minimal = app.add_subcommand("minimal", "check that every single-vertex deletion is k-colorable");
    minimal_src.attach(minimal);
    minimal->add_option("--k", minimal_k, "number of colors")->required()->check(CLI::Range(1u, kMaxColors));

    std::string extend_witness, extend_set, extend_mode = "isolated";
    std::size_t extend_i = 0, extend_j = 1, extend_count = 3;
    auto* extend = app.add_subcommand("extend", "new vertices adjacent to exactly 0, 1 or 2 given vertices");
    auto* ew = extend->add_option("--witness", extend_witness, "witness file");
    auto* es = extend->add_option("--set", extend_set, "comma-separated witness values");
    ew->excludes(es);
    extend->add_option("--mode", extend_mode, "isolated | pendant | double")
        ->check(CLI::IsMember({"isolated", "pendant", "double"}))
        ->capture_default_str();
    extend->add_option("--i", extend_i, "index (0-based) of the linked vertex");
    extend->add_option("--j", extend_j, "index (0-based) of the second linked vertex");
    extend->add_option("--count", extend_count, "extensions wanted")->check(CLI::PositiveNumber)->capture_default_str();

    std::string nb_set;
    u64 nb_bound = 0;
    auto* neighbors = app.add_subcommand("neighbors", "common neighbors of a set");
    neighbors->add_option("--set", nb_set, "comma-separated values")->required();
    neighbors->add_option("--bound", nb_bound, "search bound; optional for two values with equal square-free part");

    std::string dp_triple;
    auto* dplus = app.add_subcommand("dplus", "regular extensions d-, d+ of a Diophantine triple");
    dplus->add_option("--triple", dp_triple, "a,b,c")->required();

    GraphSource prune_src;
    std::string prune_out;
    auto* prune = app.add_subcommand("prune", "delete low-degree vertices while the density grows");
    prune_src.attach(prune);
    prune->add_option("--out,-o", prune_out, "write the pruned graph document here");

    GraphSource ham_src;
    bool ham_path = false, ham_cycle = false;
    std::size_t ham_cap = 40;
    auto* hamilton = app.add_subcommand("hamilton", "Hamiltonian path or cycle");
    ham_src.attach(hamilton);
    auto* hp = hamilton->add_flag("--path", ham_path, "look for a Hamiltonian path");
    auto* hc = hamilton->add_flag("--cycle", ham_cycle, "look for a Hamiltonian cycle");
    hp->excludes(hc);
    hamilton->add_option("--cap", ham_cap, "largest graph searched exhaustively")->capture_default_str();

    std::string rep_file;
    u64 rep_bound = 1000;
    std::uint64_t rep_nodes = 20'000'000;
    auto* represent = app.add_subcommand("represent", "find integers realizing an abstract graph");
    represent->add_option("--graph-file", rep_file, "lines 'u v' (edge) or 'u' (vertex)")->required();
    represent->add_option("--bound", rep_bound, "largest value tried by brute force")->capture_default_str();
    represent->add_option("--max-nodes", rep_nodes, "search node budget")->capture_default_str();

    u64 rank_N = 1'000'000;
    std::size_t rank_top = 10;
    auto* rank = app.add_subcommand("rank", "vertices of {1..N} ranked by S(a)/sqrt(a)");
    rank->add_option("--N", rank_N, "range")->check(CLI::PositiveNumber)->capture_default_str();
    rank->add_option("--top", rank_top, "how many")->check(CLI::PositiveNumber)->capture_default_str();

    u64 omega_x = 1'000'000;
    double omega_C = 2.0;
    auto* omega = app.add_subcommand("omega", "distribution of the number of distinct prime factors");
    omega->add_option("--x", omega_x, "upper limit")->check(CLI::PositiveNumber)->capture_default_str();
    omega->add_option("--C", omega_C, "tail constant C > 1")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const unsigned threads = global.threads;
    try {
        if (build->parsed()) {
            const DiophGraph g = build_src.load(threads);
            std::ofstream file;
            if (!build_out.empty()) {
                file.open(build_out);
                if (!file) throw UsageError("cannot write " + build_out);
            }
            std::ostream& out = build_out.empty() ? std::cout : file;
            if (build_edges) {
                write_edge_list(out, g);
            } else {
                out << graph_to_json(g);
            }
            std::cerr << "built n=" << g.size() << " e=" << g.edge_count() << "\n";
            return kOk;
        }

        if (stats_cmd->parsed()) {
            const DiophGraph g = stats_src.load(threads);
            const GraphStats s = stats(g);
            std::optional<DegreeBoundReport> bound;
            if (stats_degree) {
                if (stats_src.N == 0 || g.shift() != 1) throw UsageError("--degree-bound needs --N with shift 1");
                bound = degree_bound_check(g);
            }
            if (global.json()) {
                Json d = document("stats");
                d["shift"] = g.shift();
                d["stats"] = stats_json(s);
                if (bound) d["degree_bound"] = {{"violations", bound->violations}, {"max_ratio", bound->max_ratio},
                                                {"argmax", bound->argmax}};
                emit(d);
            } else {
                std::cout << "n=" << s.n << " e=" << s.e << " density=" << s.density_num << "/" << s.density_den
                          << " clique_number=" << s.clique_number << " components=" << s.components << "\n";
                if (bound)
                    std::cout << "degree bound: " << bound->violations << " violations, max ratio " << bound->max_ratio
                              << " at a=" << bound->argmax << "\n";
            }
            return kOk;
        }

        if (color->parsed()) {
            std::vector<u64> order;
            const DiophGraph g = color_src.load(threads, &order);
            std::cerr << "coloring n=" << g.size() << " with k=" << color_k << "\n";
            const ColoringResult r = k_colorable(g, color_k, order);
            std::cerr << "done in " << r.stats.seconds << "s, " << r.stats.nodes << " nodes, peak "
                      << r.stats.peak_open << " open branches\n";
            if (!color_stats.empty()) {
                std::ofstream f(color_stats);
                if (!f) throw UsageError("cannot write " + color_stats);
                f << coloring_stats_json(r, color_k);
            }
            if (global.json()) {
                Json d = document("color");
                d["k"] = color_k;
                d["colorable"] = r.colorable;
                if (r.colorable) {
                    Json colors = Json::array();
                    for (std::size_t i = 0; i < g.size(); ++i) colors.push_back({g.vertices()[i], r.colors[i]});
                    d["coloring"] = std::move(colors);
                }
                d["nodes"] = r.stats.nodes;
                d["peak_open_branches"] = r.stats.peak_open;
                emit(d);
            } else if (r.colorable) {
                write_coloring(std::cout, g.vertices(), r.colors);
            } else {
                std::cout << "not " << color_k << "-colorable\n";
            }
            return r.colorable ? kOk : kNegative;
        }

        if (chroma->parsed()) {
            std::vector<u64> order;
            const DiophGraph g = chroma_src.load(threads, &order);
            const unsigned chi = chromatic_number(g, order);
            if (global.json()) {
                Json d = document("chroma");
                d["chromatic_number"] = chi;
                emit(d);
            } else {
                std::cout << chi << "\n";
            }
            return kOk;
        }

        if (minimal->parsed()) {
            std::vector<u64> order;
            const DiophGraph g = minimal_src.load(threads, &order);
            std::cerr << "checking " << g.size() << " single-vertex deletions\n";
            const auto t0 = std::chrono::steady_clock::now();
            if (k_colorable(g, minimal_k, order).colorable) {
                if (global.json()) {
                    Json d = document("minimal");
                    d["k"] = minimal_k;
                    d["k_colorable"] = true;
                    d["minimal"] = false;
                    emit(d);
                } else {
                    std::cout << "graph is already " << minimal_k << "-colorable\n";
                }
                return kNegative;
            }
            const MinimalityReport rep = minimality_check(g, minimal_k, order, threads);
            std::cerr << "done in " << elapsed(t0) << "s\n";
            if (global.json()) {
                Json d = document("minimal");
                d["k"] = minimal_k;
                d["k_colorable"] = false;
                d["minimal"] = rep.minimal;
                d["n"] = rep.n;
                d["critical"] = rep.critical;
                emit(d);
            } else {
                std::cout << rep.critical.size() << " of " << rep.n << " deletions are " << minimal_k
                          << "-colorable; " << (rep.minimal ? "minimal" : "not minimal") << "\n";
            }
            return rep.minimal ? kOk : kNegative;
        }

        if (extend->parsed()) {
            std::vector<BigInt> V;
            if (!extend_witness.empty()) {
                V = read_witness_file(extend_witness);
            } else if (!extend_set.empty()) {
                V = to_big(parse_list(extend_set));
            } else {
                throw UsageError("extend needs --witness or --set");
            }
            if (V.empty()) throw UsageError("empty witness set");
            if (extend_mode != "isolated" && extend_i >= V.size()) throw UsageError("--i out of range");
            if (extend_mode == "double" && (extend_j >= V.size() || extend_j == extend_i))
                throw UsageError("--j out of range or equal to --i");
            ExtensionReport rep;
            if (extend_mode == "isolated") {
                rep = extend_isolated(V, extend_count);
            } else if (extend_mode == "pendant") {
                rep = extend_pendant(V, extend_i, extend_count);
            } else {
                rep = extend_double(V, extend_i, extend_j, extend_count);
            }
            if (global.json()) {
                Json d = document("extend");
                d["mode"] = to_string(rep.mode);
                d["values"] = big_strings(rep.values);
                d["linked"] = rep.linked;
                d["modulus"] = rep.modulus.get_str();
                d["residue"] = rep.residue.get_str();
                if (!rep.primes.empty()) d["primes"] = rep.primes;
                if (rep.aux_prime) d["aux_prime"] = rep.aux_prime;
                if (rep.pell_d) d["pell_d"] = rep.pell_d;
                if (rep.unit_order) d["unit_order"] = rep.unit_order;
                d["candidates_examined"] = rep.candidates_examined;
                emit(d);
            } else {
                for (const auto& w : rep.values) std::cout << w.get_str() << "\n";
                std::cerr << "mode=" << to_string(rep.mode) << " modulus=" << rep.modulus.get_str()
                          << " residue=" << rep.residue.get_str() << " candidates=" << rep.candidates_examined << "\n";
            }
            return kOk;
        }

        if (neighbors->parsed()) {
            const std::vector<u64> S = parse_list(nb_set);
            std::vector<u64> found;
            std::string method;
            if (nb_bound == 0) {
                if (S.size() != 2 || square_free_part(S[0]) != square_free_part(S[1]))
                    throw UsageError("--bound is required unless --set has two values with equal square-free part");
                found = common_neighbors_equal_sqfree(S[0], S[1]);
                method = "exact";
            } else {
                found = common_neighbors_bounded(S, nb_bound);
                method = "bounded";
            }
            if (global.json()) {
                Json d = document("neighbors");
                d["set"] = S;
                d["method"] = method;
                if (nb_bound) d["bound"] = nb_bound;
                d["neighbors"] = found;
                emit(d);
            } else {
                for (u64 w : found) std::cout << w << "\n";
            }
            return kOk;
        }

        if (dplus->parsed()) {
            const auto t = parse_list(dp_triple);
            if (t.size() != 3) throw UsageError("--triple needs exactly three values");
            const RegularTriple triple = RegularTriple::make(t[0], t[1], t[2]);
            const auto [lo, hi] = regular_extensions(triple);
            if (global.json()) {
                Json d = document("dplus");
                d["triple"] = t;
                d["d_minus"] = lo.get_str();
                d["d_plus"] = hi.get_str();
                emit(d);
            } else {
                std::cout << lo.get_str() << " " << hi.get_str() << "\n";
            }
            return kOk;
        }

        if (prune->parsed()) {
            const DiophGraph g = prune_src.load(threads);
            const auto [pruned, trace] = prune_low_degree(g);
            if (!prune_out.empty()) {
                std::ofstream f(prune_out);
                if (!f) throw UsageError("cannot write " + prune_out);
                f << graph_to_json(pruned);
            }
            if (global.json()) {
                std::cout << prune_trace_json(trace);
            } else {
                std::cout << "removed " << trace.steps.size() << " vertices; n " << trace.initial.n << " -> "
                          << trace.final.n << ", density " << trace.initial.density() << " -> "
                          << trace.final.density() << "\n";
            }
            return kOk;
        }

        if (hamilton->parsed()) {
            if (!ham_path && !ham_cycle) throw UsageError("hamilton needs --path or --cycle");
            const DiophGraph g = ham_src.load(threads);
            if (ham_path) {
                std::cerr << "searching for a Hamiltonian path on " << g.size() << " vertices\n";
                const HamiltonResult r = hamiltonian_path_exists(g, ham_cap);
                if (global.json()) {
                    Json d = document("hamilton");
                    d["kind"] = "path";
                    d["verdict"] = to_string(r.verdict);
                    d["method"] = r.method;
                    d["witness"] = r.witness;
                    d["nodes"] = r.nodes;
                    emit(d);
                } else {
                    std::cout << to_string(r.verdict) << " (" << r.method << ")\n";
                    for (std::size_t i = 0; i < r.witness.size(); ++i)
                        std::cout << r.witness[i] << (i + 1 < r.witness.size() ? " " : "\n");
                }
                if (r.verdict == Verdict::unknown) return kUsage;
                return r.verdict == Verdict::yes ? kOk : kNegative;
            }
            if (g.size() > std::min<std::size_t>(ham_cap, 64)) {
                // Structural argument only.
                const bool premise = mod4_premise_holds(g);
                std::size_t two = 0, zero = 0, other = 0;
                for (u64 v : g.vertices()) (v % 4 == 2 ? two : v % 4 == 0 ? zero : other)++;
                const bool refuted = premise && (two > zero || (two == zero && two > 0 && other > 0));
                if (global.json()) {
                    Json d = document("hamilton");
                    d["kind"] = "cycle";
                    d["verdict"] = refuted ? "no" : "unknown";
                    d["method"] = refuted ? "mod4" : "cap";
                    emit(d);
                } else {
                    std::cout << (refuted ? "no (mod4)" : "unknown (cap)") << "\n";
                }
                return refuted ? kNegative : kUsage;
            }
            const HamiltonResult r = hamiltonian_cycle_search(g);
            if (global.json()) {
                Json d = document("hamilton");
                d["kind"] = "cycle";
                d["verdict"] = to_string(r.verdict);
                d["method"] = r.method;
                d["witness"] = r.witness;
                d["nodes"] = r.nodes;
                emit(d);
            } else {
                std::cout << to_string(r.verdict) << " (" << r.method << ")\n";
                for (std::size_t i = 0; i < r.witness.size(); ++i)
                    std::cout << r.witness[i] << (i + 1 < r.witness.size() ? " " : "\n");
            }
            return r.verdict == Verdict::yes ? kOk : kNegative;
        }

        if (represent->parsed()) {
            std::vector<long long> labels;
            const SimpleGraph target = read_abstract_graph_file(rep_file, &labels);
            RepresentOptions opts;
            opts.search_bound = rep_bound;
            opts.max_search_nodes = rep_nodes;
            const RepresentResult r = represent_graph(target, opts);
            const bool found = r.status == RepresentStatus::found;
            if (global.json()) {
                Json d = document("represent");
                d["status"] = found ? "found" : "unknown";
                d["method"] = r.method;
                d["known_impossible"] = r.known_impossible;
                Json w = Json::array();
                for (std::size_t v = 0; v < r.witness.size(); ++v) w.push_back({labels[v], r.witness[v].get_str()});
                d["witness"] = std::move(w);
                emit(d);
            } else if (found) {
                for (std::size_t v = 0; v < r.witness.size(); ++v)
                    std::cout << labels[v] << " " << r.witness[v].get_str() << "\n";
            } else {
                std::cout << "unknown" << (r.known_impossible ? " (contains K5, so no witness exists)" : "") << "\n";
            }
            return found ? kOk : kNegative;
        }

        if (rank->parsed()) {
            if (rank_top > rank_N) throw UsageError("--top exceeds --N");
            const auto top = heuristic_top(rank_N, rank_top);
            if (global.json()) {
                Json d = document("rank");
                d["N"] = rank_N;
                Json rows = Json::array();
                for (u64 a : top) rows.push_back({a, count_unit_roots(a)});
                d["top"] = std::move(rows);
                emit(d);
            } else {
                for (u64 a : top) std::cout << a << " " << count_unit_roots(a) << " " << heuristic_score(a) << "\n";
            }
            return kOk;
        }

        if (omega->parsed()) {
            if (!(omega_C > 1.0)) throw UsageError("--C must exceed 1");
            const auto dist = omega_distribution(omega_x, omega_C);
            if (global.json()) {
                std::cout << omega_distribution_json(dist);
            } else {
                for (std::size_t k = 0; k < dist.counts.size(); ++k) std::cout << k << " " << dist.counts[k] << "\n";
                std::cout << "tail(k > " << dist.threshold << ") = " << dist.tail << ", bound " << dist.bound
                          << (dist.tail_within_bound ? " (within)" : " (exceeded)") << "\n";
            }
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kNegative;
    }
    return kUsage;
}
