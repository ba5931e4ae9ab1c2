#include "dioph/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <numeric>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace dioph {

ColorState::ColorState(const SimpleGraph& g, unsigned k) : graph_(&g), k_(k) {
    if (k > kMaxColors) throw std::invalid_argument("ColorState: at most 32 colors are supported");
    const ColorMask all = k == 32 ? ~ColorMask{0} : ((ColorMask{1} << k) - 1);
    sets_.assign(static_cast<std::size_t>(g.size()), all);
    swept_.assign(static_cast<std::size_t>(g.size()), 0);
    contradictory_ = (k == 0 && g.size() > 0);
}

bool ColorState::decided(int v) const { return std::has_single_bit(sets_[static_cast<std::size_t>(v)]); }

int ColorState::color_of(int v) const {
    const ColorMask m = sets_[static_cast<std::size_t>(v)];
    return std::has_single_bit(m) ? std::countr_zero(m) : -1;
}

bool ColorState::assign(int v, unsigned color) {
    auto& set = sets_[static_cast<std::size_t>(v)];
    const ColorMask bit = ColorMask{1} << color;
    if ((set & bit) == 0) {
        set = 0;
        contradictory_ = true;
        return false;
    }
    if (set != bit) swept_[static_cast<std::size_t>(v)] = 0;
    set = bit;
    return true;
}

void ColorState::remove(int v, unsigned color) {
    auto& set = sets_[static_cast<std::size_t>(v)];
    set &= ~(ColorMask{1} << color);
    if (set == 0) contradictory_ = true;
}

bool sweep(ColorState& state, ColorStats* stats, std::mt19937_64* rng) {
    if (state.contradictory_) return false;
    const SimpleGraph& g = *state.graph_;
    std::vector<int> work;
    for (int v = 0; v < g.size(); ++v) {
        if (!state.swept_[static_cast<std::size_t>(v)] && state.decided(v)) work.push_back(v);
    }
    while (!work.empty()) {
        if (rng) {
            std::uniform_int_distribution<std::size_t> pick(0, work.size() - 1);
            std::swap(work[pick(*rng)], work.back());
        }
        const int v = work.back();
        work.pop_back();
        auto& flag = state.swept_[static_cast<std::size_t>(v)];
        if (flag) continue;
        flag = 1;
        const ColorMask bit = state.sets_[static_cast<std::size_t>(v)];
        for (int w : g.neighbors(v)) {
            auto& set = state.sets_[static_cast<std::size_t>(w)];
            if ((set & bit) == 0) continue;
            set &= ~bit;
            if (stats) ++stats->propagations;
            if (set == 0) {
                state.contradictory_ = true;
                return false;
            }
            if (std::has_single_bit(set)) work.push_back(w);
        }
    }
    return true;
}

bool is_proper_coloring(const SimpleGraph& g, const std::vector<int>& colors) {
    if (colors.size() != static_cast<std::size_t>(g.size())) return false;
    for (const auto& [u, v] : g.edges()) {
        if (colors[static_cast<std::size_t>(u)] < 0 || colors[static_cast<std::size_t>(u)] == colors[static_cast<std::size_t>(v)])
            return false;
    }
    return std::all_of(colors.begin(), colors.end(), [](int c) { return c >= 0; });
}

std::vector<int> symmetry_clique(const SimpleGraph& g, const std::vector<int>& order, const std::vector<u64>& labels) {
    if (labels.size() == static_cast<std::size_t>(g.size())) {
        std::vector<int> quad;
        for (u64 want : {1, 3, 8, 120}) {
            auto it = std::find(labels.begin(), labels.end(), want);
            if (it == labels.end()) break;
            quad.push_back(static_cast<int>(it - labels.begin()));
        }
        bool complete = quad.size() == 4;
        for (std::size_t i = 0; complete && i < quad.size(); ++i) {
            for (std::size_t j = i + 1; j < quad.size(); ++j) complete = complete && g.has_edge(quad[i], quad[j]);
        }
        if (complete) return quad;
    }
    std::vector<int> clique;
    for (int v : order) {
        if (std::all_of(clique.begin(), clique.end(), [&](int u) { return g.has_edge(u, v); })) clique.push_back(v);
    }
    return clique;
}

namespace {

std::vector<int> resolve_order(const SimpleGraph& g, const std::vector<int>& requested) {
    std::vector<int> order = requested;
    if (order.empty()) {
        order.resize(static_cast<std::size_t>(g.size()));
        std::iota(order.begin(), order.end(), 0);
    }
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> identity(static_cast<std::size_t>(g.size()));
    std::iota(identity.begin(), identity.end(), 0);
    if (sorted != identity) throw std::invalid_argument("k_colorable: branch order must be a permutation of the vertices");
    return order;
}

struct Frame {
    ColorState state;
    std::size_t pos;
    std::size_t depth;
};

}  // namespace

ColoringResult k_colorable(const SimpleGraph& g, unsigned k, const ColoringOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    ColoringResult result;
    auto finish = [&]() -> ColoringResult& {
        result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    };
    const std::vector<int> order = resolve_order(g, options.branch_order);
    if (g.size() == 0) {
        result.colorable = true;
        return finish();
    }
    if (k == 0) return finish();
    if (k > kMaxColors) throw std::invalid_argument("k_colorable: at most 32 colors are supported");

    result.symmetry_clique = symmetry_clique(g, order, options.labels);
    if (result.symmetry_clique.size() > k) return finish();

    ColorState root(g, k);
    for (std::size_t c = 0; c < result.symmetry_clique.size(); ++c) root.assign(result.symmetry_clique[c], static_cast<unsigned>(c));
    result.stats.nodes = 1;
    if (!sweep(root, &result.stats)) {
        ++result.stats.dead_ends;
        return finish();
    }

    std::vector<Frame> stack;
    stack.push_back({std::move(root), 0, 0});
    result.stats.peak_open = 1;
    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        std::size_t pos = frame.pos;
        while (pos < order.size() && frame.state.decided(order[pos])) ++pos;
        if (pos == order.size()) {
            result.colorable = true;
            result.colors.resize(static_cast<std::size_t>(g.size()));
            for (int v = 0; v < g.size(); ++v) result.colors[static_cast<std::size_t>(v)] = frame.state.color_of(v);
            if (!is_proper_coloring(g, result.colors))
                throw InvariantViolation("k_colorable: produced an improper coloring");
            return finish();
        }
        const int v = order[pos];
        std::vector<unsigned> colors;
        for (ColorMask m = frame.state.candidates(v); m != 0; m &= m - 1) colors.push_back(static_cast<unsigned>(std::countr_zero(m)));
        ++result.stats.branch_points;
        if (frame.depth < options.branch_prefix.size()) {
            const unsigned pick = options.branch_prefix[frame.depth];
            colors = pick < colors.size() ? std::vector<unsigned>{colors[pick]} : std::vector<unsigned>{};
        }
        // Push in reverse so the smallest color is explored first.
        for (auto it = colors.rbegin(); it != colors.rend(); ++it) {
            ColorState child = frame.state;
            child.assign(v, *it);
            ++result.stats.nodes;
            if (!sweep(child, &result.stats)) {
                ++result.stats.dead_ends;
                continue;
            }
            stack.push_back({std::move(child), pos + 1, frame.depth + 1});
        }
        result.stats.peak_open = std::max<std::uint64_t>(result.stats.peak_open, stack.size());
    }
    return finish();
}

namespace {

ColoringOptions options_for(const DiophGraph& g, const std::vector<u64>& branch_order) {
    ColoringOptions options;
    options.labels = g.vertices();
    for (u64 v : branch_order) {
        auto i = g.index_of(v);
        if (!i) throw std::invalid_argument("branch order names vertex " + std::to_string(v) + " not in the graph");
        options.branch_order.push_back(static_cast<int>(*i));
    }
    return options;
}

}  // namespace

ColoringResult k_colorable(const DiophGraph& g, unsigned k, const std::vector<u64>& branch_order) {
    return k_colorable(g.to_simple(), k, options_for(g, branch_order));
}

unsigned chromatic_number(const SimpleGraph& g, const ColoringOptions& options) {
    if (g.size() == 0) return 0;
    unsigned k = std::max(1u, clique_number(g, static_cast<unsigned>(g.size())));
    while (!k_colorable(g, k, options).colorable) ++k;
    return k;
}

unsigned chromatic_number(const DiophGraph& g, const std::vector<u64>& branch_order) {
    return chromatic_number(g.to_simple(), options_for(g, branch_order));
}

MinimalityReport minimality_check(const SimpleGraph& g, unsigned k, const ColoringOptions& options, unsigned threads) {
    if (k_colorable(g, k, options).colorable) throw std::invalid_argument("minimality_check: graph is already k-colorable");
    const std::vector<int> order = resolve_order(g, options.branch_order);
    const std::size_t n = static_cast<std::size_t>(g.size());
    std::vector<char> colorable_without(n, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t drop = next++; drop < n; drop = next++) {
            std::vector<int> keep;
            for (int v : order) {
                if (v != static_cast<int>(drop)) keep.push_back(v);
            }
            // Renumber so that the kept vertices appear in branch order.
            SimpleGraph sub = g.induced(keep);
            ColoringOptions sub_options;
            if (!options.labels.empty()) {
                for (int v : keep) sub_options.labels.push_back(options.labels[static_cast<std::size_t>(v)]);
            }
            colorable_without[drop] = k_colorable(sub, k, sub_options).colorable ? 1 : 0;
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || n < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    MinimalityReport report;
    report.k = k;
    report.n = n;
    for (std::size_t v = 0; v < n; ++v) {
        if (colorable_without[v]) report.critical.push_back(v);
    }
    report.minimal = report.critical.size() == n;
    return report;
}

MinimalityReport minimality_check(const DiophGraph& g, unsigned k, const std::vector<u64>& branch_order, unsigned threads) {
    MinimalityReport report = minimality_check(g.to_simple(), k, options_for(g, branch_order), threads);
    for (u64& v : report.critical) v = g.vertices()[v];
    return report;
}

std::vector<int> mod4_coloring_shift2(const DiophGraph& g) {
    if (g.shift() != 2) throw std::invalid_argument("mod4_coloring_shift2: requires a shift-2 graph");
    std::vector<int> colors;
    colors.reserve(g.size());
    for (u64 v : g.vertices()) colors.push_back(v % 2 == 0 ? 0 : (v % 4 == 1 ? 1 : 2));
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (u64 w : g.neighbors_at(i)) {
            if (colors[i] == colors[*g.index_of(w)])
                throw InvariantViolation("mod4_coloring_shift2: monochromatic edge " + std::to_string(g.vertices()[i]) + " " + std::to_string(w));
        }
    }
    return colors;
}

void write_coloring(std::ostream& out, const std::vector<u64>& vertices, const std::vector<int>& colors) {
    for (std::size_t i = 0; i < vertices.size() && i < colors.size(); ++i) out << vertices[i] << ' ' << colors[i] << '\n';
}

std::string coloring_stats_json(const ColoringResult& result, unsigned k) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["k"] = k;
    doc["colorable"] = result.colorable;
    doc["nodes"] = result.stats.nodes;
    doc["branch_points"] = result.stats.branch_points;
    doc["peak_open_branches"] = result.stats.peak_open;
    doc["propagations"] = result.stats.propagations;
    doc["dead_ends"] = result.stats.dead_ends;
    doc["wall_seconds"] = result.stats.seconds;
    return doc.dump() + "\n";
}

}  // namespace dioph
