#include "dioph/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dioph {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    return in;
}

}  // namespace

std::vector<BigInt> read_witness(std::istream& in) {
    std::vector<BigInt> out;
    std::set<BigInt> seen;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!std::all_of(line.begin(), line.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError(lineno, "expected a positive decimal integer, got '" + line + "'");
        BigInt v(line, 10);
        if (sgn(v) <= 0) throw ParseError(lineno, "values must be positive");
        if (!seen.insert(v).second) throw ParseError(lineno, "duplicate value " + line);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<BigInt> read_witness_file(const std::string& path) {
    auto in = open_input(path);
    return read_witness(in);
}

std::vector<u64> read_witness_u64(std::istream& in) {
    // Re-read line by line so range errors carry line numbers.
    std::vector<u64> out;
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    std::istringstream first(text);
    const auto values = read_witness(first);
    std::istringstream second(text);
    std::string raw;
    std::size_t lineno = 0, k = 0;
    while (std::getline(second, raw) && k < values.size()) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!values[k].fits_ulong_p() || values[k] > BigInt("18446744073709551615"))
            throw ParseError(lineno, "value exceeds 64 bits");
        out.push_back(values[k].get_ui());
        ++k;
    }
    return out;
}

std::vector<u64> read_witness_file_u64(const std::string& path) {
    auto in = open_input(path);
    return read_witness_u64(in);
}

void write_witness(std::ostream& out, const std::vector<BigInt>& values, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    for (const auto& v : values) out << v.get_str() << '\n';
}

void write_witness(std::ostream& out, const std::vector<u64>& values, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    for (u64 v : values) out << v << '\n';
}

std::string graph_to_json(const DiophGraph& g) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["n"] = g.size();
    doc["shift"] = g.shift();
    doc["vertices"] = g.vertices();
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    doc["edges"] = std::move(edges);
    return doc.dump() + "\n";
}

DiophGraph graph_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("invalid graph document: ") + e.what());
    }
    try {
        if (doc.at("schema_version").get<int>() != kSchemaVersion) throw ParseError(0, "unsupported schema_version");
        auto vertices = doc.at("vertices").get<std::vector<u64>>();
        const auto shift = doc.at("shift").get<u64>();
        if (doc.at("n").get<std::size_t>() != vertices.size()) throw ParseError(0, "n does not match vertex count");
        std::vector<std::pair<u64, u64>> edges;
        for (const auto& e : doc.at("edges")) {
            const u64 a = e.at(0).get<u64>(), b = e.at(1).get<u64>();
            if (a >= b) throw ParseError(0, "edge pairs must satisfy a < b");
            edges.emplace_back(a, b);
        }
        if (!std::is_sorted(edges.begin(), edges.end())) throw ParseError(0, "edges must be sorted");
        DiophGraph g(std::move(vertices), edges, shift);
        // The document must describe the true relation on its vertex set.
        for (const auto& [a, b] : edges) {
            if (!edge_test(a, b, shift)) throw ParseError(0, "edge " + std::to_string(a) + " " + std::to_string(b) + " fails the square test");
        }
        const auto& vs = g.vertices();
        const bool is_range = !vs.empty() && vs.front() == 1 && vs.back() == vs.size();
        std::size_t expected = g.edge_count();
        if (is_range) {
            expected = build_range(vs.size(), shift).edge_count();
        } else if (vs.size() <= 20000) {
            expected = build_set(vs, shift).edge_count();
        }
        if (expected != g.edge_count()) throw ParseError(0, "edge list is incomplete for this vertex set");
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed graph document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, std::string("malformed graph document: ") + e.what());
    }
}

DiophGraph read_graph_file(const std::string& path) {
    auto in = open_input(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return graph_from_json(buffer.str());
}

void write_edge_list(std::ostream& out, const DiophGraph& g) {
    for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

SimpleGraph read_abstract_graph(std::istream& in, std::vector<long long>* labels) {
    std::map<long long, int> index;
    std::vector<long long> order;
    std::vector<std::pair<int, int>> edges;
    auto intern = [&](long long label) {
        auto [it, inserted] = index.emplace(label, static_cast<int>(order.size()));
        if (inserted) order.push_back(label);
        return it->second;
    };
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::vector<long long> nums;
        std::string tok;
        while (fields >> tok) {
            if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }) || tok.size() > 18)
                throw ParseError(lineno, "expected non-negative integer labels, got '" + tok + "'");
            nums.push_back(std::stoll(tok));
        }
        if (nums.size() == 1) {
            intern(nums[0]);
        } else if (nums.size() == 2) {
            if (nums[0] == nums[1]) throw ParseError(lineno, "self-loop");
            const int u = intern(nums[0]);
            const int v = intern(nums[1]);
            edges.emplace_back(u, v);
        } else {
            throw ParseError(lineno, "expected 'u v' or 'u'");
        }
    }
    SimpleGraph g(static_cast<int>(order.size()));
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    if (labels) *labels = order;
    return g;
}

SimpleGraph read_abstract_graph_file(const std::string& path, std::vector<long long>* labels) {
    auto in = open_input(path);
    return read_abstract_graph(in, labels);
}

}  // namespace dioph
