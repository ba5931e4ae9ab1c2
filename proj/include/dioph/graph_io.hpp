// File formats: witness files, graph documents and edge lists.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dioph/graph.hpp"

namespace dioph {

/// Malformed input; `line()` is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

inline constexpr int kSchemaVersion = 1;

/// One positive decimal integer per line; '#' starts a comment line; blank
/// lines are ignored. Duplicates are rejected. Order is preserved.
std::vector<BigInt> read_witness(std::istream& in);
std::vector<BigInt> read_witness_file(const std::string& path);
/// Same, narrowed to 64-bit values.
std::vector<u64> read_witness_u64(std::istream& in);
std::vector<u64> read_witness_file_u64(const std::string& path);

void write_witness(std::ostream& out, const std::vector<BigInt>& values, const std::string& comment = {});
void write_witness(std::ostream& out, const std::vector<u64>& values, const std::string& comment = {});

/// Graph document: {"schema_version", "n", "shift", "vertices", "edges"}
/// with edges as sorted [a, b] pairs, a < b.
std::string graph_to_json(const DiophGraph& g);
DiophGraph graph_from_json(const std::string& text);
DiophGraph read_graph_file(const std::string& path);

/// "a b" per line, a < b, sorted.
void write_edge_list(std::ostream& out, const DiophGraph& g);

/// Abstract graph: each non-comment line is "u v" (an edge) or "u" (a
/// vertex). Labels are non-negative integers and are renumbered in order of
/// first appearance; `labels` receives the original labels.
SimpleGraph read_abstract_graph(std::istream& in, std::vector<long long>* labels = nullptr);
SimpleGraph read_abstract_graph_file(const std::string& path, std::vector<long long>* labels = nullptr);

}  // namespace dioph
