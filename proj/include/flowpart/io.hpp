// hMetis-format readers and writers plus graph / matrix ingestion.
#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/hypergraph.hpp"
#include "flowpart/partition.hpp"

namespace flowpart {

namespace io_detail {

// Returns the next line that is neither empty nor a '%' comment.
inline bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '%') continue;
    return true;
  }
  return false;
}

inline std::vector<long long> parse_numbers(const std::string& line, int line_no) {
  std::vector<long long> out;
  std::istringstream iss(line);
  std::string token;
  while (iss >> token) {
    try {
      std::size_t used = 0;
      long long value = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(value);
    } catch (const std::exception&) {
      throw InputError("line " + std::to_string(line_no) + ": non-numeric token '" +
                       token + "'");
    }
  }
  return out;
}

}  // namespace io_detail

// hMetis header fmt values. Absent fmt means unweighted.
enum class HgrFormat : int { plain = 0, net_weights = 1, vertex_weights = 10, both = 11 };

// Parses the hMetis hypergraph format: header "m n [fmt]", m net lines
// (optional leading weight), then n vertex weight lines when fmt requests
// them. Pins are 1-based in the file and 0-based in memory. Duplicate pins
// within a net are dropped with a warning.
inline Hypergraph parse_hgr(std::istream& in,
                            std::vector<std::string>* warnings = nullptr) {
  std::string line;
  int line_no = 0;
  require_input(io_detail::next_content_line(in, line, line_no),
                "hgr: missing header line");
  auto header = io_detail::parse_numbers(line, line_no);
  require_input(header.size() == 2 || header.size() == 3,
                "line " + std::to_string(line_no) + ": header must be 'm n [fmt]'");
  const long long m = header[0];
  const long long n = header[1];
  require_input(m >= 0 && n >= 0,
                "line " + std::to_string(line_no) + ": negative dimension");
  int fmt = header.size() == 3 ? static_cast<int>(header[2]) : 0;
  require_input(fmt == 0 || fmt == 1 || fmt == 10 || fmt == 11,
                "line " + std::to_string(line_no) + ": unknown fmt " + std::to_string(fmt));
  const bool has_net_weights = fmt == 1 || fmt == 11;
  const bool has_vertex_weights = fmt == 10 || fmt == 11;

  std::vector<std::vector<VertexId>> pins(m);
  std::vector<Weight> net_weights(m, 1);
  std::vector<char> seen(n, false);
  for (long long e = 0; e < m; ++e) {
    require_input(io_detail::next_content_line(in, line, line_no),
                  "hgr: expected " + std::to_string(m) + " net lines, got " +
                      std::to_string(e));
    auto numbers = io_detail::parse_numbers(line, line_no);
    std::size_t first_pin = 0;
    if (has_net_weights) {
      require_input(!numbers.empty(),
                    "line " + std::to_string(line_no) + ": missing net weight");
      require_input(numbers[0] > 0,
                    "line " + std::to_string(line_no) + ": net weight must be positive");
      net_weights[e] = numbers[0];
      first_pin = 1;
    }
    require_input(numbers.size() > first_pin,
                  "line " + std::to_string(line_no) + ": net without pins");
    for (std::size_t idx = first_pin; idx < numbers.size(); ++idx) {
      long long pin = numbers[idx];
      require_input(pin >= 1 && pin <= n, "line " + std::to_string(line_no) +
                                              ": pin " + std::to_string(pin) +
                                              " out of range [1, " +
                                              std::to_string(n) + "]");
      const VertexId v = static_cast<VertexId>(pin - 1);
      if (seen[v]) {
        if (warnings)
          warnings->push_back("line " + std::to_string(line_no) +
                              ": duplicate pin " + std::to_string(pin) +
                              " in net " + std::to_string(e + 1) + " dropped");
        continue;
      }
      seen[v] = true;
      pins[e].push_back(v);
    }
    for (VertexId v : pins[e]) seen[v] = false;
  }

  std::vector<Weight> vertex_weights(n, 1);
  if (has_vertex_weights) {
    for (long long v = 0; v < n; ++v) {
      require_input(io_detail::next_content_line(in, line, line_no),
                    "hgr: expected " + std::to_string(n) + " vertex weight lines, got " +
                        std::to_string(v));
      auto numbers = io_detail::parse_numbers(line, line_no);
      require_input(numbers.size() == 1,
                    "line " + std::to_string(line_no) + ": expected one vertex weight");
      require_input(numbers[0] > 0,
                    "line " + std::to_string(line_no) + ": vertex weight must be positive");
      vertex_weights[v] = numbers[0];
    }
  }
  if (io_detail::next_content_line(in, line, line_no))
    throw InputError("line " + std::to_string(line_no) + ": trailing content");

  return Hypergraph(static_cast<VertexId>(n), std::move(pins),
                    std::move(net_weights), std::move(vertex_weights));
}

// Emits the smallest fmt that preserves all weights, so that unweighted
// inputs round-trip without a fmt field.
inline void write_hgr(std::ostream& out, const Hypergraph& hg) {
  bool net_w = false, vertex_w = false;
  for (NetId e = 0; e < hg.num_nets(); ++e) net_w |= hg.net_weight(e) != 1;
  for (VertexId v = 0; v < hg.num_vertices(); ++v)
    vertex_w |= hg.vertex_weight(v) != 1;
  out << hg.num_nets() << ' ' << hg.num_vertices();
  if (net_w && vertex_w)
    out << " 11";
  else if (net_w)
    out << " 1";
  else if (vertex_w)
    out << " 10";
  out << '\n';
  for (NetId e = 0; e < hg.num_nets(); ++e) {
    if (net_w) out << hg.net_weight(e) << ' ';
    auto pins = hg.pins(e);
    for (std::size_t i = 0; i < pins.size(); ++i)
      out << (pins[i] + 1) << (i + 1 < pins.size() ? ' ' : '\n');
  }
  if (vertex_w)
    for (VertexId v = 0; v < hg.num_vertices(); ++v) out << hg.vertex_weight(v) << '\n';
}

// Partition file: one block id per vertex line, ids in [0, k).
inline std::vector<BlockId> read_partition(std::istream& in, VertexId n, int k) {
  std::vector<BlockId> assignment;
  assignment.reserve(n);
  std::string line;
  int line_no = 0;
  while (io_detail::next_content_line(in, line, line_no)) {
    auto numbers = io_detail::parse_numbers(line, line_no);
    require_input(numbers.size() == 1,
                  "line " + std::to_string(line_no) + ": expected one block id");
    require_input(numbers[0] >= 0 && numbers[0] < k,
                  "line " + std::to_string(line_no) + ": block id " +
                      std::to_string(numbers[0]) + " out of range [0, " +
                      std::to_string(k) + ")");
    assignment.push_back(static_cast<BlockId>(numbers[0]));
  }
  require_input(static_cast<VertexId>(assignment.size()) == n,
                "partition file has " + std::to_string(assignment.size()) +
                    " entries, hypergraph has " + std::to_string(n) + " vertices");
  return assignment;
}

inline void write_partition(std::ostream& out, const std::vector<BlockId>& assignment) {
  for (BlockId b : assignment) out << b << '\n';
}

// Every edge becomes a two-pin net. Parallel edges stay parallel nets unless
// merge_parallel is set, in which case their weights are summed.
inline Hypergraph graph_to_hypergraph(VertexId n,
                                      std::vector<std::pair<VertexId, VertexId>> edges,
                                      bool merge_parallel = false,
                                      std::vector<Weight> edge_weights = {}) {
  if (edge_weights.empty()) edge_weights.assign(edges.size(), 1);
  require_input(edge_weights.size() == edges.size(),
                "graph: edge weight count mismatch");
  for (auto& [u, v] : edges) {
    require_input(u >= 0 && u < n && v >= 0 && v < n, "graph: endpoint out of range");
    require_input(u != v, "graph: self loop");
    if (u > v) std::swap(u, v);
  }
  std::vector<std::vector<VertexId>> pins;
  std::vector<Weight> weights;
  if (merge_parallel) {
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return edges[a] < edges[b];
    });
    for (std::size_t idx : order) {
      if (!pins.empty() && pins.back()[0] == edges[idx].first &&
          pins.back()[1] == edges[idx].second) {
        weights.back() += edge_weights[idx];
      } else {
        pins.push_back({edges[idx].first, edges[idx].second});
        weights.push_back(edge_weights[idx]);
      }
    }
  } else {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      pins.push_back({edges[i].first, edges[i].second});
      weights.push_back(edge_weights[i]);
    }
  }
  return Hypergraph(n, std::move(pins), std::move(weights));
}

// Coordinate-format sparse matrix, row-net model: header "rows cols nnz",
// then nnz entries "row col [value]" with 1-based indices. Values are
// ignored; only the pattern matters. Columns become vertices, rows become
// nets. Empty rows are skipped, duplicate entries are dropped with a warning.
inline Hypergraph parse_matrix_rownet(std::istream& in,
                                      std::vector<std::string>* warnings = nullptr) {
  std::string line;
  int line_no = 0;
  require_input(io_detail::next_content_line(in, line, line_no),
                "matrix: missing header line");
  auto header = io_detail::parse_numbers(line, line_no);
  require_input(header.size() == 3,
                "line " + std::to_string(line_no) + ": header must be 'rows cols nnz'");
  const long long rows = header[0], cols = header[1], nnz = header[2];
  require_input(rows >= 0 && cols >= 0 && nnz >= 0,
                "line " + std::to_string(line_no) + ": negative dimension");

  std::vector<std::vector<VertexId>> row_pins(rows);
  for (long long i = 0; i < nnz; ++i) {
    require_input(io_detail::next_content_line(in, line, line_no),
                  "matrix: expected " + std::to_string(nnz) + " entries, got " +
                      std::to_string(i));
    auto numbers = io_detail::parse_numbers(line, line_no);
    require_input(numbers.size() == 2 || numbers.size() == 3,
                  "line " + std::to_string(line_no) + ": entry must be 'row col [value]'");
    require_input(numbers[0] >= 1 && numbers[0] <= rows,
                  "line " + std::to_string(line_no) + ": row index out of range");
    require_input(numbers[1] >= 1 && numbers[1] <= cols,
                  "line " + std::to_string(line_no) + ": column index out of range");
    row_pins[numbers[0] - 1].push_back(static_cast<VertexId>(numbers[1] - 1));
  }
  std::vector<std::vector<VertexId>> pins;
  for (long long r = 0; r < rows; ++r) {
    auto& row = row_pins[r];
    std::size_t before = row.size();
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (warnings && row.size() != before)
      warnings->push_back("row " + std::to_string(r + 1) + ": " +
                          std::to_string(before - row.size()) +
                          " duplicate entries dropped");
    if (row.empty()) {
      if (warnings) warnings->push_back("row " + std::to_string(r + 1) + " is empty, skipped");
      continue;
    }
    pins.push_back(std::move(row));
  }
  return Hypergraph(static_cast<VertexId>(cols), std::move(pins));
}

inline Hypergraph load_hgr_file(const std::string& path,
                                std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path);
  require_input(in.good(), "cannot open file: " + path);
  return parse_hgr(in, warnings);
}

}  // namespace flowpart
