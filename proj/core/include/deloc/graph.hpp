#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deloc/errors.hpp"

namespace deloc {

struct ParseOptions {
  bool allow_self_loops = false;
  bool allow_multi_edges = false;
};

/// Immutable (d+1)-regular graph stored as sorted neighbor lists.
///
/// The degree parameter d (branching factor of the universal covering tree)
/// is degree() - 1 and must be at least 2; 2-regular graphs are rejected
/// because the tree-side normalizations degenerate there.
class RegularGraph {
 public:
  using Edge = std::pair<int, int>;  // u < v

  static RegularGraph from_edges(int vertex_count, std::vector<Edge> edges,
                                 const ParseOptions& opts = {});

  // Edge-list text: one "u v" pair per line, whitespace-separated, 0-based
  // ids, '#' starts a comment.
  static RegularGraph parse_edge_list(std::string_view text,
                                      const ParseOptions& opts = {});
  static RegularGraph load_file(const std::string& path,
                                const ParseOptions& opts = {});

  // Configuration model with full rejection of self-loops and multi-edges;
  // exactly uniform over simple (d+1)-regular graphs, deterministic in seed.
  static RegularGraph random_regular(int n, int d, std::uint64_t seed,
                                     int max_attempts = 1000000);

  // Hamiltonian-cycle-plus-chords construction from an LCF pattern; the
  // pattern is applied cyclically around an n-cycle. Produces cubic graphs.
  static RegularGraph lcf(int n, std::span<const int> pattern);

  int vertex_count() const noexcept { return static_cast<int>(offsets_.size()) - 1; }
  int degree() const noexcept { return degree_; }
  int d() const noexcept { return degree_ - 1; }
  bool simple() const noexcept { return simple_; }

  std::span<const int> neighbors(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  std::vector<Edge> edges() const;  // sorted, u < v
  int edge_count() const noexcept { return static_cast<int>(adj_.size()) / 2; }

  // Sorted "u v" lines; byte-stable for identical graphs.
  std::string to_edge_list() const;
  void save_file(const std::string& path) const;

  // Number of vertices within distance `radius` of `v` (BFS ball, v included).
  int ball_size(int v, int radius) const;

 private:
  RegularGraph() = default;

  std::vector<std::int64_t> offsets_;
  std::vector<int> adj_;
  int degree_ = 0;
  bool simple_ = true;
};

struct GirthReport {
  // Shortest cycle length, absent when no cycle of length <= scan_limit was
  // found (the scan is reported as truncated, not an error).
  std::optional<int> girth;
  // Largest n such that every radius-n ball is a tree; a certified lower
  // bound when the girth scan was truncated.
  int injectivity_radius = 0;
  bool injectivity_exact = true;
  // Largest L <= scan_limit such that no two distinct cycles of length <= L
  // share an edge.
  int max_shared_edge_cycle_bound = 0;
  int scan_limit = 0;
  bool scan_truncated = false;
};

// Exact girth and short-cycle statistics up to scan_limit, via per-vertex
// truncated BFS and per-edge path enumeration.
GirthReport girth_report(const RegularGraph& g, int scan_limit);

}  // namespace deloc
