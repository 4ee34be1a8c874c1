#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "deloc/graph.hpp"

namespace deloc::fixtures {

// Named cubic graphs with known girths; the high-girth cages exercise the
// tree regime (every short ball is a tree) at several injectivity radii.

inline RegularGraph petersen() {
  std::vector<RegularGraph::Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return RegularGraph::from_edges(10, std::move(edges));
}

inline RegularGraph k4() {
  return RegularGraph::from_edges(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

inline RegularGraph k5() {
  std::vector<RegularGraph::Edge> edges;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
  return RegularGraph::from_edges(5, std::move(edges));
}

inline RegularGraph k33() {
  std::vector<RegularGraph::Edge> edges;
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) edges.emplace_back(i, j);
  return RegularGraph::from_edges(6, std::move(edges));
}

inline RegularGraph prism() {
  return RegularGraph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5},
                                      {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

inline RegularGraph cube() {
  constexpr std::array<int, 2> pattern{3, -3};
  return RegularGraph::lcf(8, pattern);
}

inline RegularGraph heawood() {  // girth 6
  constexpr std::array<int, 2> pattern{5, -5};
  return RegularGraph::lcf(14, pattern);
}

inline RegularGraph mcgee() {  // girth 7
  constexpr std::array<int, 3> pattern{12, 7, -7};
  return RegularGraph::lcf(24, pattern);
}

inline RegularGraph tutte_coxeter() {  // girth 8
  constexpr std::array<int, 6> pattern{-13, -9, 7, -7, 9, 13};
  return RegularGraph::lcf(30, pattern);
}

inline RegularGraph dodecahedron() {  // girth 5
  constexpr std::array<int, 10> pattern{10, 7, 4, -4, -7, 10, -4, 7, -7, 4};
  return RegularGraph::lcf(20, pattern);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  // Explicit mapping keeps sampled test inputs identical across platforms.
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline long long uniform_int(std::mt19937_64& gen, long long lo, long long hi) {
  return lo + static_cast<long long>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace deloc::fixtures
