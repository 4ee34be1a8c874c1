#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "deloc/graph.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace deloc;
namespace fx = deloc::fixtures;

namespace {

RegularGraph relabel(const RegularGraph& g, std::uint64_t seed) {
  std::vector<int> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = perm.size() - 1; i > 0; --i)
    std::swap(perm[i], perm[rng() % (i + 1)]);
  std::vector<RegularGraph::Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return RegularGraph::from_edges(g.vertex_count(), std::move(edges));
}

}  // namespace

TEST_CASE("edge list parsing accepts comments and validates structure") {
  const auto g = RegularGraph::parse_edge_list(
      "# complete graph on four vertices\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  CHECK(g.vertex_count() == 4);
  CHECK(g.degree() == 3);
  CHECK(g.d() == 2);
  CHECK(g.edge_count() == 6);
}

TEST_CASE("edge list parsing rejects malformed input") {
  CHECK_THROWS_AS((void)RegularGraph::parse_edge_list(""), error);
  CHECK_THROWS_AS((void)RegularGraph::parse_edge_list("0 1 2\n"), error);
  CHECK_THROWS_AS((void)RegularGraph::parse_edge_list("0 zebra\n"),
                  std::exception);

  try {
    (void)RegularGraph::parse_edge_list("0 0\n0 1\n1 2\n2 0\n");
    FAIL("self-loop accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::self_loop);
  }

  try {
    (void)RegularGraph::parse_edge_list("0 1\n1 0\n0 2\n1 2\n");
    FAIL("duplicate edge accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::duplicate_edge);
  }
}

TEST_CASE("degree validation distinguishes non-regular and unsupported degree") {
  // Path-like tail breaks regularity.
  try {
    (void)RegularGraph::parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n");
    FAIL("non-regular graph accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::non_regular);
  }
  // A plain cycle is 2-regular: d = 1 is outside the supported range.
  try {
    (void)RegularGraph::parse_edge_list("0 1\n1 2\n2 0\n");
    FAIL("2-regular graph accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::unsupported_degree);
  }
}

TEST_CASE("named fixtures have the expected shape") {
  const auto petersen = fx::petersen();
  CHECK(petersen.vertex_count() == 10);
  CHECK(petersen.d() == 2);
  CHECK(petersen.edge_count() == 15);

  const auto parsed = RegularGraph::parse_edge_list(petersen.to_edge_list());
  CHECK(parsed.edges() == petersen.edges());

  CHECK(fx::k33().d() == 2);
  CHECK(fx::k5().d() == 3);
  CHECK(fx::heawood().vertex_count() == 14);
  CHECK(fx::mcgee().vertex_count() == 24);
  CHECK(fx::tutte_coxeter().vertex_count() == 30);
}

TEST_CASE("random regular generation is valid, deterministic, and guarded") {
  const auto g = RegularGraph::random_regular(10, 2, 1);
  CHECK(g.vertex_count() == 10);
  for (int v = 0; v < g.vertex_count(); ++v)
    CHECK(g.neighbors(v).size() == 3);

  const auto again = RegularGraph::random_regular(10, 2, 1);
  CHECK(g.to_edge_list() == again.to_edge_list());
  const auto other = RegularGraph::random_regular(10, 2, 2);
  CHECK(g.to_edge_list() != other.to_edge_list());

  try {
    (void)RegularGraph::random_regular(5, 2, 1);
    FAIL("odd stub count accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::parity);
  }
  CHECK_THROWS_AS((void)RegularGraph::random_regular(4, 4, 1), error);
  try {
    (void)RegularGraph::random_regular(10, 2, 1, /*max_attempts=*/0);
    FAIL("zero attempts succeeded");
  } catch (const error& e) {
    CHECK(e.code() == errc::rejection_limit_exceeded);
  }
}

TEST_CASE("degree regularity holds across generated sizes and degrees") {
  for (auto [n, d, seed] : {std::tuple{24, 2, 11}, {50, 3, 12}, {40, 4, 13},
                            {101, 3, 14}}) {
    const auto g = RegularGraph::random_regular(n, d, seed);
    for (int v = 0; v < g.vertex_count(); ++v)
      REQUIRE(static_cast<int>(g.neighbors(v).size()) == d + 1);
  }
}

TEST_CASE("girth scan reproduces known girths") {
  auto check = [](const RegularGraph& g, int girth) {
    const auto rep = girth_report(g, 12);
    REQUIRE(rep.girth.has_value());
    CHECK(*rep.girth == girth);
    CHECK(rep.injectivity_radius == (girth - 1) / 2);
    CHECK(rep.injectivity_exact);
    CHECK(rep.max_shared_edge_cycle_bound >= girth - 1);
  };
  check(fx::k4(), 3);
  check(fx::prism(), 3);
  check(fx::k33(), 4);
  check(fx::cube(), 4);
  check(fx::petersen(), 5);
  check(fx::dodecahedron(), 5);
  check(fx::heawood(), 6);
  check(fx::mcgee(), 7);
  check(fx::tutte_coxeter(), 8);
}

TEST_CASE("shared-edge cycle bound matches hand counts") {
  // Every K4 edge lies on two triangles; every Petersen edge on several
  // pentagon pairs.
  CHECK(girth_report(fx::k4(), 10).max_shared_edge_cycle_bound == 2);
  CHECK(girth_report(fx::petersen(), 10).max_shared_edge_cycle_bound == 4);
}

TEST_CASE("truncated scan reports a certified lower bound instead of failing") {
  const auto rep = girth_report(fx::tutte_coxeter(), 7);  // girth is 8
  CHECK(!rep.girth.has_value());
  CHECK(rep.scan_truncated);
  CHECK(!rep.injectivity_exact);
  CHECK(rep.injectivity_radius == 3);  // floor((7-1)/2), and exact here
}

TEST_CASE("girth scan is invariant under vertex relabeling") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const auto base = girth_report(fx::petersen(), 12);
    const auto shuffled = girth_report(relabel(fx::petersen(), seed), 12);
    CHECK(base.girth == shuffled.girth);
    CHECK(base.injectivity_radius == shuffled.injectivity_radius);
    CHECK(base.max_shared_edge_cycle_bound ==
          shuffled.max_shared_edge_cycle_bound);
  }
  const auto g = RegularGraph::random_regular(60, 2, 21);
  const auto a = girth_report(g, 10);
  const auto b = girth_report(relabel(g, 99), 10);
  CHECK(a.girth == b.girth);
  CHECK(a.max_shared_edge_cycle_bound == b.max_shared_edge_cycle_bound);
}

TEST_CASE("balls below the injectivity radius have tree sizes") {
  for (const auto& g : {fx::petersen(), fx::heawood(), fx::mcgee(),
                        fx::tutte_coxeter()}) {
    const auto rep = girth_report(g, 12);
    const int d = g.d();
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (int radius = 0; radius <= rep.injectivity_radius; ++radius) {
        long long expect = 1;
        long long shell = d + 1;
        for (int i = 1; i <= radius; ++i) {
          expect += shell;
          shell *= d;
        }
        REQUIRE(g.ball_size(v, radius) == expect);
      }
    }
  }
}

TEST_CASE("generated graphs at scale have girth at least 3") {
  const auto g = RegularGraph::random_regular(1000, 2, 7);
  const auto rep = girth_report(g, 10);
  REQUIRE(rep.girth.has_value());
  CHECK(*rep.girth >= 3);
}

TEST_CASE("permissive ingestion keeps loops out of analysis") {
  ParseOptions permissive;
  permissive.allow_self_loops = true;
  permissive.allow_multi_edges = true;
  // 3-regular multigraph: loops at 0 and 3, a doubled 1-2 edge.
  const auto g = RegularGraph::parse_edge_list("0 0\n0 1\n1 2\n1 2\n2 3\n3 3\n",
                                               permissive);
  CHECK(!g.simple());
  CHECK_THROWS_AS((void)girth_report(g, 8), error);
}
