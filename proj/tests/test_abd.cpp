#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "abd.hpp"
#include "gen.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace mm;
using namespace mm::test;

TEST_CASE("base dag of the length-3 path") {
  MatchingSystem ms = make_system(4, {{0, 1}, {1, 2}, {2, 3}}, {{1, 2}});
  DistTable dt = compute_dist(ms);
  Abd h = build_abd(ms, dt);
  CHECK(h.out[1] == std::vector<VertexId>{0});
  CHECK(h.out[2] == std::vector<VertexId>{3});
  CHECK(h.out[0].empty());
  CHECK(h.sink[0]);
  CHECK(h.sink[3]);
  CHECK(h.phi == std::vector<int>{2, 3, 3, 2});
}

TEST_CASE("candidates: critical volume, non-predecessor, ordered") {
  SUBCASE("length-3 path") {
    MatchingSystem ms = make_system(4, {{0, 1}, {1, 2}, {2, 3}}, {{1, 2}});
    DistTable dt = compute_dist(ms);
    CHECK(candidate_edges(ms, dt, 1) == std::vector<EdgeId>{*ms.g.find_edge(1, 2)});
    CHECK(candidate_edges(ms, dt, 0).empty());
  }
  SUBCASE("single free edge") {
    MatchingSystem ms = make_system(2, {{0, 1}});
    DistTable dt = compute_dist(ms);
    CHECK(candidate_edges(ms, dt, 0) == std::vector<EdgeId>{0});
  }
  SUBCASE("5-cycle: the cross edge is critical but there is no pair of sinks") {
    MatchingSystem ms =
        make_system(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {{1, 2}, {3, 4}});
    DistTable dt = compute_dist(ms);
    CHECK(candidate_edges(ms, dt, 2) == std::vector<EdgeId>{*ms.g.find_edge(2, 3)});
  }
}

TEST_CASE("double search succeeds across the length-3 path") {
  MatchingSystem ms = make_system(4, {{0, 1}, {1, 2}, {2, 3}}, {{1, 2}});
  DistTable dt = compute_dist(ms);
  Abd h = build_abd(ms, dt);
  WorkingDag wd(h);
  DdfsOutcome o = ddfs_once(wd, 1, 2, h.phi);
  REQUIRE(o.success);
  CHECK(o.p == std::vector<VertexId>{1, 0});
  CHECK(o.q == std::vector<VertexId>{2, 3});
}

TEST_CASE("double search bottleneck on a hand-built dag") {
  // y and z can only reach the lone sink u through x
  Abd h;
  h.n = 4;  // 0=u sink, 1=x, 2=y, 3=z
  h.out = {{}, {0}, {1}, {1}};
  h.in = {{1}, {2, 3}, {}, {}};
  h.in_dag = {1, 1, 1, 1};
  h.sink = {1, 0, 0, 0};
  h.phi = {2, 3, 4, 4};
  WorkingDag wd(h);
  DdfsOutcome o = ddfs_once(wd, 2, 3, h.phi);
  CHECK(!o.success);
  CHECK(o.bottleneck == 1);
  CHECK(o.omissible == std::vector<VertexId>{2, 3});

  SUBCASE("after shrinking, both endpoints identify and the edge is skipped") {
    wd.shrink({2, 3}, 1);
    CHECK(wd.find(2) == 1);
    CHECK(wd.find(3) == 1);
    CHECK(wd.members(1).size() == 3);
  }

  SUBCASE("trace names the events") {
    std::ostringstream tr;
    wd.trace = &tr;
    ddfs_once(wd, 2, 3, h.phi);
    CHECK(tr.str().find("bottleneck 1") != std::string::npos);
    CHECK(tr.str().find("advance") != std::string::npos);
  }
}

TEST_CASE("removal closes over vertices with no remaining sink path") {
  // chain y -> x -> u plus sink w reachable only from x
  Abd h;
  h.n = 4;  // 0=u sink, 1=x, 2=y, 3=w sink
  h.out = {{}, {0, 3}, {1}, {}};
  h.in = {{1}, {2}, {}, {1}};
  h.in_dag = {1, 1, 1, 1};
  h.sink = {1, 0, 0, 1};
  h.phi = {2, 3, 4, 2};
  WorkingDag wd(h);
  wd.remove_and_close({0, 3});  // both sinks gone: x then y must die
  CHECK(wd.removed(1));
  CHECK(wd.removed(2));
}

TEST_CASE("maximal double paths on frozen examples") {
  SUBCASE("length-3 path") {
    MatchingSystem ms = make_system(4, {{0, 1}, {1, 2}, {2, 3}}, {{1, 2}});
    DistTable dt = compute_dist(ms);
    Abd h = build_abd(ms, dt);
    WorkingDag wd(h);
    auto dps = maximal_double_paths(wd, ms, candidate_edges(ms, dt, 1));
    REQUIRE(dps.size() == 1);
    CHECK(dps[0].y == 1);
    CHECK(dps[0].z == 2);
    auto paths = aug_from_double_paths(ms, dt, dps);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].verts == std::vector<VertexId>{0, 1, 2, 3});
  }
  SUBCASE("two disjoint free edges both augment") {
    MatchingSystem ms = make_system(4, {{0, 1}, {2, 3}});
    DistTable dt = compute_dist(ms);
    Abd h = build_abd(ms, dt);
    WorkingDag wd(h);
    auto dps = maximal_double_paths(wd, ms, candidate_edges(ms, dt, 0));
    CHECK(dps.size() == 2);
  }
  SUBCASE("triangle of free vertices yields exactly one") {
    MatchingSystem ms = make_system(3, {{0, 1}, {1, 2}, {2, 0}});
    DistTable dt = compute_dist(ms);
    Abd h = build_abd(ms, dt);
    WorkingDag wd(h);
    auto dps = maximal_double_paths(wd, ms, candidate_edges(ms, dt, 0));
    REQUIRE(dps.size() == 1);
    auto paths = aug_from_double_paths(ms, dt, dps);
    REQUIRE(is_maximal_disjoint_shortest_set(ms, paths));
  }
}

TEST_CASE("collected double paths convert to a maximal disjoint shortest set") {
  Rng rng(31);
  int nonempty = 0;
  for (int it = 0; it < 300; ++it) {
    int n = 4 + static_cast<int>(rng_below(rng, 8));  // 4..11
    Graph g = gen_gnp(n, 0.35, rng);
    Matching m = gen_random_matching(g, 0.55, rng);
    MatchingSystem ms{g, m};
    DistTable dt = compute_dist(ms);
    auto l = shortest_aug_length(ms, dt);
    int free_count = static_cast<int>(m.free_vertices().size());
    if (!l || free_count <= 1) continue;
    Abd h = build_abd(ms, dt);
    WorkingDag wd(h);
    auto dps = maximal_double_paths(wd, ms, candidate_edges(ms, dt, *l));
    auto paths = aug_from_double_paths(ms, dt, dps);
    nonempty += !paths.empty();
    REQUIRE(is_maximal_disjoint_shortest_set(ms, paths));
  }
  CHECK(nonempty > 50);
}
