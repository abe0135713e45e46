#include <doctest.h>

#include <cmath>

#include "curbplan/geo.hpp"
#include "curbplan/random.hpp"
#include "oracle.hpp"

using namespace curbplan;
using namespace curbplan::geo;

namespace {

PedestrianGraph random_graph(Rng& rng, int max_nodes = 8) {
  PedestrianGraph g;
  const int n = rng.uniform_int(2, max_nodes);
  std::vector<Point> pos(n);
  for (int i = 0; i < n; ++i) {
    pos[i] = {rng.uniform(-80.0, 80.0), rng.uniform(-80.0, 80.0)};
    g.nodes[i + 1] = pos[i];
  }
  for (int i = 1; i < n; ++i) {
    const int parent = rng.uniform_int(0, i - 1);
    g.edges.push_back(
        {i + 1, parent + 1, euclidean_distance(pos[i], pos[parent]) * rng.uniform(1.0, 1.4)});
  }
  const int extra = rng.uniform_int(0, 3);
  for (int k = 0; k < extra; ++k) {
    const int a = rng.uniform_int(0, n - 1);
    const int b = rng.uniform_int(0, n - 1);
    if (a == b) continue;
    g.edges.push_back(
        {a + 1, b + 1, euclidean_distance(pos[a], pos[b]) * rng.uniform(1.0, 1.4)});
  }
  return g;
}

}  // namespace

TEST_CASE("project_to_local") {
  const auto origin = project_to_local(34.42, -119.7, 34.42, -119.7);
  CHECK(origin.x == 0.0);
  CHECK(origin.y == 0.0);

  const auto north = project_to_local(34.421, -119.7, 34.42, -119.7);
  CHECK(north.y == doctest::Approx(111.32).epsilon(1e-9));
  CHECK(north.x == 0.0);

  const auto equator = project_to_local(0.0, 0.001, 0.0, 0.0);
  CHECK(equator.x == doctest::Approx(111.32).epsilon(1e-12));
  CHECK(equator.y == 0.0);

  CHECK_THROWS_AS(project_to_local(34.48, -119.7, 34.42, -119.7), std::invalid_argument);
  CHECK_THROWS_AS(project_to_local(34.42, -119.6, 34.42, -119.7), std::invalid_argument);
}

TEST_CASE("projection round trips through to_geographic") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Point p{rng.uniform(-900.0, 900.0), rng.uniform(-900.0, 900.0)};
    const auto c = to_geographic(p, 37.77, -122.42);
    const auto back = project_to_local(c.lat, c.lon, 37.77, -122.42);
    CHECK(back.x == doctest::Approx(p.x).epsilon(1e-9));
    CHECK(back.y == doctest::Approx(p.y).epsilon(1e-9));
  }
}

TEST_CASE("euclidean_distance") {
  CHECK(euclidean_distance({0, 0}, {0, 0}) == 0.0);
  CHECK(euclidean_distance({0, 0}, {3, 4}) == 5.0);
  CHECK(euclidean_distance({-1, -1}, {2, 3}) == 5.0);
}

TEST_CASE("snap_to_graph") {
  PedestrianGraph g;
  g.nodes[2] = {0, 5};
  g.nodes[7] = {0, -5};

  SUBCASE("exact node position") {
    const auto s = snap_to_graph({0, 5}, g, 50.0);
    REQUIRE(s.has_value());
    CHECK(s->node_id == 2);
    CHECK(s->distance == 0.0);
  }
  SUBCASE("equidistant tie goes to the lowest id") {
    const auto s = snap_to_graph({0, 0}, g, 50.0);
    REQUIRE(s.has_value());
    CHECK(s->node_id == 2);
    CHECK(s->distance == 5.0);
  }
  SUBCASE("beyond tolerance is unsnappable") {
    CHECK_FALSE(snap_to_graph({60, 5}, g, 50.0).has_value());
  }
  SUBCASE("exactly at tolerance still snaps") {
    const auto s = snap_to_graph({50, 5}, g, 50.0);
    REQUIRE(s.has_value());
    CHECK(s->distance == 50.0);
  }
}

TEST_CASE("walk_distance fallback and network") {
  SUBCASE("empty graph uses the 1.4x fallback") {
    PedestrianGraph g;
    const auto w = walk_distance({0, 0}, {60, 80}, g);
    CHECK(w.distance == 140.0);
    CHECK(w.method == WalkMethod::euclidean_fallback);
  }
  SUBCASE("path graph A-B-C") {
    PedestrianGraph g;
    g.nodes[1] = {0, 0};
    g.nodes[2] = {50, 0};
    g.nodes[3] = {50, 70};
    g.edges.push_back({1, 2, 50.0});
    g.edges.push_back({2, 3, 70.0});
    const auto w = walk_distance({0, 0}, {50, 70}, g);
    CHECK(w.distance == 120.0);
    CHECK(w.method == WalkMethod::network);
  }
  SUBCASE("coincident endpoints on a node") {
    PedestrianGraph g;
    g.nodes[1] = {10, 10};
    g.nodes[2] = {40, 10};
    g.edges.push_back({1, 2, 30.0});
    const auto w = walk_distance({10, 10}, {10, 10}, g);
    CHECK(w.distance == 0.0);
    CHECK(w.method == WalkMethod::network);
  }
  SUBCASE("disconnected components fall back") {
    PedestrianGraph g;
    g.nodes[1] = {0, 0};
    g.nodes[2] = {10, 0};
    g.nodes[3] = {100, 0};
    g.nodes[4] = {110, 0};
    g.edges.push_back({1, 2, 10.0});
    g.edges.push_back({3, 4, 10.0});
    const auto w = walk_distance({0, 0}, {110, 0}, g);
    CHECK(w.method == WalkMethod::euclidean_fallback);
    CHECK(w.distance == 1.4 * 110.0);
  }
  SUBCASE("unsnappable endpoint falls back") {
    PedestrianGraph g;
    g.nodes[1] = {0, 0};
    g.nodes[2] = {10, 0};
    g.edges.push_back({1, 2, 10.0});
    const auto w = walk_distance({0, 1}, {500, 0}, g);
    CHECK(w.method == WalkMethod::euclidean_fallback);
  }
}

TEST_CASE("fallback is exactly 1.4x the straight-line distance") {
  Rng rng(23);
  PedestrianGraph empty;
  for (int i = 0; i < 500; ++i) {
    const Point p{rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0)};
    const Point e{rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0)};
    const auto w = walk_distance(p, e, empty);
    CHECK(w.distance == 1.4 * euclidean_distance(p, e));
  }
}

TEST_CASE("walk_distance is symmetric") {
  Rng rng(31);
  for (int iter = 0; iter < 200; ++iter) {
    Rng gr(rng.raw());
    const auto g = random_graph(gr);
    const Point p{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    const Point e{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    const auto a = walk_distance(p, e, g);
    const auto b = walk_distance(e, p, g);
    CHECK(a.distance == b.distance);
    CHECK(a.method == b.method);
  }
}

TEST_CASE("network distance respects the snapped-node straight line") {
  Rng rng(37);
  for (int iter = 0; iter < 200; ++iter) {
    Rng gr(rng.raw());
    const auto g = random_graph(gr);
    const Point p{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    const Point e{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    const auto sp = snap_to_graph(p, g, 1e9);
    const auto se = snap_to_graph(e, g, 1e9);
    REQUIRE(sp.has_value());
    REQUIRE(se.has_value());
    const auto path = shortest_path(g, sp->node_id, se->node_id);
    if (!path) continue;
    CHECK(*path >=
          euclidean_distance(g.nodes.at(sp->node_id), g.nodes.at(se->node_id)) - 1e-6);
  }
}

TEST_CASE("dijkstra matches exhaustive path enumeration on small graphs") {
  Rng rng(41);
  for (int iter = 0; iter < 300; ++iter) {
    Rng gr(rng.raw());
    const auto g = random_graph(gr);
    const int n = static_cast<int>(g.nodes.size());
    const int from = rng.uniform_int(1, n);
    const int to = rng.uniform_int(1, n);
    const auto fast = shortest_path(g, std::min(from, to), std::max(from, to));
    const auto brute =
        oracle::enumerate_shortest_path(g, std::min(from, to), std::max(from, to));
    CHECK(fast.has_value() == brute.has_value());
    if (fast && brute) CHECK(*fast == *brute);
  }
}

TEST_CASE("polyline length and interpolation") {
  const Polyline line{{{0, 0}, {10, 0}, {10, 10}}};
  CHECK(line.length() == 20.0);
  const auto mid = point_at_arc_length(line, 15.0);
  CHECK(mid.x == doctest::Approx(10.0));
  CHECK(mid.y == doctest::Approx(5.0));
  const auto start = point_at_arc_length(line, -3.0);
  CHECK(start.x == 0.0);
  const auto past = point_at_arc_length(line, 99.0);
  CHECK(past.y == 10.0);

  CHECK(distance_to_polyline({5, 3}, line) == doctest::Approx(3.0));
  CHECK(distance_to_polyline({0, 0}, line) == 0.0);
  CHECK(distance_to_polyline({20, 10}, line) == doctest::Approx(10.0));
}
