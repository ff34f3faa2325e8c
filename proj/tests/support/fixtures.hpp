#ifndef KWGRAPH_TESTS_FIXTURES_HPP
#define KWGRAPH_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <vector>

#include "kwgraph/graph.hpp"
#include "kwgraph/spectral.hpp"

namespace kwgraph::testing {

inline Graph make_k2(double h_a = 1.0, double h_b = 1.0) {
  return Graph({"a", "b"}, {1.0, 1.0}, {h_a, h_b}, {{0, 1, 1.0}});
}

inline Graph make_p3(std::vector<double> h = {1.0, 1.0, 1.0}) {
  return Graph({"a", "b", "c"}, {1.0, 1.0, 1.0}, std::move(h), {{0, 1, 1.0}, {1, 2, 1.0}});
}

inline Graph make_k3() {
  return Graph({"a", "b", "c"}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0},
               {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
}

struct RandomGraphSpec {
  std::size_t min_vertices = 3;
  std::size_t max_vertices = 40;
  double extra_edge_prob = 0.15;
  double lo = 0.1;  // mu, w and h are drawn uniformly from [lo, hi]
  double hi = 10.0;
  bool random_h = true;
};

/// Random connected graph: a random spanning tree plus independent extra edges.
inline Graph random_connected_graph(std::mt19937_64& rng, const RandomGraphSpec& s = {}) {
  std::uniform_int_distribution<std::size_t> size_dist(s.min_vertices, s.max_vertices);
  std::uniform_real_distribution<double> value(s.lo, s.hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::size_t n = size_dist(rng);

  std::vector<std::string> ids;
  std::vector<double> mu;
  std::vector<double> h;
  for (std::size_t x = 0; x < n; ++x) {
    ids.push_back("v" + std::to_string(x));
    mu.push_back(value(rng));
    h.push_back(s.random_h ? value(rng) : 1.0);
  }
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (std::size_t x = 1; x < n; ++x) {
    std::uniform_int_distribution<std::size_t> parent(0, x - 1);
    const std::size_t p = parent(rng);
    edges.push_back({p, x, value(rng)});
    used[p][x] = used[x][p] = true;
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!used[x][y] && coin(rng) < s.extra_edge_prob) {
        edges.push_back({x, y, value(rng)});
        used[x][y] = used[y][x] = true;
      }
    }
  }
  return Graph(std::move(ids), std::move(mu), std::move(h), std::move(edges));
}

inline VertexFunction random_function(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                      double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  VertexFunction f(n);
  for (double& v : f) v = d(rng);
  return f;
}

}  // namespace kwgraph::testing

#endif  // KWGRAPH_TESTS_FIXTURES_HPP
