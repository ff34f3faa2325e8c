#ifndef KWGRAPH_CALCULUS_HPP
#define KWGRAPH_CALCULUS_HPP

#include <cmath>
#include <string>

#include "kwgraph/error.hpp"
#include "kwgraph/graph.hpp"

// Discrete calculus on a weighted graph with vertex measure mu. All inner
// products are mu-weighted: <u, v> = sum_x mu(x) u(x) v(x).

namespace kwgraph {

/// Integral of f against mu: sum_x mu(x) f(x).
inline double integrate(const Graph& g, const VertexFunction& f) {
  detail::require_same_length(g.size(), f.size(), "integrate");
  double s = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) s += g.mu(x) * f[x];
  return s;
}

inline double inner(const Graph& g, const VertexFunction& u, const VertexFunction& v) {
  detail::require_same_length(g.size(), u.size(), "inner");
  detail::require_same_length(g.size(), v.size(), "inner");
  double s = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) s += g.mu(x) * u[x] * v[x];
  return s;
}

inline double l2_norm(const Graph& g, const VertexFunction& u) {
  return std::sqrt(inner(g, u, u));
}

/// (Delta u)(x) = (1/mu(x)) sum_{y~x} w_xy (u(y) - u(x)).
inline VertexFunction laplacian(const Graph& g, const VertexFunction& u) {
  detail::require_same_length(g.size(), u.size(), "laplacian");
  VertexFunction out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    double s = 0.0;
    for (const Neighbor& nb : g.neighbors(x)) s += nb.w * (u[nb.index] - u[x]);
    out[x] = s / g.mu(x);
  }
  return out;
}

/// Gradient form Gamma(u, v)(x); gamma(g, u, u) is |grad u|^2.
inline VertexFunction gamma(const Graph& g, const VertexFunction& u, const VertexFunction& v) {
  detail::require_same_length(g.size(), u.size(), "gamma");
  detail::require_same_length(g.size(), v.size(), "gamma");
  VertexFunction out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    double s = 0.0;
    for (const Neighbor& nb : g.neighbors(x)) {
      s += nb.w * (u[nb.index] - u[x]) * (v[nb.index] - v[x]);
    }
    out[x] = s / (2.0 * g.mu(x));
  }
  return out;
}

/// Integral of |grad u|^2, evaluated edgewise (one term per edge).
inline double dirichlet_energy(const Graph& g, const VertexFunction& u) {
  detail::require_same_length(g.size(), u.size(), "dirichlet_energy");
  double s = 0.0;
  for (const Edge& e : g.edges()) {
    const double d = u[e.j] - u[e.i];
    s += e.w * d * d;
  }
  return s;
}

/// Bilinear Dirichlet form: integral of Gamma(u, v).
inline double dirichlet_form(const Graph& g, const VertexFunction& u, const VertexFunction& v) {
  detail::require_same_length(g.size(), u.size(), "dirichlet_form");
  detail::require_same_length(g.size(), v.size(), "dirichlet_form");
  double s = 0.0;
  for (const Edge& e : g.edges()) s += e.w * (u[e.j] - u[e.i]) * (v[e.j] - v[e.i]);
  return s;
}

/// Subtracts the mu-mean; the result lies in H (mean zero).
inline VertexFunction project_mean_zero(const Graph& g, const VertexFunction& f) {
  const double mean = integrate(g, f) / g.volume();
  VertexFunction out = f;
  out += -mean;
  return out;
}

/// sqrt of the integral of |grad u|^2 - alpha u^2.
///
/// `lambda` is the bottom of the spectrum on the subspace u lives in
/// (lambda_1 for H, lambda_{k+1} for the complement of E_k); the expression is
/// a norm only for alpha < lambda.
inline double norm_one_alpha(const Graph& g, const VertexFunction& u, double alpha,
                             double lambda) {
  if (!(alpha < lambda)) {
    throw Error(ErrorKind::Domain, "norm_one_alpha: alpha = " + std::to_string(alpha) +
                                       " is not below lambda = " + std::to_string(lambda) +
                                       "; not a norm");
  }
  const double energy = dirichlet_energy(g, u);
  const double mass = inner(g, u, u);
  const double radicand = energy - alpha * mass;
  // Rounding slack relative to the size of the two terms.
  if (radicand < -1e-12 * (energy + std::abs(alpha) * mass)) {
    throw Error(ErrorKind::Domain,
                "norm_one_alpha: negative radicand, u is outside the stated subspace");
  }
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace kwgraph

#endif  // KWGRAPH_CALCULUS_HPP
