#ifndef KWGRAPH_SPECTRAL_HPP
#define KWGRAPH_SPECTRAL_HPP

#include <cmath>
#include <string>
#include <vector>

#include "kwgraph/calculus.hpp"
#include "kwgraph/dense.hpp"
#include "kwgraph/error.hpp"
#include "kwgraph/graph.hpp"

namespace kwgraph {

inline constexpr double kDefaultGroupingTol = 1e-8;

/// Eigendecomposition of -Delta in the mu-inner product, grouped into
/// distinct eigenvalues 0 = lambda_0 < lambda_1 < ... < lambda_{m-1}.
///
/// bases[k] is a mu-orthonormal basis of the lambda_k eigenspace; the union
/// over all k is mu-orthonormal, and bases[0] holds the constant
/// Vol(V)^{-1/2}. E_k is the span of bases[1..k]; its complement inside H
/// (written E_k-perp) is the span of bases[k+1..m-1].
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<std::vector<VertexFunction>> bases;
  double grouping_tol = kDefaultGroupingTol;

  /// Number of distinct eigenvalues, including 0.
  std::size_t m() const noexcept { return eigenvalues.size(); }
  double lambda(std::size_t k) const { return eigenvalues.at(k); }
  const std::vector<VertexFunction>& basis(std::size_t k) const { return bases.at(k); }
  std::size_t multiplicity(std::size_t k) const { return bases.at(k).size(); }

  std::vector<std::size_t> multiplicities() const {
    std::vector<std::size_t> out;
    for (const auto& b : bases) out.push_back(b.size());
    return out;
  }

  /// Flattened basis of E_k-perp: every eigenvector with group index > k.
  std::vector<VertexFunction> complement_basis(std::size_t k) const {
    std::vector<VertexFunction> out;
    for (std::size_t s = k + 1; s < bases.size(); ++s)
      out.insert(out.end(), bases[s].begin(), bases[s].end());
    return out;
  }
};

namespace detail {

inline void normalize_sign(VertexFunction& v) {
  const double cutoff = 1e-10 * v.sup_norm();
  for (double x : v) {
    if (std::abs(x) > cutoff) {
      if (x < 0.0) v *= -1.0;
      return;
    }
  }
}

inline void require_subspace_index(const Spectrum& spec, std::size_t k, const char* where) {
  if (k >= spec.m()) {
    throw Error(ErrorKind::OutOfRange, std::string(where) + ": k = " + std::to_string(k) +
                                           " out of range [0, " +
                                           std::to_string(spec.m() - 1) + "]");
  }
}

}  // namespace detail

/// Full eigendecomposition of -Delta.
///
/// Solves L u = lambda M u (L the weighted combinatorial Laplacian, M =
/// diag(mu)) by diagonalizing M^{-1/2} L M^{-1/2} with cyclic Jacobi and
/// mapping back through M^{-1/2}. Eigenvalues within grouping_tol * max|lambda|
/// of their neighbour are merged, and each merged basis is re-orthonormalized.
inline Spectrum compute_spectrum(const Graph& g, double grouping_tol = kDefaultGroupingTol) {
  if (!(grouping_tol > 0.0)) {
    throw Error(ErrorKind::Domain, "compute_spectrum: grouping_tol must be positive");
  }
  if (auto violations = validate(g); !violations.empty()) {
    throw Error(ErrorKind::Validation, join_violations(violations));
  }
  const std::size_t n = g.size();

  std::vector<double> inv_sqrt_mu(n);
  for (std::size_t x = 0; x < n; ++x) inv_sqrt_mu[x] = 1.0 / std::sqrt(g.mu(x));

  dense::Matrix a(n);
  for (const Edge& e : g.edges()) {
    const double off = -e.w * inv_sqrt_mu[e.i] * inv_sqrt_mu[e.j];
    a(e.i, e.j) += off;
    a(e.j, e.i) += off;
    a(e.i, e.i) += e.w * inv_sqrt_mu[e.i] * inv_sqrt_mu[e.i];
    a(e.j, e.j) += e.w * inv_sqrt_mu[e.j] * inv_sqrt_mu[e.j];
  }
  const dense::SymmetricEigen eig = dense::jacobi_eigen(std::move(a));

  double scale = 0.0;
  for (double l : eig.values) scale = std::max(scale, std::abs(l));
  const double merge_gap = grouping_tol * scale;

  // Group consecutive eigenvalues; groups[k] lists column indices.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < n; ++j) {
    if (groups.empty() || eig.values[j] - eig.values[j - 1] > merge_gap) groups.emplace_back();
    groups.back().push_back(j);
  }

  Spectrum spec;
  spec.grouping_tol = grouping_tol;
  std::vector<VertexFunction> accepted;  // running orthonormal set, for MGS
  for (std::size_t k = 0; k < groups.size(); ++k) {
    double lambda = 0.0;
    std::vector<VertexFunction> basis;
    for (std::size_t idx = 0; idx < groups[k].size(); ++idx) {
      const std::size_t j = groups[k][idx];
      lambda += eig.values[j];
      VertexFunction u(n);
      if (k == 0 && idx == 0) {
        // Exact kernel vector of a connected graph.
        u = g.constant(1.0 / std::sqrt(g.volume()));
      } else {
        for (std::size_t x = 0; x < n; ++x) u[x] = eig.vectors(x, j) * inv_sqrt_mu[x];
        // Two passes of modified Gram-Schmidt against everything accepted so far.
        for (int pass = 0; pass < 2; ++pass) {
          for (const VertexFunction& q : accepted) u.axpy(-inner(g, u, q), q);
        }
        u *= 1.0 / l2_norm(g, u);
        detail::normalize_sign(u);
      }
      accepted.push_back(u);
      basis.push_back(std::move(u));
    }
    spec.eigenvalues.push_back(k == 0 ? 0.0 : lambda / static_cast<double>(groups[k].size()));
    spec.bases.push_back(std::move(basis));
  }
  return spec;
}

/// mu-orthogonal projection onto E_k = span of the eigenspaces 1..k.
inline VertexFunction project_Ek(const Spectrum& spec, const Graph& g, const VertexFunction& f,
                                 std::size_t k) {
  detail::require_same_length(g.size(), f.size(), "project_Ek");
  detail::require_subspace_index(spec, k, "project_Ek");
  VertexFunction out(g.size());
  for (std::size_t s = 1; s <= k; ++s)
    for (const VertexFunction& q : spec.bases[s]) out.axpy(inner(g, f, q), q);
  return out;
}

/// mu-orthogonal projection onto E_k-perp, expanded in the eigenspaces
/// k+1..m-1. k = 0 projects onto H; k = m-1 gives the zero function.
inline VertexFunction project_Ek_perp(const Spectrum& spec, const Graph& g,
                                      const VertexFunction& f, std::size_t k) {
  detail::require_same_length(g.size(), f.size(), "project_Ek_perp");
  detail::require_subspace_index(spec, k, "project_Ek_perp");
  VertexFunction out(g.size());
  for (std::size_t s = k + 1; s < spec.m(); ++s)
    for (const VertexFunction& q : spec.bases[s]) out.axpy(inner(g, f, q), q);
  return out;
}

/// Sharp Poincare constant on H: 1 / lambda_1.
inline double poincare_constant(const Spectrum& spec) {
  if (spec.m() < 2) {
    throw Error(ErrorKind::Domain, "poincare_constant: spectrum has no nonzero eigenvalue");
  }
  return 1.0 / spec.lambda(1);
}

}  // namespace kwgraph

#endif  // KWGRAPH_SPECTRAL_HPP
