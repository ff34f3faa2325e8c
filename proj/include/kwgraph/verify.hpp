#ifndef KWGRAPH_VERIFY_HPP
#define KWGRAPH_VERIFY_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kwgraph/calculus.hpp"
#include "kwgraph/functional.hpp"
#include "kwgraph/graph.hpp"
#include "kwgraph/spectral.hpp"

// Solver-independent checks of Kazdan-Warner solutions. Nothing here calls
// into the solver; a candidate u can come from anywhere.

namespace kwgraph {

/// Multiplier t_si attached to the eigenvector bases[s][i - 1]. Both indices
/// are 1-based, matching the usual u_{si} labelling.
struct EigenMultiplier {
  std::size_t s;
  std::size_t i;
  double value;

  friend bool operator==(const EigenMultiplier&, const EigenMultiplier&) = default;
};

struct Multipliers {
  double xi = 0.0;
  std::vector<EigenMultiplier> t;
};

/// xi = beta / Vol(V); t_si = beta * int(h u_si e^u) / int(h e^u) for s <= k.
inline Multipliers multipliers(const Graph& g, const Spectrum& spec, const VertexFunction& u,
                               double beta, std::size_t k) {
  detail::require_same_length(g.size(), u.size(), "multipliers");
  detail::require_subspace_index(spec, k, "multipliers");
  Multipliers out;
  out.xi = beta / g.volume();
  const VertexFunction w = tilted_density(g, u);
  for (std::size_t s = 1; s <= k; ++s) {
    for (std::size_t i = 0; i < spec.multiplicity(s); ++i) {
      out.t.push_back({s, i + 1, beta * inner(g, w, spec.basis(s)[i])});
    }
  }
  return out;
}

/// r = Delta u + alpha u + beta h e^u / S - beta / Vol(V) - sum_{s<=k,i} t_si u_si.
/// r vanishes exactly when u solves the Kazdan-Warner equation on E_k-perp.
inline VertexFunction kw_residual(const Graph& g, const Spectrum& spec, const VertexFunction& u,
                                  double alpha, double beta, std::size_t k) {
  detail::require_same_length(g.size(), u.size(), "kw_residual");
  const Multipliers mult = multipliers(g, spec, u, beta, k);
  VertexFunction r = laplacian(g, u);
  r.axpy(alpha, u);
  r.axpy(beta, tilted_density(g, u));
  r += -mult.xi;
  for (const EigenMultiplier& t : mult.t) r.axpy(-t.value, spec.basis(t.s)[t.i - 1]);
  return r;
}

/// A candidate solution as stored on disk: parameters plus u, and optionally
/// the multipliers the producer claims.
struct Candidate {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t k = 0;
  VertexFunction u;
  std::optional<Multipliers> claimed;
};

struct CheckResult {
  std::string name;
  bool passed;
  double value;  // the measured quantity compared against the tolerance
  std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

/// Runs subspace membership, residual, multiplier and mean-freeness checks.
inline std::vector<CheckResult> verify_solution(const Graph& g, const Spectrum& spec,
                                                const Candidate& c, double tol) {
  std::vector<CheckResult> out;
  if (c.u.size() != g.size()) {
    out.push_back({"shape", false, static_cast<double>(c.u.size()),
                   "u has the wrong number of entries"});
    return out;
  }
  if (c.k >= spec.m()) {
    out.push_back({"shape", false, static_cast<double>(c.k), "k out of range"});
    return out;
  }

  {
    const double mean_dev = std::abs(integrate(g, c.u));
    double worst = 0.0;
    std::string where;
    for (std::size_t s = 1; s <= c.k; ++s) {
      for (std::size_t i = 0; i < spec.multiplicity(s); ++i) {
        const double ip = std::abs(inner(g, c.u, spec.basis(s)[i]));
        if (ip > worst) {
          worst = ip;
          where = "u_" + std::to_string(s) + "," + std::to_string(i + 1);
        }
      }
    }
    const bool ok = mean_dev <= tol * g.volume() && worst <= tol;
    std::ostringstream msg;
    msg << "|<u,1>| = " << mean_dev << ", max |<u,u_si>| = " << worst;
    if (!where.empty()) msg << " at " << where;
    out.push_back({"subspace_membership", ok, std::max(mean_dev / g.volume(), worst), msg.str()});
  }

  const VertexFunction r = kw_residual(g, spec, c.u, c.alpha, c.beta, c.k);
  {
    const double sup = r.sup_norm();
    std::ostringstream msg;
    msg << "sup |r| = " << sup << ", L2 |r| = " << l2_norm(g, r);
    out.push_back({"kw_residual", sup <= tol, sup, msg.str()});
  }

  {
    const Multipliers fresh = multipliers(g, spec, c.u, c.beta, c.k);
    if (!c.claimed) {
      out.push_back({"multipliers", true, 0.0, "not supplied"});
    } else {
      double worst = std::abs(c.claimed->xi - fresh.xi);
      bool complete = true;
      for (const EigenMultiplier& t : fresh.t) {
        bool found = false;
        for (const EigenMultiplier& claimed : c.claimed->t) {
          if (claimed.s == t.s && claimed.i == t.i) {
            worst = std::max(worst, std::abs(claimed.value - t.value));
            found = true;
          }
        }
        complete = complete && found;
      }
      std::ostringstream msg;
      msg << "max deviation " << worst << (complete ? "" : ", missing t_si entries");
      out.push_back({"multipliers", complete && worst <= tol, worst, msg.str()});
    }
  }

  {
    // Integrating the equation over V: the choice of xi forces int r = 0.
    const double total = std::abs(integrate(g, r));
    const double scale = g.volume() * std::max(1.0, r.sup_norm());
    std::ostringstream msg;
    msg << "|int r| = " << total;
    out.push_back({"mean_free_residual", total <= 1e-9 * scale, total, msg.str()});
  }
  return out;
}

}  // namespace kwgraph

#endif  // KWGRAPH_VERIFY_HPP
