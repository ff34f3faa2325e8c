#ifndef KWGRAPH_SOLVER_HPP
#define KWGRAPH_SOLVER_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "kwgraph/calculus.hpp"
#include "kwgraph/dense.hpp"
#include "kwgraph/error.hpp"
#include "kwgraph/functional.hpp"
#include "kwgraph/graph.hpp"
#include "kwgraph/spectral.hpp"
#include "kwgraph/verify.hpp"

namespace kwgraph {

enum class RegimeTag {
  MinimizerInEkPerp,      // alpha < lambda_{k+1}: minimizer in E_k-perp, any beta
  EigenfunctionSolution,  // alpha = lambda_{k+1}, beta = 0: u_{k+1} solves it
  MinimizerInNextPerp,    // alpha = lambda_{k+1}, beta < 0: minimizer in E_{k+1}-perp
  UnboundedBelow,         // alpha > lambda_{k+1}, or alpha = lambda_{k+1} with beta > 0
};

inline const char* to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::MinimizerInEkPerp: return "MINIMIZER_IN_EK_PERP";
    case RegimeTag::EigenfunctionSolution: return "EIGENFUNCTION_SOLUTION";
    case RegimeTag::MinimizerInNextPerp: return "MINIMIZER_IN_NEXT_PERP";
    case RegimeTag::UnboundedBelow: return "UNBOUNDED_BELOW";
  }
  return "UNKNOWN";
}

struct Regime {
  RegimeTag tag;
  std::size_t subspace_index;     // k of the minimization subspace E_k-perp; 0 means H
  bool trivial_subspace = false;  // E_{subspace_index}-perp = {0}

  friend bool operator==(const Regime&, const Regime&) = default;
};

/// Equality tolerance for alpha = lambda: 1e-9 (1 + |lambda|).
inline double default_eq_tol(double lambda) { return 1e-9 * (1.0 + std::abs(lambda)); }

/// Which case of the existence/unboundedness trichotomy (alpha, beta) falls in,
/// relative to lambda_{k+1}.
inline Regime classify_regime(const Spectrum& spec, double alpha, double beta, std::size_t k,
                              double eq_tol) {
  if (spec.m() < 2 || k + 2 > spec.m()) {
    throw Error(ErrorKind::OutOfRange, "classify_regime: k = " + std::to_string(k) +
                                           " needs lambda_{k+1}, spectrum has m = " +
                                           std::to_string(spec.m()));
  }
  if (!(eq_tol > 0.0)) throw Error(ErrorKind::Domain, "classify_regime: eq_tol must be positive");
  const double lambda = spec.lambda(k + 1);
  if (alpha < lambda - eq_tol) return {RegimeTag::MinimizerInEkPerp, k, false};
  if (alpha > lambda + eq_tol || beta > 0.0) return {RegimeTag::UnboundedBelow, k, false};
  if (beta == 0.0) return {RegimeTag::EigenfunctionSolution, k, false};
  return {RegimeTag::MinimizerInNextPerp, k + 1, k + 2 == spec.m()};
}

inline Regime classify_regime(const Spectrum& spec, double alpha, double beta, std::size_t k) {
  if (spec.m() < 2 || k + 2 > spec.m()) return classify_regime(spec, alpha, beta, k, 1.0);
  return classify_regime(spec, alpha, beta, k, default_eq_tol(spec.lambda(k + 1)));
}

struct SolverOptions {
  double grad_tol = 1e-10;          // sup-norm stopping threshold on el_gradient
  int max_iters = 10000;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double newton_switch_tol = 1e-3;  // grad_sup below which Newton steps start
  int max_descent_iters = 200;      // steepest-descent budget before Newton regardless
  std::uint64_t seed = 0;

  void check() const {
    if (!(grad_tol > 0.0) || !(armijo_c > 0.0) || !(newton_switch_tol > 0.0) || max_iters < 0 ||
        max_descent_iters < 0) {
      throw Error(ErrorKind::Domain, "SolverOptions: tolerances must be positive");
    }
    if (!(backtrack > 0.0 && backtrack < 1.0)) {
      throw Error(ErrorKind::Domain, "SolverOptions: backtrack must lie in (0, 1)");
    }
  }
};

enum class SolveStatus { Converged, MaxIters, Unbounded };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIters: return "MaxIters";
    case SolveStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

struct SolveReport {
  Regime regime{RegimeTag::MinimizerInEkPerp, 0, false};
  double alpha = 0.0;
  double beta = 0.0;
  VertexFunction minimizer;
  double objective = 0.0;
  double grad_sup = 0.0;
  double xi = 0.0;
  std::vector<EigenMultiplier> t_multipliers;
  double residual_sup = 0.0;
  double residual_l2 = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIters;
  std::vector<double> objective_trace;
  std::uint64_t seed = 0;

  Candidate as_candidate() const {
    return {alpha, beta, regime.subspace_index, minimizer, Multipliers{xi, t_multipliers}};
  }
};

inline std::vector<CheckResult> verify_solution(const Graph& g, const Spectrum& spec,
                                                const SolveReport& report, double tol) {
  return verify_solution(g, spec, report.as_candidate(), tol);
}

namespace detail {

/// Hessian of J in the coordinates of an orthonormal basis, assembled by
/// polarization of the second variation.
inline dense::Matrix projected_hessian(const Graph& g, const VertexFunction& u, double alpha,
                                       double beta, const std::vector<VertexFunction>& basis) {
  const std::size_t d = basis.size();
  dense::Matrix hess(d);
  for (std::size_t i = 0; i < d; ++i) {
    hess(i, i) = hessian_quadratic_form(g, u, alpha, beta, basis[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const double plus = hessian_quadratic_form(g, u, alpha, beta, basis[i] + basis[j]);
      const double minus = hessian_quadratic_form(g, u, alpha, beta, basis[i] - basis[j]);
      hess(i, j) = hess(j, i) = 0.25 * (plus - minus);
    }
  }
  return hess;
}

inline VertexFunction assemble(const std::vector<VertexFunction>& basis,
                               const std::vector<double>& coords, std::size_t n) {
  VertexFunction u(n);
  for (std::size_t j = 0; j < basis.size(); ++j) u.axpy(coords[j], basis[j]);
  return u;
}

}  // namespace detail

/// Minimizes J_{alpha,beta} over the regime's subspace, starting from u = 0.
///
/// Steepest descent with Armijo backtracking until grad_sup drops below
/// newton_switch_tol (or the descent budget is spent), then damped Newton on
/// the projected Hessian with a doubling Levenberg shift. A stationary point
/// with an indefinite Hessian is left along its most negative curvature
/// direction, so saddles such as u = 0 for large beta are not reported.
inline SolveReport minimize(const Graph& g, const Spectrum& spec, double alpha, double beta,
                            std::size_t k, const SolverOptions& opts = {}) {
  opts.check();
  const Regime regime = classify_regime(spec, alpha, beta, k);
  if (regime.tag == RegimeTag::UnboundedBelow) {
    throw Error(ErrorKind::UnboundedRegime,
                "inf J = -inf in this regime (alpha = " + std::to_string(alpha) +
                    ", lambda_{k+1} = " + std::to_string(spec.lambda(k + 1)) +
                    "); use probe_divergence instead");
  }
  const std::size_t n = g.size();
  const std::size_t sub = regime.subspace_index;

  SolveReport report;
  report.regime = regime;
  report.alpha = alpha;
  report.beta = beta;
  report.seed = opts.seed;

  auto finish = [&](VertexFunction u, bool stationary) {
    report.minimizer = std::move(u);
    report.objective = eval_J(g, report.minimizer, alpha, beta);
    report.grad_sup = el_gradient(g, spec, report.minimizer, alpha, beta, sub).sup_norm();
    const Multipliers mult = multipliers(g, spec, report.minimizer, beta, sub);
    report.xi = mult.xi;
    report.t_multipliers = mult.t;
    const VertexFunction r = kw_residual(g, spec, report.minimizer, alpha, beta, sub);
    report.residual_sup = r.sup_norm();
    report.residual_l2 = l2_norm(g, r);
    const bool ok = stationary && report.grad_sup <= opts.grad_tol &&
                    report.residual_sup <= 10.0 * opts.grad_tol;
    report.status = ok ? SolveStatus::Converged : SolveStatus::MaxIters;
    return report;
  };

  if (regime.tag == RegimeTag::EigenfunctionSolution) {
    VertexFunction u = spec.basis(k + 1).front();
    report.objective_trace.push_back(eval_J(g, u, alpha, beta));
    return finish(std::move(u), true);
  }

  const std::vector<VertexFunction> basis = spec.complement_basis(sub);
  const std::size_t d = basis.size();
  if (d == 0) {
    report.objective_trace.push_back(eval_J(g, g.constant(0.0), alpha, beta));
    return finish(g.constant(0.0), true);
  }

  std::vector<double> coords(d, 0.0);
  VertexFunction u(n);
  double value = eval_J(g, u, alpha, beta);
  report.objective_trace.push_back(value);

  auto slack = [&](double v) { return 1e-14 * (1.0 + std::abs(v)); };

  // Backtracking along `dir`; returns true and updates state on success.
  auto line_search = [&](const std::vector<double>& dir, double slope, double step) {
    for (int tries = 0; tries < 80; ++tries) {
      std::vector<double> trial(d);
      for (std::size_t j = 0; j < d; ++j) trial[j] = coords[j] + step * dir[j];
      VertexFunction tu = detail::assemble(basis, trial, n);
      const double tv = eval_J(g, tu, alpha, beta);
      if (std::isfinite(tv) && tv <= value + opts.armijo_c * step * slope + slack(value)) {
        coords = std::move(trial);
        u = std::move(tu);
        value = tv;
        return step;
      }
      step *= opts.backtrack;
    }
    return 0.0;
  };

  bool newton = false;
  bool stationary = false;
  int descent_iters = 0;
  double descent_step = 1.0;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    const VertexFunction grad = el_gradient(g, spec, u, alpha, beta, sub);
    const double grad_sup = grad.sup_norm();
    std::vector<double> c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = inner(g, grad, basis[j]);

    if (grad_sup <= opts.grad_tol) {
      const dense::Matrix hess = detail::projected_hessian(g, u, alpha, beta, basis);
      if (dense::cholesky(hess)) {
        stationary = true;
        break;
      }
      const dense::SymmetricEigen eig = dense::jacobi_eigen(hess);
      if (eig.values.front() >= -1e-10 * (1.0 + std::abs(eig.values.back()))) {
        // Singular but not indefinite: nothing to escape along.
        stationary = true;
        break;
      }
      std::vector<double> dir(d);
      for (std::size_t j = 0; j < d; ++j) dir[j] = eig.vectors(j, 0);
      // Same orientation rule as the eigenbases: first clearly nonzero
      // vertex value positive.
      const VertexFunction dir_u = detail::assemble(basis, dir, n);
      for (double x : dir_u) {
        if (std::abs(x) > 1e-10 * dir_u.sup_norm()) {
          if (x < 0.0)
            for (double& cj : dir) cj = -cj;
          break;
        }
      }
      // Negative curvature: any sufficiently small step strictly decreases J.
      const double curvature = eig.values.front();
      if (line_search(dir, 0.5 * curvature, 1.0) == 0.0) {
        stationary = true;
        break;
      }
      report.objective_trace.push_back(value);
      continue;
    }

    if (!newton && (grad_sup < opts.newton_switch_tol || descent_iters >= opts.max_descent_iters)) {
      newton = true;
    }

    if (newton) {
      dense::Matrix hess = detail::projected_hessian(g, u, alpha, beta, basis);
      auto factor = dense::cholesky(hess);
      double shift = 1e-8;
      while (!factor) {
        dense::Matrix shifted = hess;
        for (std::size_t j = 0; j < d; ++j) shifted(j, j) += shift;
        factor = dense::cholesky(shifted);
        shift *= 2.0;
      }
      std::vector<double> rhs(d);
      for (std::size_t j = 0; j < d; ++j) rhs[j] = -c[j];
      const std::vector<double> dir = dense::cholesky_solve(*factor, rhs);
      double slope = 0.0;
      for (std::size_t j = 0; j < d; ++j) slope += c[j] * dir[j];
      if (line_search(dir, slope, 1.0) == 0.0) {
        // Newton direction rejected; fall back to one gradient step.
        double gslope = 0.0;
        for (double cj : c) gslope -= cj * cj;
        if (line_search(rhs, gslope, 1.0) == 0.0) break;
      }
    } else {
      std::vector<double> dir(d);
      double slope = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        dir[j] = -c[j];
        slope -= c[j] * c[j];
      }
      const double taken = line_search(dir, slope, descent_step);
      if (taken == 0.0) {
        newton = true;
      } else {
        descent_step = 2.0 * taken;
      }
      ++descent_iters;
    }
    report.objective_trace.push_back(value);
  }
  report.iterations = iter;
  return finish(std::move(u), stationary);
}

enum class ProbeVerdict { Unbounded, Inconclusive };

inline const char* to_string(ProbeVerdict v) {
  return v == ProbeVerdict::Unbounded ? "unbounded" : "inconclusive";
}

struct ProbeSample {
  double t;
  double J;
};

struct ProbeReport {
  Regime regime{RegimeTag::UnboundedBelow, 0, false};
  VertexFunction direction;
  std::vector<ProbeSample> samples;
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
};

inline constexpr double kProbeThreshold = -1e6;

/// Divergence verdict on samples at t = 2^0, 2^1, ...: the last five values
/// must be strictly decreasing, and either the final value is below -1e6 or
/// the decrements over the last four doublings of t do not shrink. A
/// function bounded below has decrements tending to zero, so non-shrinking
/// decrements witness divergence even when the ray descends only linearly.
inline ProbeVerdict probe_verdict(const std::vector<ProbeSample>& samples) {
  const std::size_t n = samples.size();
  if (n < 5) return ProbeVerdict::Inconclusive;
  for (std::size_t i = n - 4; i < n; ++i) {
    if (!(samples[i].J < samples[i - 1].J)) return ProbeVerdict::Inconclusive;
  }
  if (samples.back().J < kProbeThreshold) return ProbeVerdict::Unbounded;
  for (std::size_t i = n - 3; i < n; ++i) {
    const double prev = samples[i - 1].J - samples[i - 2].J;
    const double cur = samples[i].J - samples[i - 1].J;
    if (!(cur <= prev)) return ProbeVerdict::Inconclusive;
  }
  return ProbeVerdict::Unbounded;
}

/// Evaluates J along t * u_{k+1,1} (unit L2(mu) eigenfunction of lambda_{k+1})
/// for t = 2^0 .. 2^t_max_exponent.
inline ProbeReport probe_divergence(const Graph& g, const Spectrum& spec, double alpha,
                                    double beta, std::size_t k, int t_max_exponent = 20) {
  const Regime regime = classify_regime(spec, alpha, beta, k);
  if (regime.tag != RegimeTag::UnboundedBelow) {
    throw Error(ErrorKind::BoundedRegime, std::string("regime is bounded (") +
                                              to_string(regime.tag) + "); use minimize instead");
  }
  if (t_max_exponent < 4 || t_max_exponent > 1000) {
    throw Error(ErrorKind::Domain, "probe_divergence: t_max_exponent must lie in [4, 1000]");
  }
  ProbeReport report;
  report.regime = regime;
  report.direction = spec.basis(k + 1).front();
  for (int e = 0; e <= t_max_exponent; ++e) {
    const double t = std::ldexp(1.0, e);
    report.samples.push_back({t, eval_J(g, t * report.direction, alpha, beta)});
  }
  report.verdict = probe_verdict(report.samples);
  return report;
}

}  // namespace kwgraph

#endif  // KWGRAPH_SOLVER_HPP
