#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kwgraph/calculus.hpp"
#include "kwgraph/functional.hpp"
#include "kwgraph/spectral.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace kwgraph;
namespace kt = kwgraph::testing;
using kwgraph::testing::make_k2;
using kwgraph::testing::make_p3;

TEST(EvalJ, Examples) {
  const Graph g = make_k2();
  for (double beta : {-3.0, 0.0, 1.0, 8.0})
    EXPECT_NEAR(eval_J(g, {0, 0}, 0, beta), -beta * std::log(2.0), 1e-15);
  EXPECT_NEAR(eval_J(g, {1, -1}, 0, 1), 0.8730719889570275, 1e-14);
  EXPECT_DOUBLE_EQ(eval_J(g, {1, -1}, 1, 0), 1.0);
}

TEST(EvalJ, LargeExponentsStayFinite) {
  const Graph g = make_k2();
  const double j = eval_J(g, {800, -800}, 0, 1);
  EXPECT_TRUE(std::isfinite(j));
  // 0.5 * 1600^2 - (800 + log(1 + e^-1600)).
  EXPECT_NEAR(j, 1280000.0 - 800.0, 1e-6);
}

TEST(ElGradient, Examples) {
  const Graph g = make_k2();
  const Spectrum spec = compute_spectrum(g);
  const VertexFunction grad = el_gradient(g, spec, {1, -1}, 0, 1, 0);
  EXPECT_NEAR(grad[0], 1.6192029220221176, 1e-13);
  EXPECT_NEAR(grad[1], -1.6192029220221176, 1e-13);
  EXPECT_NEAR(inner(g, grad, {1, -1}), 3.238405844044235, 1e-13);
  EXPECT_NEAR(inner(g, grad, {1, -1}), 4 - std::tanh(1.0), 1e-13);

  const Graph p3 = make_p3();
  const Spectrum sp3 = compute_spectrum(p3);
  for (std::size_t k : {0, 1, 2})
    EXPECT_NEAR(el_gradient(p3, sp3, {0, 0, 0}, 0.4, 7.0, k).sup_norm(), 0.0, 1e-14);
}

TEST(HessianQuadraticForm, Examples) {
  const Graph g = make_k2();
  EXPECT_NEAR(hessian_quadratic_form(g, {0, 0}, 0, 8, {1, -1}), -4.0, 1e-14);
  EXPECT_NEAR(hessian_quadratic_form(g, {0, 0}, 0, 2, {1, -1}), 2.0, 1e-14);
  const Graph p3 = make_p3();
  const VertexFunction phi{0.5, -1.0, 2.0};
  EXPECT_NEAR(hessian_quadratic_form(p3, {1, 2, 3}, 0.7, 0, phi),
              dirichlet_energy(p3, phi) - 0.7 * inner(p3, phi, phi), 1e-14);
}

TEST(HeuLowerBound, Examples) {
  const Graph g = make_k2();
  const Spectrum spec = compute_spectrum(g);
  const LowerBoundCheck at_zero = heu_lower_bound(g, spec, {0, 0});
  EXPECT_NEAR(at_zero.lhs, 2.0, 1e-15);
  EXPECT_NEAR(at_zero.rhs, 2.0, 1e-15);
  EXPECT_TRUE(at_zero.holds);

  const LowerBoundCheck c = heu_lower_bound(g, spec, {1, -1});
  EXPECT_NEAR(c.lhs, 3.0861612696304876, 1e-14);
  EXPECT_NEAR(c.rhs, 0.4862334688684284, 1e-14);
  EXPECT_TRUE(c.holds);

  try {
    heu_lower_bound(g, spec, {1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(EstimateTmConstant, Examples) {
  EXPECT_NEAR(estimate_tm_constant(make_k2(), 1.0, 4), 2.568050833375483, 1e-12);
  EXPECT_NEAR(estimate_tm_constant(make_k2(), 1.0, 4), 2 * std::exp(0.25), 1e-12);
  EXPECT_DOUBLE_EQ(estimate_tm_constant(make_p3(), 0.0, 3), 3.0);

  std::mt19937_64 rng(4);
  const Graph g = kt::random_connected_graph(rng, {.min_vertices = 5, .max_vertices = 12});
  EXPECT_NEAR(estimate_tm_constant(g, 0.0, 2), g.volume(), 1e-12 * g.volume());
}

TEST(EstimateTmConstant, P3MonotoneInBudget) {
  const Graph g = make_p3();
  double prev = 0.0;
  for (int budget : {1, 2, 4, 8, 16}) {
    const double v = estimate_tm_constant(g, 1.0, budget);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 3.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_EQ(estimate_tm_constant(g, 1.0, 8), estimate_tm_constant(g, 1.0, 8));
}

TEST(FunctionalProperty, GradientAndHessianMatchFiniteDifferences) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> beta_dist(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = kt::random_connected_graph(rng, {.max_vertices = 15});
    const Spectrum spec = compute_spectrum(g);
    std::uniform_int_distribution<std::size_t> k_dist(0, spec.m() - 1);
    const std::size_t k = k_dist(rng);
    const double alpha = std::uniform_real_distribution<double>(-2, 2)(rng);
    const double beta = beta_dist(rng);
    const VertexFunction u = kt::random_function(rng, g.size());
    const VertexFunction phi = project_Ek_perp(spec, g, kt::random_function(rng, g.size()), k);
    if (phi.sup_norm() < 1e-8) continue;

    auto f = [&](long double t) { return oracle::J_along(g, u, phi, t, alpha, beta); };
    const long double d1 = oracle::first_derivative(f, 1e-3L);
    const long double d2 = oracle::second_derivative(f, 1e-2L);
    const double g1 = inner(g, el_gradient(g, spec, u, alpha, beta, k), phi);
    const double g2 = hessian_quadratic_form(g, u, alpha, beta, phi);
    const double s1 = std::abs(g1) + 1e-3 * (1 + dirichlet_energy(g, phi));
    EXPECT_NEAR(g1, static_cast<double>(d1), 1e-6 * s1);
    EXPECT_NEAR(g2, static_cast<double>(d2), 1e-5 * (std::abs(g2) + 1));
  }
}

TEST(FunctionalProperty, TranslationAndLowerBound) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = kt::random_connected_graph(rng);
    const Spectrum spec = compute_spectrum(g);
    const VertexFunction u = kt::random_function(rng, g.size(), -3, 3);
    VertexFunction shifted = u;
    shifted += 2.5;
    // With alpha = 0, J(u + c) - J(u) = -beta c.
    for (double beta : {-2.0, 0.5, 4.0}) {
      EXPECT_NEAR(eval_J(g, shifted, 0, beta) - eval_J(g, u, 0, beta), -beta * 2.5,
                  1e-10 * (1 + std::abs(eval_J(g, u, 0, beta))));
    }
    const VertexFunction v = project_mean_zero(g, u);
    EXPECT_TRUE(heu_lower_bound(g, spec, v).holds);
    const double a = 0.5 * spec.lambda(1);
    const double n = norm_one_alpha(g, v, a, spec.lambda(1));
    EXPECT_GE(n * n, (1 - a / spec.lambda(1)) * dirichlet_energy(g, v) * (1 - 1e-12));
  }
}
