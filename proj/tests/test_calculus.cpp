#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kwgraph/calculus.hpp"
#include "kwgraph/spectral.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace kwgraph;
namespace kt = kwgraph::testing;
using kwgraph::testing::make_k2;
using kwgraph::testing::make_p3;

namespace {

void expect_function_near(const VertexFunction& got, const VertexFunction& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

}  // namespace

TEST(Integrate, Examples) {
  EXPECT_DOUBLE_EQ(integrate(make_k2(), {2, 4}), 6.0);
  EXPECT_DOUBLE_EQ(integrate(make_k2(), {1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(integrate(make_p3(), {1, -2, 1}), 0.0);
}

TEST(Integrate, LengthMismatch) {
  try {
    integrate(make_k2(), {1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
}

TEST(Laplacian, Examples) {
  expect_function_near(laplacian(make_k2(), {0, 2}), {2, -2}, 0.0);
  expect_function_near(laplacian(make_p3(), {5, 5, 5}), {0, 0, 0}, 0.0);
  expect_function_near(laplacian(make_p3(), {1, 0, -1}), {-1, 0, 1}, 0.0);
  EXPECT_THROW(laplacian(make_p3(), {1, 2}), Error);
}

TEST(Laplacian, MatchesDenseMatrixProduct) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = kt::random_connected_graph(rng);
    const VertexFunction u = kt::random_function(rng, g.size());
    const auto want = oracle::laplacian_apply(g, u);
    const VertexFunction got = laplacian(g, u);
    for (std::size_t x = 0; x < g.size(); ++x) {
      EXPECT_NEAR(got[x], static_cast<double>(want[x]), 1e-10 * (1 + std::fabs(want[x])));
    }
  }
}

TEST(Gamma, Examples) {
  expect_function_near(gamma(make_k2(), {1, -1}, {1, -1}), {2, 2}, 0.0);
  expect_function_near(gamma(make_p3(), {1, 7, -3}, {4, 4, 4}), {0, 0, 0}, 0.0);
  expect_function_near(gamma(make_k2(), {1, -1}, {0, 2}), {-2, -2}, 0.0);
}

TEST(DirichletEnergy, Examples) {
  EXPECT_DOUBLE_EQ(dirichlet_energy(make_k2(), {1, -1}), 4.0);
  EXPECT_DOUBLE_EQ(dirichlet_energy(make_p3(), {1, 0, -1}), 2.0);
  EXPECT_DOUBLE_EQ(dirichlet_energy(make_p3(), {3, 3, 3}), 0.0);
}

TEST(ProjectMeanZero, Examples) {
  expect_function_near(project_mean_zero(make_k2(), {3, 1}), {1, -1}, 0.0);
  expect_function_near(project_mean_zero(make_p3(), {2, 2, 2}), {0, 0, 0}, 0.0);
  expect_function_near(project_mean_zero(make_p3(), {1, 2, 3}), {-1, 0, 1}, 1e-15);
}

TEST(NormOneAlpha, Examples) {
  EXPECT_NEAR(norm_one_alpha(make_k2(), {1, -1}, 1.0, 2.0), std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(norm_one_alpha(make_p3(), {1, 0, -1}, 0.0, 1.0),
                   std::sqrt(dirichlet_energy(make_p3(), {1, 0, -1})));
  try {
    norm_one_alpha(make_k2(), {1, -1}, 2.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(NormOneAlpha, NegativeRadicandIsDomainError) {
  // (1, 1) is constant, outside H: energy 0, so radicand = -alpha * 2 < 0.
  try {
    norm_one_alpha(make_k2(), {1, 1}, 1.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(CalculusProperty, GreenIdentity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = kt::random_connected_graph(rng);
    const VertexFunction u = kt::random_function(rng, g.size(), -3, 3);
    const VertexFunction v = kt::random_function(rng, g.size(), -3, 3);
    const double lhs = inner(g, laplacian(g, u), v);
    const double rhs = -integrate(g, gamma(g, u, v));
    double scale = 0.0;
    const VertexFunction lu = laplacian(g, u);
    for (std::size_t x = 0; x < g.size(); ++x) scale += g.mu(x) * std::abs(lu[x] * v[x]);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, scale));
    EXPECT_NEAR(dirichlet_form(g, u, v), integrate(g, gamma(g, u, v)), 1e-12 * std::max(1.0, scale));
  }
}

TEST(CalculusProperty, EnergyInvariantsAndProjection) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = kt::random_connected_graph(rng);
    const VertexFunction u = kt::random_function(rng, g.size());
    const VertexFunction f = kt::random_function(rng, g.size());
    const double e = dirichlet_energy(g, u);
    EXPECT_NEAR(e, integrate(g, gamma(g, u, u)), 1e-12 * (1 + e));
    VertexFunction shifted = u;
    shifted += 4.25;
    EXPECT_NEAR(dirichlet_energy(g, shifted), e, 1e-11 * (1 + e));

    const VertexFunction pf = project_mean_zero(g, f);
    const VertexFunction pu = project_mean_zero(g, u);
    EXPECT_NEAR(integrate(g, pf), 0.0, 1e-12 * g.volume());
    EXPECT_NEAR((project_mean_zero(g, pf) - pf).sup_norm(), 0.0, 1e-14);
    EXPECT_NEAR(inner(g, f - pf, pu), 0.0, 1e-11 * g.volume());
  }
}

TEST(CalculusProperty, PoincareAndSupNormBounds) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = kt::random_connected_graph(rng);
    const Spectrum spec = compute_spectrum(g);
    const double cp = poincare_constant(spec);
    for (int j = 0; j < 20; ++j) {
      const VertexFunction u = project_mean_zero(g, kt::random_function(rng, g.size(), -5, 5));
      const double mass = inner(g, u, u);
      EXPECT_LE(mass, cp * dirichlet_energy(g, u) * (1 + 1e-9));
      EXPECT_LE(u.sup_norm(), std::sqrt(mass / g.mu_min()) * (1 + 1e-12));
    }
    const VertexFunction& u1 = spec.basis(1).front();
    EXPECT_NEAR(inner(g, u1, u1), cp * dirichlet_energy(g, u1), 1e-9);
  }
}
