#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "friction_oracle.hpp"
#include "swsi/errors.hpp"

using namespace swsi;
using namespace swsi::test;

TEST_CASE("random closure inputs against quadratic residual and bisection") {
  const FrictionOracleResult r = run_friction_oracle();
  CHECK(r.samples == 10000);
  CHECK(r.worst_residual <= 1e-12);
  CHECK(r.worst_relative <= 1e-10);
}

TEST_CASE("closure limits") {
  PhysParams p;
  p.g = 9.812;
  p.k = 0.09;
  p.epsilon = 1.0;
  SUBCASE("no friction reduces to m = rhs / eps^2") {
    PhysParams q = p;
    q.k = 0.0;
    q.epsilon = 0.1;
    CHECK(momentum_norm(3.0, 0.5, 1.0, q) == doctest::Approx(300.0).epsilon(1e-15));
  }
  SUBCASE("zero rhs gives zero momentum") { CHECK(momentum_norm(0.0, 0.1, 1.0, p) == 0.0); }
  SUBCASE("friction-dominated limit: |m| = sqrt(R h^eta / (tau g k^2))") {
    PhysParams q = p;
    q.epsilon = 1e-7;
    const double R = 2.0, tau = 0.01, h = 1.5;
    const double want = std::sqrt(R * std::pow(h, q.eta) / (tau * q.g * q.k * q.k));
    CHECK(momentum_norm(R, tau, h, q) == doctest::Approx(want).epsilon(1e-9));
  }
  SUBCASE("linear mode has gamma = 1") {
    PhysParams q = p;
    q.friction = FrictionMode::linear;
    q.epsilon = 0.5;
    CHECK(friction_gamma(17.0, 0.3, q) == 1.0);
    CHECK(implicit_friction_weight(5.0, 0.2, 1.0, q) == doctest::Approx(1.0 / (0.25 + 0.2)));
  }
  SUBCASE("manning gamma") {
    CHECK(friction_gamma(2.0, 2.0, p) == doctest::Approx(9.812 * 0.0081 * 2.0 / std::pow(2.0, 7.0 / 3.0)));
  }
}

TEST_CASE("implicit closure: the weight makes m (eps^2 + tau gamma(m)) = rhs") {
  PhysParams p;
  p.g = 1.0;
  p.k = 1.0;
  p.epsilon = 0.03;
  const double R = 0.7, tau = 0.02, h = 0.8;
  const double m = momentum_norm(R, tau, h, p);
  CHECK(m * (p.epsilon * p.epsilon + tau * friction_gamma(m, h, p)) == doctest::Approx(R).epsilon(1e-14));
}

TEST_CASE("explicit lagged update") {
  // eps^2 / (eps^2 + dt gamma) (m - dt conv - dt/eps^2 grad)
  CHECK(explicit_friction_update(1.0, 0.5, 0.02, 3.0, 0.1, 0.01) ==
        doctest::Approx(0.01 / (0.01 + 0.03) * (1.0 - 0.005 - 0.02)));
  CHECK(explicit_friction_update(2.0, 0.0, 0.0, 0.0, 1.0, 0.1) == 2.0);
}

TEST_CASE("equilibrium cut-off needs both norms below xi") {
  CHECK(equilibrium_cutoff(1e-16, 0.0, 1e-15));
  CHECK_FALSE(equilibrium_cutoff(1e-16, 1e-14, 1e-15));
  CHECK_FALSE(equilibrium_cutoff(1e-14, 0.0, 1e-15));
}

TEST_CASE("field interface validates its input") {
  const Grid g = periodic_line(8);
  FrictionSolveInput in;
  in.h_ref = Field(g, 1.0);
  in.rhs = {Field(g, 0.5)};
  in.tau = 0.0;
  CHECK_THROWS_AS(solve_momentum_norm(in), ConfigError);
  in.tau = 0.1;
  in.rhs.push_back(Field(g));
  CHECK_THROWS_AS(momentum_update(in), ConfigError);
}
