#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "swsi/errors.hpp"
#include "swsi/limit.hpp"

using namespace swsi;
using namespace swsi::test;

namespace {

PhysParams limit_params() {
  PhysParams p;
  p.g = 9.812;
  p.k = 1.0 / std::sqrt(9.812);
  return p;
}

}  // namespace

TEST_CASE("limit momentum: signed square root of the surface slope") {
  const PhysParams p = limit_params();
  const Grid g = periodic_line(200, 0.0, 2.0);
  const Bathymetry flat = Bathymetry::flat(g, p.g);
  const Field h0 = sampled(g, [](double x, double) { return 1.5 + 0.2 * std::sin(kPi * x); });
  const auto m = limit_momentum(h0, flat, p);
  double worst = 0.0;
  for_interior(g, [&](int i, int) {
    const double x = g.center(0, i);
    const double Hx = 0.2 * kPi * std::cos(kPi * x);
    const double want = -std::pow(h0(i), (p.eta + 1.0) / 2.0) / p.k * std::copysign(std::sqrt(std::abs(Hx)), Hx);
    worst = std::max(worst, std::abs(m[0](i) - want));
  });
  // the square root loses smoothness where the slope vanishes
  CHECK(worst < 5e-2);
  CHECK(max_abs(limit_momentum(Field(g, 2.0), flat, p)[0]) == 0.0);
  PhysParams nok = p;
  nok.k = 0.0;
  CHECK_THROWS_AS(limit_momentum(h0, flat, nok), ConfigError);
}

TEST_CASE("limit step on a periodic bump: mass, bounds, decay") {
  const PhysParams p = limit_params();
  const Grid g = periodic_line(80, -5.0, 5.0);
  const Bathymetry flat = Bathymetry::flat(g, p.g);
  LimitState st{sampled(g, [](double x, double) { return 1.0 + 0.5 * std::exp(-x * x); }), 0.0};
  const double mass0 = interior_sum(st.h0);
  const double max0 = max_abs(st.h0);
  LimitIntegrator integ(g, PicardConfig{});
  RunReport rep;
  double prev_tv = 0.0;
  for (int i = 0; i < 79; ++i) prev_tv += std::abs(st.h0(i + 1) - st.h0(i));
  for (int k = 0; k < 10; ++k) {
    rep += integ.step(st, flat, p, limit_dt(st.h0, flat, p, 0.2), tableau_si_imex_443());
    double tv = 0.0;
    for (int i = 0; i < 79; ++i) tv += std::abs(st.h0(i + 1) - st.h0(i));
    CHECK(tv <= prev_tv + 1e-12);
    prev_tv = tv;
  }
  CHECK(rep.steps == 10);
  CHECK(rep.implicit_solves == 40);
  CHECK(rep.picard_total >= rep.implicit_solves);
  CHECK(std::abs(interior_sum(st.h0) - mass0) <= 1e-12 * mass0);
  CHECK(max_abs(st.h0) < max0);
  double mn = 1e300;
  for_interior(g, [&](int i, int) { mn = std::min(mn, st.h0(i)); });
  CHECK(mn >= 1.0 - 1e-12);
}

TEST_CASE("a flat surface is a fixed point of the limit step") {
  const PhysParams p = limit_params();
  const Grid g = Grid::line(50, -5.0, 5.0, Boundary::extrapolate);
  const Bathymetry flat = Bathymetry::flat(g, p.g);
  LimitState st{Field(g, 1.25), 0.0};
  const LimitState out = step_limit_dirk(st, flat, p, 1e-3, tableau_si_imex_443(), PicardConfig{});
  CHECK(max_abs_diff(out.h0, st.h0) <= 1e-13);
  CHECK(out.t == doctest::Approx(1e-3));
}

TEST_CASE("limit step input validation") {
  PhysParams p = limit_params();
  const Grid g = periodic_line(16);
  const Bathymetry flat = Bathymetry::flat(g, p.g);
  LimitState st{Field(g, 1.0), 0.0};
  LimitIntegrator integ(g, PicardConfig{});
  CHECK_THROWS_AS(integ.step(st, flat, p, 0.0, tableau_si_imex_443()), ConfigError);
  CHECK_NOTHROW(integ.step(st, flat, p, 1e-3, tableau_euler()));
  DoubleTableau t = tableau_si_imex_443();
  t.im(2, 2) = 0.0;
  CHECK_THROWS_AS(integ.step(st, flat, p, 1e-3, t), ConfigError);
  p.k = 0.0;
  CHECK_THROWS_AS(integ.step(st, flat, p, 1e-3, tableau_si_imex_443()), ConfigError);
  CHECK_THROWS_AS(LimitIntegrator(g, PicardConfig{0.0, 10}), ConfigError);
}
