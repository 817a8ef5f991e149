#include "swsi/cases.hpp"

#include <cmath>
#include <numbers>

#include "swsi/errors.hpp"

namespace swsi {

namespace {

constexpr double kPi = std::numbers::pi;

double hump(double x, double y) { return 0.8 * std::exp(-5.0 * (x - 0.9) * (x - 0.9) - 50.0 * (y - 0.5) * (y - 0.5)); }

int positive_n(const std::optional<int>& v, int fallback) {
  const int n = v.value_or(fallback);
  if (n < 8) throw ConfigError("need at least 8 cells per dimension");
  return n;
}

}  // namespace

const std::vector<std::string>& case_ids() {
  static const std::vector<std::string> ids = {
      "ex51-linear-1d",   "ex52-manufactured-1d", "ex53-smooth",          "ex53-discontinuous",
      "ex54-linear-2d",   "ex55-vortex-2d",       "ex56-perturbation-2d", "still-water-wb",
  };
  return ids;
}

State BenchmarkCase::initial_state() const {
  State s;
  s.h = Field(grid);
  s.m.assign(grid.dim(), Field(grid));
  for_interior(grid, [&](int i, int j) {
    const double x = grid.center(0, i);
    const double y = grid.dim() == 2 ? grid.center(1, j) : 0.0;
    const PointValue v = initial(x, y);
    s.h(i, j) = v.h;
    for (int d = 0; d < grid.dim(); ++d) s.m[d](i, j) = v.m[d];
  });
  s.refresh_ghosts();
  s.t = 0.0;
  return s;
}

Bathymetry BenchmarkCase::bathymetry() const {
  Field B(grid);
  B.sample([&](double x, double y) { return bottom ? bottom(x, y) : 0.0; });
  return Bathymetry::from_field(std::move(B), params.g);
}

StepConfig BenchmarkCase::step_config() const {
  StepConfig cfg;
  cfg.picard = picard;
  cfg.xi = xi;
  if (source) {
    const Grid g = grid;
    auto src = source;
    cfg.source = [g, src](double t, std::vector<Field>& out) {
      for_interior(g, [&](int i, int j) {
        const double x = g.center(0, i);
        const double y = g.dim() == 2 ? g.center(1, j) : 0.0;
        const auto s = src(x, y, t);
        for (int d = 0; d < g.dim(); ++d) out[d](i, j) = s[d];
      });
      for (auto& f : out) f.refresh_ghosts();
    };
  }
  return cfg;
}

BenchmarkCase build(std::string_view id_in, const CaseOverrides& ov) {
  const std::string id(id_in);
  BenchmarkCase c;
  c.id = id;
  PhysParams& p = c.params;

  if (id == "ex51-linear-1d") {
    c.grid = Grid::line(positive_n(ov.n, 40), 0.0, 2.0, Boundary::periodic);
    p.g = 2.0;
    p.friction = FrictionMode::linear;
    c.final_time = 0.01;
    c.initial = [](double x, double) {
      const double s = std::sin(kPi * x);
      return PointValue{s + 2.0, {-2.0 * kPi * std::cos(kPi * x) * (s + 2.0), 0.0}};
    };
  } else if (id == "ex52-manufactured-1d") {
    c.grid = Grid::line(positive_n(ov.n, 20), 0.0, 2.0, Boundary::periodic);
    p.g = 1.0;
    p.k = 1.0;
    c.final_time = 0.04;
    if (ov.epsilon && *ov.epsilon != 1.0) throw ConfigError("ex52-manufactured-1d is defined for epsilon = 1 only");
    const PhysParams pp = p;
    c.exact = [pp](double x, double, double t) {
      const double e2 = pp.epsilon * pp.epsilon;
      const double v = 2.0 + e2 * std::sin(kPi * (x - t));
      return PointValue{v, {v, 0.0}};
    };
    // Balances friction and pressure of the exact solution, so that
    // m_t + (m^2/h)_x = 0 holds for it.
    c.source = [pp](double x, double, double t) {
      const double e2 = pp.epsilon * pp.epsilon;
      const double h = 2.0 + e2 * std::sin(kPi * (x - t));
      const double hx = e2 * kPi * std::cos(kPi * (x - t));
      const double fr = pp.g * pp.k * pp.k * std::abs(h) * h / std::pow(h, pp.eta);
      return std::array<double, 2>{(fr + pp.g * h * hx) / e2, 0.0};
    };
    c.initial = [ex = c.exact](double x, double y) { return ex(x, y, 0.0); };
  } else if (id == "ex53-smooth" || id == "ex53-discontinuous") {
    c.grid = Grid::line(positive_n(ov.n, 200), -5.0, 5.0, Boundary::extrapolate);
    const double theta = ov.theta.value_or(1.0);
    if (!(theta > 0.0)) throw ConfigError("theta must be positive");
    p.g = 9.812;
    p.k = theta / std::sqrt(p.g);
    c.final_time = 0.01 * theta;
    if (id == "ex53-smooth") {
      c.initial = [](double x, double) {
        double h = 1.0;
        if (x < -1.0) h = 2.0;
        else if (x < 1.0) h = 0.5 * (3.0 + std::sin(1.5 * kPi * x));
        return PointValue{h, {0.0, 0.0}};
      };
    } else {
      c.initial = [](double x, double) { return PointValue{x < 0.0 ? 2.0 : 1.0, {0.0, 0.0}}; };
    }
  } else if (id == "ex54-linear-2d") {
    const int n = positive_n(ov.n, 32);
    c.grid = Grid::plane({n, positive_n(ov.ny, n)}, {0.0, 0.0}, {2.0, 2.0}, {Boundary::periodic, Boundary::periodic});
    p.g = 2.0;
    p.friction = FrictionMode::linear;
    c.final_time = 0.01;
    c.initial = [](double x, double y) {
      const double s = std::sin(kPi * (x + y));
      const double m = -2.0 * kPi * std::cos(kPi * (x + y)) * (s + 2.0);
      return PointValue{s + 2.0, {m, m}};
    };
  } else if (id == "ex55-vortex-2d") {
    const int n = positive_n(ov.n, 64);
    c.grid = Grid::plane({n, positive_n(ov.ny, n)}, {-5.0, -5.0}, {5.0, 5.0}, {Boundary::periodic, Boundary::periodic});
    p.g = 1.0;
    p.k = 0.001;
    c.final_time = 0.1;
    // eps = 1 would make the depth negative at the vortex centre
    p.epsilon = 0.32;
    const double eps = ov.epsilon.value_or(p.epsilon);
    c.initial = [eps](double x, double y) {
      const double r2 = x * x + y * y;
      const double ma = std::exp(-0.5 * (r2 - 1.0));  // m_alpha / r
      return PointValue{1.0 - 0.5 * eps * eps * std::exp(-(r2 - 1.0)), {-y * ma, x * ma}};
    };
  } else if (id == "ex56-perturbation-2d") {
    c.grid = Grid::plane({positive_n(ov.n, 200), positive_n(ov.ny, 100)}, {0.0, 0.0}, {2.0, 1.0},
                         {Boundary::extrapolate, Boundary::periodic});
    p.g = 9.812;
    p.k = 0.09;
    c.final_time = 0.12;
    c.bottom = hump;
    c.initial = [](double x, double y) {
      const double H = (x >= 0.05 && x <= 0.15) ? 1.01 : 1.0;
      return PointValue{H - hump(x, y), {0.0, 0.0}};
    };
  } else if (id == "still-water-wb") {
    const std::string b = ov.bathymetry.value_or("gauss-1d");
    p.g = 9.812;
    p.k = 0.09;
    c.final_time = 0.1;
    if (b == "hump-2d") {
      c.grid = Grid::plane({positive_n(ov.n, 100), positive_n(ov.ny, 100)}, {0.0, 0.0}, {2.0, 1.0},
                           {Boundary::extrapolate, Boundary::periodic});
      c.bottom = hump;
    } else if (b == "gauss-1d" || b == "flat-1d") {
      c.grid = Grid::line(positive_n(ov.n, 200), 0.0, 2.0, Boundary::extrapolate);
      if (b == "gauss-1d") c.bottom = [](double x, double) { return 0.8 * std::exp(-5.0 * (x - 0.9) * (x - 0.9)); };
    } else {
      throw ConfigError("unknown bathymetry id '" + b + "'");
    }
    auto bot = c.bottom;
    c.initial = [bot](double x, double y) { return PointValue{1.0 - (bot ? bot(x, y) : 0.0), {0.0, 0.0}}; };
  } else {
    throw ConfigError("unknown case id '" + id + "'");
  }

  if (ov.epsilon) p.epsilon = *ov.epsilon;
  if (ov.final_time) {
    if (!(*ov.final_time >= 0.0)) throw ConfigError("final time must be nonnegative");
    c.final_time = *ov.final_time;
  }
  if (ov.cfl) {
    if (!(*ov.cfl > 0.0)) throw ConfigError("cfl must be positive");
    c.cfl = *ov.cfl;
  }
  if (ov.delta) c.picard.delta = *ov.delta;
  if (ov.picard_max) c.picard.max_iters = *ov.picard_max;
  if (ov.xi) c.xi = *ov.xi;
  if (ov.theta && id.rfind("ex53", 0) != 0) throw ConfigError("theta applies to the ex53 family only");
  if (ov.bathymetry && id != "still-water-wb") throw ConfigError("bathymetry override applies to still-water-wb only");
  p.validate();
  c.picard.validate();
  if (!(c.xi > 0.0)) throw ConfigError("xi must be positive");
  return c;
}

PointValue exact_solution(const BenchmarkCase& c, double x, double t, double y) {
  if (!c.exact) throw ConfigError("case '" + c.id + "' has no exact solution");
  return c.exact(x, y, t);
}

State well_prepared_2d_linear(const Grid& grid) {
  if (grid.dim() != 2 || grid.lo(0) != 0.0 || grid.hi(0) != 2.0 || grid.lo(1) != 0.0 || grid.hi(1) != 2.0)
    throw ConfigError("well_prepared_2d_linear expects a 2D grid on [0,2]^2");
  CaseOverrides ov;
  ov.n = grid.n(0);
  ov.ny = grid.n(1);
  BenchmarkCase c = build("ex54-linear-2d", ov);
  c.grid = grid;
  return c.initial_state();
}

}  // namespace swsi
