#include "swsi/core.hpp"

#include <cmath>
#include <sstream>

#include "swsi/errors.hpp"

namespace swsi {

void PhysParams::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("g must be positive");
  if (!(k >= 0.0) || !std::isfinite(k)) throw ConfigError("k must be nonnegative");
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  if (!(eta > 0.0)) throw ConfigError("eta must be positive");
}

Grid Grid::line(int n, double lo, double hi, Boundary bc) {
  if (n < 1 || !(hi > lo)) throw ConfigError("invalid 1D grid extents");
  Grid g;
  g.dim_ = 1;
  g.n_ = {n, 1};
  g.lo_ = {lo, 0.0};
  g.hi_ = {hi, 1.0};
  g.dx_ = {(hi - lo) / n, 1.0};
  g.bc_ = {bc, Boundary::periodic};
  return g;
}

Grid Grid::plane(std::array<int, 2> n, std::array<double, 2> lo, std::array<double, 2> hi,
                 std::array<Boundary, 2> bc) {
  Grid g;
  g.dim_ = 2;
  for (int d = 0; d < 2; ++d) {
    if (n[d] < 1 || !(hi[d] > lo[d])) throw ConfigError("invalid 2D grid extents");
    g.dx_[d] = (hi[d] - lo[d]) / n[d];
  }
  g.n_ = n;
  g.lo_ = lo;
  g.hi_ = hi;
  g.bc_ = bc;
  return g;
}

namespace {

void fill_line(double* base, std::ptrdiff_t stride, int n, int gw, Boundary bc) {
  auto at = [&](int i) -> double& { return base[i * stride]; };
  for (int k = 1; k <= gw; ++k) {
    if (bc == Boundary::periodic) {
      at(-k) = at(((n - k) % n + n) % n);
      at(n - 1 + k) = at((k - 1) % n);
    } else {
      at(-k) = at(0);
      at(n - 1 + k) = at(n - 1);
    }
  }
}

}  // namespace

void Field::refresh_ghosts() {
  const Grid& g = grid_;
  for (int j = 0; j < g.n(1); ++j)
    fill_line(&(*this)(0, j), g.stride(0), g.n(0), g.ghost(0), g.bc(0));
  if (g.dim() == 2)
    for (int i = -g.ghost(0); i < g.n(0) + g.ghost(0); ++i)
      fill_line(&(*this)(i, 0), g.stride(1), g.n(1), g.ghost(1), g.bc(1));
}

void axpy(Field& y, double a, const Field& x) {
  auto& yv = y.data();
  const auto& xv = x.data();
  for (std::size_t n = 0; n < yv.size(); ++n) yv[n] += a * xv[n];
}

double l1_norm(const Field& f) {
  double s = 0.0;
  for_interior(f.grid(), [&](int i, int j) { s += std::abs(f(i, j)); });
  return s * f.grid().cell_volume();
}

double mean_abs(const Field& f) {
  double s = 0.0;
  for_interior(f.grid(), [&](int i, int j) { s += std::abs(f(i, j)); });
  return s / static_cast<double>(f.grid().cells());
}

double mean_abs_diff(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("grid mismatch");
  double s = 0.0;
  for_interior(a.grid(), [&](int i, int j) { s += std::abs(a(i, j) - b(i, j)); });
  return s / static_cast<double>(a.grid().cells());
}

double max_abs(const Field& f) {
  double s = 0.0;
  for_interior(f.grid(), [&](int i, int j) { s = std::max(s, std::abs(f(i, j))); });
  return s;
}

double interior_sum(const Field& f) {
  double s = 0.0;
  for_interior(f.grid(), [&](int i, int j) { s += f(i, j); });
  return s;
}

void State::refresh_ghosts() {
  h.refresh_ghosts();
  for (auto& c : m) c.refresh_ghosts();
}

Bathymetry Bathymetry::from_field(Field B, double g) {
  Bathymetry b;
  b.B = std::move(B);
  b.B.refresh_ghosts();
  b.half_gB2 = Field(b.B.grid());
  auto& out = b.half_gB2.data();
  const auto& in = b.B.data();
  for (std::size_t n = 0; n < in.size(); ++n) out[n] = 0.5 * g * in[n] * in[n];
  return b;
}

Bathymetry Bathymetry::flat(const Grid& grid, double g) { return from_field(Field(grid), g); }

Field surface_level(const State& state, const Bathymetry& bath) {
  if (!(state.h.grid() == bath.B.grid())) throw ConfigError("surface_level: grid mismatch");
  Field H(state.h.grid());
  auto& out = H.data();
  const auto& h = state.h.data();
  const auto& B = bath.B.data();
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = h[n] + B[n];
  return H;
}

bool DoubleTableau::stiffly_accurate(double tol) const {
  for (int j = 0; j < s; ++j)
    if (std::abs(im(s - 1, j) - b_im[j]) > tol) return false;
  return true;
}

bool DoubleTableau::shared_weights(double tol) const {
  for (int j = 0; j < s; ++j)
    if (std::abs(b_ex[j] - b_im[j]) > tol) return false;
  return true;
}

std::vector<TableauViolation> validate_tableau(const DoubleTableau& t, double tol) {
  std::vector<TableauViolation> out;
  auto add = [&](TableauIssue k, int row, const std::string& msg) { out.push_back({k, row, msg}); };
  const auto s = static_cast<std::size_t>(t.s);
  if (t.s < 1 || t.A_ex.size() != s * s || t.A_im.size() != s * s || t.b_ex.size() != s ||
      t.b_im.size() != s || t.c_ex.size() != s || t.c_im.size() != s) {
    add(TableauIssue::shape, -1, "inconsistent array sizes");
    return out;
  }
  for (int i = 0; i < t.s; ++i) {
    double se = 0.0, si = 0.0;
    for (int j = 0; j < t.s; ++j) {
      if (j >= i && t.ex(i, j) != 0.0) {
        add(TableauIssue::explicit_not_strictly_lower, i, "explicit entry on or above diagonal");
        break;
      }
      if (j > i && t.im(i, j) != 0.0) {
        add(TableauIssue::implicit_not_lower, i, "implicit entry above diagonal");
        break;
      }
    }
    for (int j = 0; j < t.s; ++j) {
      se += t.ex(i, j);
      si += t.im(i, j);
    }
    if (std::abs(se - t.c_ex[i]) > tol) {
      std::ostringstream os;
      os << "explicit row sum " << se << " != c " << t.c_ex[i];
      add(TableauIssue::explicit_abscissa, i, os.str());
    }
    if (std::abs(si - t.c_im[i]) > tol) {
      std::ostringstream os;
      os << "implicit row sum " << si << " != c " << t.c_im[i];
      add(TableauIssue::implicit_abscissa, i, os.str());
    }
    if (!(t.im(i, i) > 0.0)) add(TableauIssue::nonpositive_diagonal, i, "a_ii must be positive");
  }
  if (!t.stiffly_accurate(tol)) add(TableauIssue::not_stiffly_accurate, t.s - 1, "last implicit row != b");
  if (!t.shared_weights(tol)) add(TableauIssue::weights_not_shared, -1, "explicit and implicit b differ");
  return out;
}

DoubleTableau tableau_si_imex_443() {
  const double gam = 0.435866521508;
  DoubleTableau t;
  t.s = 4;
  t.A_ex = {0.0,            0.0,            0.0,             0.0,  //
            gam,            0.0,            0.0,             0.0,  //
            1.243893189483, -0.525959928729, 0.0,            0.0,  //
            0.630412558153, 0.786580740199, -0.416993298352, 0.0};
  t.A_im = {gam, 0.0,            0.0,             0.0,  //
            0.0, gam,            0.0,             0.0,  //
            0.0, 0.282066739245, gam,             0.0,  //
            0.0, 1.208496649176, -0.644363170684, gam};
  t.b_ex = {0.0, 1.208496649176, -0.644363170684, gam};
  t.b_im = t.b_ex;
  t.c_ex = {0.0, gam, 0.717933260754, 1.0};
  t.c_im = {gam, gam, 0.717933260754, 1.0};
  return t;
}

DoubleTableau tableau_euler() {
  DoubleTableau t;
  t.s = 1;
  t.A_ex = {0.0};
  t.A_im = {1.0};
  t.b_ex = {1.0};
  t.b_im = {1.0};
  t.c_ex = {0.0};
  t.c_im = {1.0};
  return t;
}

RunReport& RunReport::operator+=(const RunReport& o) {
  steps += o.steps;
  picard_total += o.picard_total;
  picard_max = std::max(picard_max, o.picard_max);
  steady_hits += o.steady_hits;
  implicit_solves += o.implicit_solves;
  seconds += o.seconds;
  return *this;
}

}  // namespace swsi
