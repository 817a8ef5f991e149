#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace swsi {

enum class FrictionMode { manning, linear };

// g, k, eps, eta of the scaled system. In linear mode gamma == 1 and k, eta
// are ignored.
struct PhysParams {
  double g = 1.0;
  double k = 0.0;
  double epsilon = 1.0;
  double eta = 7.0 / 3.0;
  FrictionMode friction = FrictionMode::manning;

  void validate() const;
};

enum class Boundary { periodic, extrapolate };

class Grid {
 public:
  static constexpr int kGhost = 3;

  Grid() = default;
  static Grid line(int n, double lo, double hi, Boundary bc);
  static Grid plane(std::array<int, 2> n, std::array<double, 2> lo, std::array<double, 2> hi,
                    std::array<Boundary, 2> bc);

  int dim() const { return dim_; }
  int n(int d) const { return n_[d]; }
  double lo(int d) const { return lo_[d]; }
  double hi(int d) const { return hi_[d]; }
  double dx(int d) const { return dx_[d]; }
  Boundary bc(int d) const { return bc_[d]; }
  int ghost(int d) const { return d < dim_ ? kGhost : 0; }
  int padded(int d) const { return n_[d] + 2 * ghost(d); }

  std::size_t size() const { return static_cast<std::size_t>(padded(0)) * padded(1); }
  std::size_t cells() const { return static_cast<std::size_t>(n_[0]) * n_[1]; }
  std::ptrdiff_t stride(int d) const { return d == 0 ? 1 : padded(0); }
  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j + ghost(1)) * padded(0) + (i + ghost(0));
  }
  double center(int d, int i) const { return lo_[d] + (i + 0.5) * dx_[d]; }
  double cell_volume() const { return dim_ == 1 ? dx_[0] : dx_[0] * dx_[1]; }
  double min_dx() const { return dim_ == 1 ? dx_[0] : std::min(dx_[0], dx_[1]); }

  bool operator==(const Grid&) const = default;

 private:
  int dim_ = 1;
  std::array<int, 2> n_{1, 1};
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{1.0, 1.0};
  std::array<double, 2> dx_{1.0, 1.0};
  std::array<Boundary, 2> bc_{Boundary::periodic, Boundary::periodic};
};

// Cell-centred scalar with ghost layers. Stencil code reads ghosts directly,
// so callers refresh them after writing interior values.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, double value = 0.0)
      : grid_(grid), v_(grid.size(), value) {}

  const Grid& grid() const { return grid_; }
  double& operator()(int i, int j = 0) { return v_[grid_.index(i, j)]; }
  double operator()(int i, int j = 0) const { return v_[grid_.index(i, j)]; }
  double* ptr(int i, int j = 0) { return v_.data() + grid_.index(i, j); }
  const double* ptr(int i, int j = 0) const { return v_.data() + grid_.index(i, j); }
  std::vector<double>& data() { return v_; }
  const std::vector<double>& data() const { return v_; }

  void refresh_ghosts();

  // Sample f at interior cell centres, then refresh ghosts.
  template <class F>
  void sample(F&& f) {
    for (int j = 0; j < grid_.n(1); ++j)
      for (int i = 0; i < grid_.n(0); ++i)
        (*this)(i, j) = grid_.dim() == 1 ? f(grid_.center(0, i), 0.0)
                                         : f(grid_.center(0, i), grid_.center(1, j));
    refresh_ghosts();
  }

 private:
  Grid grid_;
  std::vector<double> v_;
};

template <class F>
void for_interior(const Grid& g, F&& f) {
  for (int j = 0; j < g.n(1); ++j)
    for (int i = 0; i < g.n(0); ++i) f(i, j);
}

// y += a x over all storage, ghosts included.
void axpy(Field& y, double a, const Field& x);

// Interior reductions. l1_norm weights by cell volume; mean_abs is the
// per-cell average used for error tables.
double l1_norm(const Field& f);
double mean_abs(const Field& f);
double mean_abs_diff(const Field& a, const Field& b);
double max_abs(const Field& f);
double interior_sum(const Field& f);

struct State {
  Field h;
  std::vector<Field> m;
  double t = 0.0;

  const Grid& grid() const { return h.grid(); }
  void refresh_ghosts();
};

struct Bathymetry {
  Field B;
  Field half_gB2;

  static Bathymetry from_field(Field B, double g);
  static Bathymetry flat(const Grid& grid, double g);
};

Field surface_level(const State& state, const Bathymetry& bath);

struct DoubleTableau {
  int s = 0;
  std::vector<double> A_ex;  // row-major s*s
  std::vector<double> A_im;
  std::vector<double> b_ex, b_im;
  std::vector<double> c_ex, c_im;

  double ex(int i, int j) const { return A_ex[static_cast<std::size_t>(i) * s + j]; }
  double im(int i, int j) const { return A_im[static_cast<std::size_t>(i) * s + j]; }
  double& ex(int i, int j) { return A_ex[static_cast<std::size_t>(i) * s + j]; }
  double& im(int i, int j) { return A_im[static_cast<std::size_t>(i) * s + j]; }

  bool stiffly_accurate(double tol = 1e-14) const;
  bool shared_weights(double tol = 1e-14) const;
};

enum class TableauIssue {
  shape,
  explicit_not_strictly_lower,
  implicit_not_lower,
  explicit_abscissa,
  implicit_abscissa,
  not_stiffly_accurate,
  weights_not_shared,
  nonpositive_diagonal,
};

struct TableauViolation {
  TableauIssue issue;
  int row;
  std::string detail;
};

// Printed coefficients carry 12 decimals, so row sums are checked to 1e-11.
std::vector<TableauViolation> validate_tableau(const DoubleTableau& t, double tol = 1e-11);

DoubleTableau tableau_si_imex_443();
// Forward/backward Euler pair; drives the first-order scheme.
DoubleTableau tableau_euler();

struct RunReport {
  long steps = 0;
  long picard_total = 0;
  long picard_max = 0;
  long steady_hits = 0;
  long implicit_solves = 0;
  double seconds = 0.0;

  RunReport& operator+=(const RunReport& o);
};

}  // namespace swsi
