#pragma once

#include <memory>
#include <vector>

#include "swsi/core.hpp"

namespace swsi {

// Face values of a cell-centred coefficient. For dimension d the faces of
// line l are f = -1..n+1 (face f sits between cells f-1 and f), stored at
// l*(n+3) + f + 1.
struct FaceCoefficients {
  Grid grid;
  std::array<std::vector<double>, 2> face;

  double at(int d, int line, int f) const {
    return face[d][static_cast<std::size_t>(line) * (grid.n(d) + 3) + (f + 1)];
  }
};

// 4-point central interpolation to faces. Where a steep coefficient makes the
// interpolant negative the two-point mean is used instead.
FaceCoefficients face_coefficients(const Field& a);

// Same stencil without the positivity fallback, for signed data.
FaceCoefficients face_interpolate(const Field& v);

// Component c of grad H on the faces of every dimension: the compact face
// difference for the normal component, the interpolated cell gradient for
// the tangential one. Ghosts of H must be current.
std::vector<FaceCoefficients> face_gradient(const Field& H);

// div(a grad H), conservative flux form, fourth order.
Field central4_flux_divergence(const Field& a, const Field& H);
Field flux_divergence(const FaceCoefficients& af, const Field& H);

// Cell-centred fourth-order gradient (-1, 8, 0, -8, 1)/12dx.
std::vector<Field> central4_gradient(const Field& f);

inline constexpr double kGradientFloor = 1e-14;

// sqrt(h^(eta+1)/k^2) / sqrt(max(|grad H|, floor)), ghosts refreshed.
Field limit_coefficient(const Field& h0, const Bathymetry& bath, const PhysParams& params);
// The same coefficient evaluated at faces, |grad H| from face_gradient. This
// is what the limit solver and limit_rhs use.
FaceCoefficients limit_face_coefficients(const Field& h0, const Bathymetry& bath, const PhysParams& params);
Field limit_rhs(const Field& h0, const Bathymetry& bath, const PhysParams& params);

// Solves (I - s div(a_f grad)) H = r for the interior values of H. The
// sparsity pattern is analysed once per grid; each call refactorizes.
class DiffusionSolver {
 public:
  explicit DiffusionSolver(const Grid& grid);
  ~DiffusionSolver();
  DiffusionSolver(DiffusionSolver&&) noexcept;
  DiffusionSolver& operator=(DiffusionSolver&&) noexcept;

  // r interior values are read; the result has refreshed ghosts.
  Field solve(const FaceCoefficients& af, double s, const Field& r);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace swsi
