#include "swsi/diffusion.hpp"

#include <Eigen/Sparse>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>

#include "swsi/errors.hpp"

namespace swsi {

namespace {

// The Krylov residual is measured on the assembled matrix, which cancels
// badly; the flux-form correction below takes over from 1e-10.
constexpr double kKrylovTolerance = 1e-10;
constexpr int kKrylovMaxIterations = 2000;
// A correction only has to shrink an already small residual. Corrections
// are cheap with a factorization in hand, a full Krylov solve otherwise.
constexpr double kCorrectionTolerance = 1e-8;
constexpr int kRefinePasses1D = 2;
constexpr int kRefinePasses2D = 1;

constexpr double kDiv[4] = {1.0, -27.0, 27.0, -1.0};  // faces p-1 .. p+2, over 24 dx
constexpr double kGrad[4] = {1.0, -27.0, 27.0, -1.0};  // cells f-2 .. f+1, over 24 dx

int line_count(const Grid& g, int d) { return d == 0 ? g.n(1) : g.n(0); }

// Cell (i, j) of line `line` at position p along d.
std::pair<int, int> cell_of(int d, int line, int p) {
  return d == 0 ? std::pair{p, line} : std::pair{line, p};
}

double interp_face(double a0, double a1, double a2, double a3) {
  const double v = (-a0 + 9.0 * a1 + 9.0 * a2 - a3) / 16.0;
  return v >= 0.0 ? v : 0.5 * (a1 + a2);
}

}  // namespace

FaceCoefficients face_coefficients(const Field& a) {
  const Grid& g = a.grid();
  FaceCoefficients fc;
  fc.grid = g;
  for_interior(g, [&](int i, int j) {
    if (!(a(i, j) >= 0.0)) throw Error("central4: negative or non-finite diffusion coefficient");
  });
  for (int d = 0; d < g.dim(); ++d) {
    const int n = g.n(d);
    const int lines = line_count(g, d);
    auto& out = fc.face[d];
    out.assign(static_cast<std::size_t>(lines) * (n + 3), 0.0);
    for (int l = 0; l < lines; ++l) {
      auto [i0, j0] = cell_of(d, l, 0);
      const double* p = a.ptr(i0, j0);
      const std::ptrdiff_t s = g.stride(d);
      for (int f = -1; f <= n + 1; ++f)
        out[static_cast<std::size_t>(l) * (n + 3) + (f + 1)] =
            interp_face(p[(f - 2) * s], p[(f - 1) * s], p[f * s], p[(f + 1) * s]);
    }
  }
  return fc;
}

namespace {

template <class Fn>
FaceCoefficients map_faces(const Field& a, Fn&& interp) {
  const Grid& g = a.grid();
  FaceCoefficients fc;
  fc.grid = g;
  for (int d = 0; d < g.dim(); ++d) {
    const int n = g.n(d);
    const int lines = line_count(g, d);
    auto& out = fc.face[d];
    out.assign(static_cast<std::size_t>(lines) * (n + 3), 0.0);
    for (int l = 0; l < lines; ++l) {
      auto [i0, j0] = cell_of(d, l, 0);
      const double* p = a.ptr(i0, j0);
      const std::ptrdiff_t s = g.stride(d);
      for (int f = -1; f <= n + 1; ++f)
        out[static_cast<std::size_t>(l) * (n + 3) + (f + 1)] = interp(d, p + f * s, s);
    }
  }
  return fc;
}

}  // namespace

FaceCoefficients face_interpolate(const Field& v) {
  return map_faces(v, [](int, const double* p, std::ptrdiff_t s) {
    return (-p[-2 * s] + 9.0 * p[-s] + 9.0 * p[0] - p[s]) / 16.0;
  });
}

std::vector<FaceCoefficients> face_gradient(const Field& H) {
  const Grid& g = H.grid();
  const auto cell = central4_gradient(H);
  std::vector<FaceCoefficients> out;
  for (int c = 0; c < g.dim(); ++c) {
    FaceCoefficients fc = face_interpolate(cell[c]);
    // normal component: replace by the compact difference
    const FaceCoefficients normal = map_faces(H, [&](int, const double* p, std::ptrdiff_t s) {
      return (27.0 * (p[0] - p[-s]) - (p[s] - p[-2 * s])) / (24.0 * g.dx(c));
    });
    fc.face[c] = normal.face[c];
    out.push_back(std::move(fc));
  }
  return out;
}

FaceCoefficients limit_face_coefficients(const Field& h0, const Bathymetry& bath, const PhysParams& params) {
  if (!(params.k > 0.0)) throw ConfigError("limit equation requires k > 0");
  if (!(h0.grid() == bath.B.grid())) throw ConfigError("limit: grid mismatch");
  const Grid& g = h0.grid();
  for_interior(g, [&](int i, int j) {
    if (!(h0(i, j) > 0.0)) throw Error("limit coefficient: non-positive depth");
  });
  Field H(g);
  for (std::size_t n = 0; n < H.data().size(); ++n) H.data()[n] = h0.data()[n] + bath.B.data()[n];
  const auto grad = face_gradient(H);
  FaceCoefficients a = face_coefficients(h0);
  const double p = 0.5 * (params.eta + 1.0);
  for (int d = 0; d < g.dim(); ++d)
    for (std::size_t q = 0; q < a.face[d].size(); ++q) {
      double n2 = 0.0;
      for (int c = 0; c < g.dim(); ++c) n2 += grad[c].face[d][q] * grad[c].face[d][q];
      const double norm = std::max(std::sqrt(n2), kGradientFloor);
      a.face[d][q] = std::pow(a.face[d][q], p) / params.k / std::sqrt(norm);
    }
  return a;
}

Field flux_divergence(const FaceCoefficients& af, const Field& H) {
  const Grid& g = H.grid();
  if (!(af.grid == g)) throw ConfigError("central4: grid mismatch");
  Field out(g);
  std::vector<double> F;
  for (int d = 0; d < g.dim(); ++d) {
    const int n = g.n(d);
    const double c = 1.0 / (24.0 * g.dx(d));
    F.assign(n + 3, 0.0);
    for (int l = 0; l < line_count(g, d); ++l) {
      auto [i0, j0] = cell_of(d, l, 0);
      const double* p = H.ptr(i0, j0);
      const std::ptrdiff_t s = g.stride(d);
      for (int f = -1; f <= n + 1; ++f) {
        const double grad = (27.0 * (p[f * s] - p[(f - 1) * s]) - (p[(f + 1) * s] - p[(f - 2) * s])) * c;
        F[f + 1] = af.at(d, l, f) * grad;
      }
      double* po = out.ptr(i0, j0);
      for (int q = 0; q < n; ++q)
        po[q * s] += (27.0 * (F[q + 2] - F[q + 1]) - (F[q + 3] - F[q])) * c;
    }
  }
  return out;
}

Field central4_flux_divergence(const Field& a, const Field& H) {
  if (!(a.grid() == H.grid())) throw ConfigError("central4: grid mismatch");
  return flux_divergence(face_coefficients(a), H);
}

std::vector<Field> central4_gradient(const Field& f) {
  const Grid& g = f.grid();
  std::vector<Field> out;
  for (int d = 0; d < g.dim(); ++d) {
    Field o(g);
    const std::ptrdiff_t s = g.stride(d);
    const double c = 1.0 / (12.0 * g.dx(d));
    for_interior(g, [&](int i, int j) {
      const double* p = f.ptr(i, j);
      o(i, j) = (p[-2 * s] - 8.0 * p[-s] + 8.0 * p[s] - p[2 * s]) * c;
    });
    o.refresh_ghosts();
    out.push_back(std::move(o));
  }
  return out;
}

Field limit_coefficient(const Field& h0, const Bathymetry& bath, const PhysParams& params) {
  if (!(params.k > 0.0)) throw ConfigError("limit equation requires k > 0");
  if (!(h0.grid() == bath.B.grid())) throw ConfigError("limit: grid mismatch");
  const Grid& g = h0.grid();
  Field H(g);
  for (std::size_t n = 0; n < H.data().size(); ++n) H.data()[n] = h0.data()[n] + bath.B.data()[n];
  const auto grad = central4_gradient(H);
  Field a(g);
  const double p = 0.5 * (params.eta + 1.0);
  for_interior(g, [&](int i, int j) {
    double n2 = 0.0;
    for (int d = 0; d < g.dim(); ++d) n2 += grad[d](i, j) * grad[d](i, j);
    const double norm = std::max(std::sqrt(n2), kGradientFloor);
    a(i, j) = std::pow(h0(i, j), p) / params.k / std::sqrt(norm);
  });
  a.refresh_ghosts();
  return a;
}

Field limit_rhs(const Field& h0, const Bathymetry& bath, const PhysParams& params) {
  Field H(h0.grid());
  for (std::size_t n = 0; n < H.data().size(); ++n) H.data()[n] = h0.data()[n] + bath.B.data()[n];
  H.refresh_ghosts();
  return flux_divergence(limit_face_coefficients(h0, bath, params), H);
}

struct DiffusionSolver::Impl {
  Grid grid;
  // 1D lines are banded and factorized directly. In 2D the 7-wide cross
  // stencil fills in badly, so Krylov methods take over, warm-started from
  // the previous solution: CG where periodic wrap keeps the matrix
  // symmetric positive definite, BiCGSTAB otherwise.
  bool symmetric = true;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::IncompleteCholesky<double>>
      cg;
  Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> bicg;
  Eigen::SparseMatrix<double> mat;
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd last;
  bool analysed = false;

  int wrap(int d, int p) const {
    const int n = grid.n(d);
    if (grid.bc(d) == Boundary::periodic) return ((p % n) + n) % n;
    return std::clamp(p, 0, n - 1);
  }
  int unknown(int i, int j) const { return j * grid.n(0) + i; }
};

DiffusionSolver::DiffusionSolver(const Grid& grid) : impl_(std::make_unique<Impl>()) {
  impl_->grid = grid;
  for (int d = 0; d < grid.dim(); ++d)
    if (grid.bc(d) != Boundary::periodic) impl_->symmetric = false;
}
DiffusionSolver::~DiffusionSolver() = default;
DiffusionSolver::DiffusionSolver(DiffusionSolver&&) noexcept = default;
DiffusionSolver& DiffusionSolver::operator=(DiffusionSolver&&) noexcept = default;

Field DiffusionSolver::solve(const FaceCoefficients& af, double s, const Field& r) {
  Impl& m = *impl_;
  const Grid& g = m.grid;
  if (!(r.grid() == g) || !(af.grid == g)) throw ConfigError("diffusion solve: grid mismatch");
  const int N = static_cast<int>(g.cells());
  m.trip.clear();
  m.trip.reserve(static_cast<std::size_t>(N) * (1 + 16 * g.dim()));
  for_interior(g, [&](int i, int j) {
    const int row = m.unknown(i, j);
    m.trip.emplace_back(row, row, 1.0);
    for (int d = 0; d < g.dim(); ++d) {
      const int p = d == 0 ? i : j;
      const int l = d == 0 ? j : i;
      const double c = 1.0 / (24.0 * g.dx(d));
      for (int a = 0; a < 4; ++a) {
        const int f = p - 1 + a;
        const double wf = -s * kDiv[a] * c * af.at(d, l, f) * c;
        for (int b = 0; b < 4; ++b) {
          const int q = m.wrap(d, f - 2 + b);
          const int col = d == 0 ? m.unknown(q, j) : m.unknown(i, q);
          m.trip.emplace_back(row, col, wf * kGrad[b]);
        }
      }
    }
  });
  m.mat.resize(N, N);
  m.mat.setFromTriplets(m.trip.begin(), m.trip.end());
  Eigen::VectorXd rhs(N);
  for_interior(g, [&](int i, int j) { rhs[m.unknown(i, j)] = r(i, j); });
  if (g.dim() == 1) {
    if (!m.analysed) m.lu.analyzePattern(m.mat);
    m.lu.factorize(m.mat);
    if (m.lu.info() != Eigen::Success) throw Error("diffusion solve: factorization failed");
  } else if (m.symmetric) {
    m.cg.setMaxIterations(kKrylovMaxIterations);
    m.cg.compute(m.mat);
  } else {
    m.bicg.setMaxIterations(kKrylovMaxIterations);
    // Eigen's default fill (10, drop 1e-12) costs more than the iterations it saves.
    m.bicg.preconditioner().setFillfactor(2);
    m.bicg.preconditioner().setDroptol(1e-4);
    m.bicg.compute(m.mat);
  }
  m.analysed = true;
  auto linear = [&](const Eigen::VectorXd& b, const Eigen::VectorXd& guess, double tol) -> Eigen::VectorXd {
    if (g.dim() == 1) return m.lu.solve(b);
    Eigen::VectorXd y;
    Eigen::ComputationInfo info;
    if (m.symmetric) {
      m.cg.setTolerance(tol);
      y = m.cg.solveWithGuess(b, guess);
      info = m.cg.info();
    } else {
      m.bicg.setTolerance(tol);
      y = m.bicg.solveWithGuess(b, guess);
      info = m.bicg.info();
    }
    if (info != Eigen::Success) {
      // Round-off can stall the last digits; accept a residual within a
      // couple of digits of the target.
      const double res = (b - m.mat * y).norm() / std::max(b.norm(), 1e-300);
      if (!(res < 1e2 * tol)) throw Error("diffusion solve: Krylov iteration failed");
    }
    return y;
  };
  Eigen::VectorXd x = linear(rhs, m.last.size() == N ? m.last : rhs, kKrylovTolerance);

  // Large face coefficients make the assembled rows cancel badly, which
  // leaks mass. The residual in flux form only sees differences of x, so
  // correction solves recover conservation to round-off.
  Field out(g);
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * rhs.lpNorm<Eigen::Infinity>();
  Eigen::VectorXd rho(N);
  const int passes = g.dim() == 1 ? kRefinePasses1D : kRefinePasses2D;
  for (int pass = 0; pass < passes; ++pass) {
    for_interior(g, [&](int i, int j) { out(i, j) = x[m.unknown(i, j)]; });
    out.refresh_ghosts();
    const Field fd = flux_divergence(af, out);
    for_interior(g, [&](int i, int j) { rho[m.unknown(i, j)] = (r(i, j) - out(i, j)) + s * fd(i, j); });
    if (!(rho.lpNorm<Eigen::Infinity>() > floor)) break;
    x += linear(rho, Eigen::VectorXd::Zero(N), kCorrectionTolerance);
  }
  if (g.dim() > 1) m.last = x;
  for_interior(g, [&](int i, int j) { out(i, j) = x[m.unknown(i, j)]; });
  out.refresh_ghosts();
  return out;
}

}  // namespace swsi
