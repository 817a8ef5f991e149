#include "swsi/reconstruct.hpp"

#include <cmath>

#include "swsi/errors.hpp"

namespace swsi {

void WenoConfig::validate() const {
  if (!(eps_weno > 0.0)) throw ConfigError("eps_weno must be positive");
  const double s = ideal_weights[0] + ideal_weights[1] + ideal_weights[2];
  if (std::abs(s - 1.0) > 1e-14) throw ConfigError("ideal WENO weights must sum to 1");
}

Weights3 weno5_weights(const Stencil5& u, const WenoConfig& cfg) {
  const double a = u[0], b = u[1], c = u[2], d = u[3], e = u[4];
  const double t0 = a - 2.0 * b + c, s0 = a - 4.0 * b + 3.0 * c;
  const double t1 = b - 2.0 * c + d, s1 = b - d;
  const double t2 = c - 2.0 * d + e, s2 = 3.0 * c - 4.0 * d + e;
  const double beta0 = 13.0 / 12.0 * t0 * t0 + 0.25 * s0 * s0;
  const double beta1 = 13.0 / 12.0 * t1 * t1 + 0.25 * s1 * s1;
  const double beta2 = 13.0 / 12.0 * t2 * t2 + 0.25 * s2 * s2;
  const double r0 = cfg.eps_weno + beta0, r1 = cfg.eps_weno + beta1, r2 = cfg.eps_weno + beta2;
  const double a0 = cfg.ideal_weights[0] / (r0 * r0);
  const double a1 = cfg.ideal_weights[1] / (r1 * r1);
  const double a2 = cfg.ideal_weights[2] / (r2 * r2);
  const double sum = a0 + a1 + a2;
  return {a0 / sum, a1 / sum, a2 / sum};
}

// Candidates written as corrections to u[2], so a constant stencil returns
// u[2] exactly whatever the weights.
double weno5_apply(const Stencil5& u, const Weights3& w) {
  const double c = u[2];
  const double da = u[0] - c, db = u[1] - c, dd = u[3] - c, de = u[4] - c;
  const double q0 = (2.0 * da - 7.0 * db) / 6.0;
  const double q1 = (-db + 2.0 * dd) / 6.0;
  const double q2 = (5.0 * dd - de) / 6.0;
  return c + (w[0] * q0 + w[1] * q1 + w[2] * q2);
}

double weno5_face_value(const Stencil5& v, Bias bias, const WenoConfig& cfg) {
  const Stencil5 u = bias == Bias::left ? v : Stencil5{v[4], v[3], v[2], v[1], v[0]};
  return weno5_apply(u, weno5_weights(u, cfg));
}

namespace {

// One grid line: n interior cells at p[0..n-1] with stride s; ghosts at
// p[-3..-1] and p[n..n+2]. Faces f = 0..n sit between cells f-1 and f.
struct Line {
  const double* p;
  std::ptrdiff_t s;
  double at(int i) const { return p[i * s]; }
  Stencil5 left(int f) const { return {at(f - 3), at(f - 2), at(f - 1), at(f), at(f + 1)}; }
  Stencil5 right(int f) const { return {at(f + 2), at(f + 1), at(f), at(f - 1), at(f - 2)}; }
};

template <class Fn>
void for_lines(const Grid& g, int d, Fn&& fn) {
  // fn(i0, j0): start cell of the line along dimension d
  if (d == 0) {
    for (int j = 0; j < g.n(1); ++j) fn(0, j);
  } else {
    for (int i = 0; i < g.n(0); ++i) fn(i, 0);
  }
}

void check_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("grid mismatch");
}

}  // namespace

Field split_divergence(const std::vector<const Field*>& flux, const Field& q, double lambda,
                       const WenoConfig& cfg) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("div_lw: lambda must be positive");
  const Grid& g = q.grid();
  if (static_cast<int>(flux.size()) != g.dim()) throw ConfigError("div_lw: one flux per dimension");
  Field out(g);
  std::vector<double> fp, fm, F;
  for (int d = 0; d < g.dim(); ++d) {
    check_same_grid(*flux[d], q);
    const int n = g.n(d);
    const double inv_dx = 1.0 / g.dx(d);
    fp.assign(n + 6, 0.0);
    fm.assign(n + 6, 0.0);
    F.assign(n + 1, 0.0);
    for_lines(g, d, [&](int i0, int j0) {
      const std::ptrdiff_t s = g.stride(d);
      const double* pf = flux[d]->ptr(i0, j0);
      const double* pq = q.ptr(i0, j0);
      for (int k = -3; k < n + 3; ++k) {
        fp[k + 3] = 0.5 * (pf[k * s] + lambda * pq[k * s]);
        fm[k + 3] = 0.5 * (pf[k * s] - lambda * pq[k * s]);
      }
      const Line lp{fp.data() + 3, 1}, lm{fm.data() + 3, 1};
      for (int f = 0; f <= n; ++f) {
        const Stencil5 up = lp.left(f), um = lm.right(f);
        F[f] = weno5_apply(up, weno5_weights(up, cfg)) + weno5_apply(um, weno5_weights(um, cfg));
      }
      double* po = out.ptr(i0, j0);
      for (int i = 0; i < n; ++i) po[i * s] += (F[i + 1] - F[i]) * inv_dx;
    });
  }
  return out;
}

std::vector<Field> div_lw(const State& state, const Bathymetry& bath, double lambda, FluxKind which,
                          const WenoConfig& cfg) {
  const Grid& g = state.grid();
  const int dim = g.dim();
  if (which == FluxKind::depth) {
    const Field H = surface_level(state, bath);
    std::vector<const Field*> f;
    for (int d = 0; d < dim; ++d) f.push_back(&state.m[d]);
    std::vector<Field> out;
    out.push_back(split_divergence(f, H, lambda, cfg));
    return out;
  }
  // (m⊗m/h): component c has flux m_c m_d / h along d. Pointwise on refreshed
  // inputs, so the ghosts are already consistent.
  std::vector<Field> out;
  const auto& h = state.h.data();
  for (int c = 0; c < dim; ++c) {
    std::vector<Field> fl;
    for (int d = 0; d < dim; ++d) {
      Field f(g);
      auto& fv = f.data();
      const auto& mc = state.m[c].data();
      const auto& md = state.m[d].data();
      for (std::size_t n = 0; n < fv.size(); ++n) fv[n] = h[n] > 0.0 ? mc[n] * md[n] / h[n] : 0.0;
      fl.push_back(std::move(f));
    }
    std::vector<const Field*> fp;
    for (auto& f : fl) fp.push_back(&f);
    out.push_back(split_divergence(fp, state.m[c], lambda, cfg));
  }
  return out;
}

std::vector<Field> grad_w(const Field& field, const WenoConfig& cfg) {
  const Grid& g = field.grid();
  std::vector<Field> out;
  std::vector<double> F;
  for (int d = 0; d < g.dim(); ++d) {
    Field o(g);
    const int n = g.n(d);
    const double inv_dx = 1.0 / g.dx(d);
    F.assign(n + 1, 0.0);
    for_lines(g, d, [&](int i0, int j0) {
      const std::ptrdiff_t s = g.stride(d);
      const Line l{field.ptr(i0, j0), s};
      for (int f = 0; f <= n; ++f) {
        const Stencil5 ul = l.left(f), ur = l.right(f);
        F[f] = 0.5 * (weno5_apply(ul, weno5_weights(ul, cfg)) + weno5_apply(ur, weno5_weights(ur, cfg)));
      }
      double* po = o.ptr(i0, j0);
      for (int i = 0; i < n; ++i) po[i * s] = (F[i + 1] - F[i]) * inv_dx;
    });
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Field> grad_wb_group(const Field& h, const Field& H, const Bathymetry& bath,
                                 const PhysParams& params, const WenoConfig& cfg) {
  check_same_grid(h, H);
  check_same_grid(h, bath.B);
  const Grid& g = h.grid();
  Field P(g);
  {
    auto& pv = P.data();
    const auto& hv = h.data();
    for (std::size_t n = 0; n < pv.size(); ++n) pv[n] = 0.5 * params.g * hv[n] * hv[n];
  }
  const Field& ind = cfg.shared_indicator_source == IndicatorSource::surface_level ? H : P;

  std::vector<Field> out;
  std::vector<double> FP, FB, FB2;
  for (int d = 0; d < g.dim(); ++d) {
    Field o(g);
    const int n = g.n(d);
    const double inv_dx = 1.0 / g.dx(d);
    FP.assign(n + 1, 0.0);
    FB.assign(n + 1, 0.0);
    FB2.assign(n + 1, 0.0);
    for_lines(g, d, [&](int i0, int j0) {
      const std::ptrdiff_t s = g.stride(d);
      const Line li{ind.ptr(i0, j0), s}, lp{P.ptr(i0, j0), s}, lb{bath.B.ptr(i0, j0), s},
          lb2{bath.half_gB2.ptr(i0, j0), s};
      for (int f = 0; f <= n; ++f) {
        const Weights3 wl = weno5_weights(li.left(f), cfg);
        const Weights3 wr = weno5_weights(li.right(f), cfg);
        FP[f] = 0.5 * (weno5_apply(lp.left(f), wl) + weno5_apply(lp.right(f), wr));
        FB[f] = 0.5 * (weno5_apply(lb.left(f), wl) + weno5_apply(lb.right(f), wr));
        FB2[f] = 0.5 * (weno5_apply(lb2.left(f), wl) + weno5_apply(lb2.right(f), wr));
      }
      double* po = o.ptr(i0, j0);
      const double* pH = H.ptr(i0, j0);
      for (int i = 0; i < n; ++i) {
        const double dP = (FP[i + 1] - FP[i]) * inv_dx;
        const double dB = (FB[i + 1] - FB[i]) * inv_dx;
        const double dB2 = (FB2[i + 1] - FB2[i]) * inv_dx;
        po[i * s] = dP + params.g * pH[i * s] * dB - dB2;
      }
    });
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace swsi
