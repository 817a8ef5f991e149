#include "swsi/limit.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "swsi/errors.hpp"
#include "swsi/reconstruct.hpp"

namespace swsi {

LimitIntegrator::LimitIntegrator(const Grid& grid, PicardConfig cfg) : cfg_(cfg), solver_(grid) {
  cfg_.validate();
}

RunReport LimitIntegrator::step(LimitState& st, const Bathymetry& bath, const PhysParams& params, double dt,
                                const DoubleTableau& tab) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(params.k > 0.0)) throw ConfigError("limit solver requires k > 0");
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  for (int i = 0; i < tab.s; ++i)
    if (!(tab.im(i, i) > 0.0)) throw ConfigError("limit solver needs a DIRK with positive diagonal");
  const Grid& g = st.h0.grid();
  st.h0.refresh_ghosts();

  RunReport rep;
  rep.steps = 1;
  std::vector<Field> K(tab.s);
  Field hi;
  for (int i = 0; i < tab.s; ++i) {
    const double tau = tab.im(i, i) * dt;
    Field base = st.h0;
    for (int j = 0; j < i; ++j) axpy(base, dt * tab.im(i, j), K[j]);
    Field r = base;
    axpy(r, 1.0, bath.B);

    Field h = i == 0 ? st.h0 : hi;
    std::vector<double> history;
    int iters = 0;
    for (int k = 0; k < cfg_.max_iters; ++k) {
      Field H = solver_.solve(limit_face_coefficients(h, bath, params), tau, r);
      axpy(H, -1.0, bath.B);
      double diff = 0.0;
      for_interior(g, [&](int a0, int b0) { diff += std::abs(H(a0, b0) - h(a0, b0)); });
      diff *= g.cell_volume();
      history.push_back(diff);
      h = std::move(H);
      for_interior(g, [&](int a0, int b0) {
        if (!(h(a0, b0) > 0.0)) throw PositivityError("limit solver: non-positive depth");
      });
      if (diff < cfg_.delta) {
        iters = k + 1;
        break;
      }
    }
    if (iters == 0) {
      std::ostringstream os;
      os << "limit Picard did not converge in " << cfg_.max_iters << " sweeps";
      throw NonconvergenceError(os.str(), history);
    }
    rep.picard_total += iters;
    rep.picard_max = std::max<long>(rep.picard_max, iters);
    ++rep.implicit_solves;

    Field k = h;
    axpy(k, -1.0, base);
    for (auto& v : k.data()) v /= tau;
    K[i] = std::move(k);
    hi = std::move(h);
  }
  st.h0 = std::move(hi);
  st.t += dt;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

LimitState step_limit_dirk(const LimitState& state, const Bathymetry& bath, const PhysParams& params, double dt,
                           const DoubleTableau& tab, const PicardConfig& cfg, RunReport* report) {
  LimitState out = state;
  LimitIntegrator it(state.h0.grid(), cfg);
  const RunReport r = it.step(out, bath, params, dt, tab);
  if (report) *report += r;
  return out;
}

std::vector<Field> limit_momentum(const Field& h0, const Bathymetry& bath, const PhysParams& params) {
  if (!(params.k > 0.0)) throw ConfigError("limit momentum requires k > 0");
  const Grid& g = h0.grid();
  Field H(g);
  for (std::size_t n = 0; n < H.data().size(); ++n) H.data()[n] = h0.data()[n] + bath.B.data()[n];
  H.refresh_ghosts();
  const auto grad = grad_w(H);
  std::vector<Field> m(g.dim(), Field(g));
  const double p = 0.5 * (params.eta + 1.0);
  for_interior(g, [&](int i, int j) {
    double n2 = 0.0;
    for (int d = 0; d < g.dim(); ++d) n2 += grad[d](i, j) * grad[d](i, j);
    const double coef = std::pow(h0(i, j), p) / params.k / std::sqrt(std::max(std::sqrt(n2), kGradientFloor));
    for (int d = 0; d < g.dim(); ++d) m[d](i, j) = -coef * grad[d](i, j);
  });
  for (auto& f : m) f.refresh_ghosts();
  return m;
}

double limit_dt(const Field& h0, const Bathymetry& bath, const PhysParams& params, double cfl) {
  const auto m = limit_momentum(h0, bath, params);
  State s{h0, m, 0.0};
  return compute_dt(s, params, cfl, h0.grid().min_dx());
}

}  // namespace swsi
