#include "swsi/timestep.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "swsi/errors.hpp"
#include "swsi/friction.hpp"

namespace swsi {

void PicardConfig::validate() const {
  if (!(delta > 0.0)) throw ConfigError("picard delta must be positive");
  if (max_iters < 1) throw ConfigError("picard max_iters must be >= 1");
}

void StepConfig::validate() const {
  picard.validate();
  weno.validate();
  if (!(xi > 0.0)) throw ConfigError("cut-off xi must be positive");
}

double max_wave_speed(const Field& h, const std::vector<Field>& m, const PhysParams& params) {
  const double cap = std::min(1.0, 1.0 / params.epsilon);
  double lam = 0.0;
  for_interior(h.grid(), [&](int i, int j) {
    double m2 = 0.0;
    for (const auto& c : m) m2 += c(i, j) * c(i, j);
    const double v = std::sqrt(m2) / h(i, j) + cap * std::sqrt(params.g * h(i, j));
    if (!std::isfinite(v)) throw Error("non-finite state while computing wave speed");
    lam = std::max(lam, v);
  });
  return lam;
}

double compute_dt(const State& state, const PhysParams& params, double cfl, double dx_min) {
  const double lam = max_wave_speed(state.h, state.m, params);
  if (!(lam > 0.0)) throw Error("zero wave speed");
  return cfl * dx_min / lam;
}

bool steady_state_check(const Field& H, double delta, const WenoConfig& cfg) {
  const auto grad = grad_w(H, cfg);
  const Grid& g = H.grid();
  double s = 0.0;
  for_interior(g, [&](int i, int j) {
    double n2 = 0.0;
    for (const auto& c : grad) n2 += c(i, j) * c(i, j);
    s += std::sqrt(n2);
  });
  return s * g.cell_volume() < delta;
}

namespace {

Field plus(const Field& a, const Field& b) {
  Field r = a;
  axpy(r, 1.0, b);
  return r;
}

void check_positive(const Field& h, const char* where) {
  for_interior(h.grid(), [&](int i, int j) {
    if (!(h(i, j) > 0.0)) {
      std::ostringstream os;
      os << "non-positive depth " << h(i, j) << " at cell (" << i << ", " << j << ") in " << where;
      throw PositivityError(os.str());
    }
  });
}

}  // namespace

PicardResult picard_solve_depth(const PicardProblem& prob, const PicardConfig& cfg, DiffusionSolver& solver,
                                const WenoConfig& weno) {
  const Field& hs = *prob.h_star;
  const Field& hE = *prob.h_E;
  const Bathymetry& bath = *prob.bath;
  const auto& ms = *prob.m_star;
  const Grid& g = hs.grid();
  const int dim = g.dim();
  const double tau = prob.tau;
  const double e2 = prob.params.epsilon * prob.params.epsilon;
  const double gr = prob.params.g;
  if (!(tau > 0.0)) throw ConfigError("picard: tau must be positive");
  if (prob.treatment == FrictionTreatment::explicit_lagged && prob.gamma_E == nullptr)
    throw ConfigError("picard: explicit friction needs gamma_E");

  PicardResult res;
  Field h = hE;
  Field H = plus(h, bath.B);
  const Field base = plus(hs, bath.B);
  std::vector<Field> q(dim, Field(g));
  std::vector<const Field*> qp;
  for (auto& f : q) qp.push_back(&f);
  // Face data that does not change between sweeps.
  const FaceCoefficients hEf = face_coefficients(hE);
  std::vector<FaceCoefficients> msf;
  for (const auto& f : ms) msf.push_back(face_interpolate(f));
  FaceCoefficients gammaf;
  if (prob.treatment == FrictionTreatment::explicit_lagged) gammaf = face_coefficients(*prob.gamma_E);

  auto weight = [&](double rhs_norm, double h_ref, double gamma) {
    return prob.treatment == FrictionTreatment::implicit ? implicit_friction_weight(rhs_norm, tau, h_ref, prob.params)
                                                         : 1.0 / (e2 + tau * gamma);
  };

  for (int k = 0; k < cfg.max_iters; ++k) {
    // Cell closure for the advective part.
    const auto grad = central4_gradient(H);
    for_interior(g, [&](int i, int j) {
      double n2 = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double r = e2 * ms[d](i, j) - tau * gr * hE(i, j) * grad[d](i, j);
        n2 += r * r;
      }
      const double gam = prob.gamma_E ? (*prob.gamma_E)(i, j) : 0.0;
      const double w = weight(std::sqrt(n2), hE(i, j), gam);
      for (int d = 0; d < dim; ++d) q[d](i, j) = w * e2 * ms[d](i, j);
    });
    for (auto& f : q) f.refresh_ghosts();

    // Face closure for the diffusion coefficient; |grad H| is measured with
    // the same face gradient the operator applies.
    const auto gf = face_gradient(H);
    FaceCoefficients cf = hEf;
    for (int d = 0; d < dim; ++d)
      for (std::size_t n = 0; n < cf.face[d].size(); ++n) {
        const double hf = hEf.face[d][n];
        double n2 = 0.0;
        for (int c2 = 0; c2 < dim; ++c2) {
          const double r = e2 * msf[c2].face[d][n] - tau * gr * hf * gf[c2].face[d][n];
          n2 += r * r;
        }
        const double gam = prob.gamma_E ? gammaf.face[d][n] : 0.0;
        cf.face[d][n] = weight(std::sqrt(n2), hf, gam) * gr * hf;
      }

    Field r = base;
    axpy(r, -tau, split_divergence(qp, H, prob.lambda, weno));
    Field Hn = solver.solve(cf, tau * tau, r);
    Field hn = Hn;
    axpy(hn, -1.0, bath.B);

    double diff = 0.0;
    for_interior(g, [&](int i, int j) { diff += std::abs(hn(i, j) - h(i, j)); });
    diff *= g.cell_volume();
    res.history.push_back(diff);
    h = std::move(hn);
    H = std::move(Hn);
    if (!std::isfinite(diff)) break;
    if (diff < cfg.delta) {
      res.iters = k + 1;
      res.h = std::move(h);
      return res;
    }
  }
  std::ostringstream os;
  os << "Picard iteration did not converge in " << cfg.max_iters << " sweeps (last update "
     << (res.history.empty() ? 0.0 : res.history.back()) << ")";
  throw NonconvergenceError(os.str(), res.history);
}

PicardResult picard_solve_depth(const PicardProblem& prob, const PicardConfig& cfg) {
  DiffusionSolver solver(prob.h_star->grid());
  return picard_solve_depth(prob, cfg, solver);
}

Integrator::Integrator(const Grid& grid, StepConfig cfg) : cfg_(std::move(cfg)), solver_(grid) {
  cfg_.validate();
}

RunReport Integrator::step_first_order(State& state, const Bathymetry& bath, const PhysParams& params,
                                       double dt) {
  return advance(state, bath, params, dt, tableau_euler(), FrictionTreatment::implicit);
}

RunReport Integrator::step_si_imex_rk(State& state, const Bathymetry& bath, const PhysParams& params,
                                      double dt, const DoubleTableau& tab) {
  return advance(state, bath, params, dt, tab, FrictionTreatment::implicit);
}

RunReport Integrator::step_si_s2(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                                 const DoubleTableau& tab) {
  return advance(state, bath, params, dt, tab, FrictionTreatment::explicit_lagged);
}

RunReport Integrator::advance(State& st, const Bathymetry& bath, const PhysParams& params, double dt,
                              const DoubleTableau& tab, FrictionTreatment treatment) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
  if (!validate_tableau(tab).empty()) throw ConfigError("tableau failed validation");
  params.validate();
  const Grid& g = st.grid();
  if (!(bath.B.grid() == g)) throw ConfigError("state/bathymetry grid mismatch");
  const int dim = g.dim();
  const int s = tab.s;
  const double e2 = params.epsilon * params.epsilon;

  RunReport rep;
  rep.steps = 1;
  st.refresh_ghosts();
  check_positive(st.h, "input state");
  const bool steady = steady_state_check(surface_level(st, bath), cfg_.picard.delta, cfg_.weno);
  if (steady) ++rep.steady_hits;

  std::vector<Field> Kh(s);
  std::vector<std::vector<Field>> Km(s);
  Field hI;
  std::vector<Field> mI;
  std::vector<Field> src;
  if (cfg_.source) src.assign(dim, Field(g));

  // SI-S2 lags gamma at the start of the step.
  Field gammaE;
  if (treatment == FrictionTreatment::explicit_lagged) {
    gammaE = Field(g);
    for_interior(g, [&](int a, int b) {
      double n2 = 0.0;
      for (int d = 0; d < dim; ++d) n2 += st.m[d](a, b) * st.m[d](a, b);
      gammaE(a, b) = friction_gamma(std::sqrt(n2), st.h(a, b), params);
    });
    gammaE.refresh_ghosts();
  }

  for (int i = 0; i < s; ++i) {
    Field hE = st.h, hs = st.h;
    std::vector<Field> mE = st.m, ms = st.m;
    for (int j = 0; j < i; ++j) {
      axpy(hE, dt * tab.ex(i, j), Kh[j]);
      axpy(hs, dt * tab.im(i, j), Kh[j]);
      for (int d = 0; d < dim; ++d) {
        axpy(mE[d], dt * tab.ex(i, j), Km[j][d]);
        axpy(ms[d], dt * tab.im(i, j), Km[j][d]);
      }
    }
    check_positive(hE, "explicit stage");
    const double tau = tab.im(i, i) * dt;
    const double lam = max_wave_speed(hE, mE, params);

    State sE{hE, mE, st.t};
    const auto conv = div_lw(sE, bath, lam, FluxKind::momentum, cfg_.weno);
    for (int d = 0; d < dim; ++d) axpy(ms[d], -tau, conv[d]);
    if (cfg_.source) {
      cfg_.source(st.t + tab.c_im[i] * dt, src);
      for (int d = 0; d < dim; ++d) axpy(ms[d], tau, src[d]);
    }
    for (auto& f : ms) f.refresh_ghosts();

    if (steady) {
      hI = st.h;
    } else {
      PicardProblem prob;
      prob.h_star = &hs;
      prob.m_star = &ms;
      prob.h_E = &hE;
      prob.bath = &bath;
      prob.tau = tau;
      prob.lambda = lam;
      prob.params = params;
      prob.treatment = treatment;
      prob.gamma_E = treatment == FrictionTreatment::explicit_lagged ? &gammaE : nullptr;
      PicardResult pr = picard_solve_depth(prob, cfg_.picard, solver_, cfg_.weno);
      hI = std::move(pr.h);
      rep.picard_total += pr.iters;
      rep.picard_max = std::max<long>(rep.picard_max, pr.iters);
      ++rep.implicit_solves;
    }
    check_positive(hI, "implicit stage");

    const Field HI = plus(hI, bath.B);
    const auto group = grad_wb_group(hI, HI, bath, params, cfg_.weno);
    mI.assign(dim, Field(g));
    for_interior(g, [&](int a, int b) {
      double r[2] = {0.0, 0.0};
      double n2 = 0.0, mp2 = 0.0;
      for (int d = 0; d < dim; ++d) {
        r[d] = e2 * ms[d](a, b) - tau * group[d](a, b);
        n2 += r[d] * r[d];
        mp2 += st.m[d](a, b) * st.m[d](a, b);
      }
      const double nrm = std::sqrt(n2);
      if (equilibrium_cutoff(nrm, std::sqrt(mp2), cfg_.xi)) return;  // m_I stays 0
      const double w = treatment == FrictionTreatment::implicit
                           ? implicit_friction_weight(nrm, tau, hI(a, b), params)
                           : 1.0 / (e2 + tau * gammaE(a, b));
      for (int d = 0; d < dim; ++d) mI[d](a, b) = w * r[d];
    });
    for (auto& f : mI) f.refresh_ghosts();

    // Stage fluxes from the implicit values: no 1/eps^2 factor is evaluated.
    Km[i].assign(dim, Field(g));
    for (int d = 0; d < dim; ++d) {
      Field k = mI[d];
      axpy(k, -1.0, st.m[d]);
      for (int j = 0; j < i; ++j) axpy(k, -dt * tab.im(i, j), Km[j][d]);
      for (auto& v : k.data()) v /= tau;
      Km[i][d] = std::move(k);
    }
    if (cfg_.depth_flux == DepthFluxRecovery::picard) {
      Field k = hI;
      axpy(k, -1.0, hs);
      for (auto& v : k.data()) v /= tau;
      Kh[i] = std::move(k);
    } else {
      State sI{hI, mI, st.t};
      Kh[i] = std::move(div_lw(sI, bath, lam, FluxKind::depth, cfg_.weno)[0]);
      for (auto& v : Kh[i].data()) v = -v;
      Kh[i].refresh_ghosts();
    }
  }

  // Stiffly accurate: the step result is the last implicit stage.
  st.h = std::move(hI);
  st.m = std::move(mI);
  st.t += dt;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

RunReport step_first_order(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                           const StepConfig& cfg) {
  Integrator it(state.grid(), cfg);
  return it.step_first_order(state, bath, params, dt);
}

RunReport step_si_imex_rk(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                          const DoubleTableau& tab, const StepConfig& cfg) {
  Integrator it(state.grid(), cfg);
  return it.step_si_imex_rk(state, bath, params, dt, tab);
}

RunReport step_si_s2(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                     const DoubleTableau& tab, const StepConfig& cfg) {
  Integrator it(state.grid(), cfg);
  return it.step_si_s2(state, bath, params, dt, tab);
}

}  // namespace swsi
