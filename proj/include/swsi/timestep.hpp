#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "swsi/core.hpp"
#include "swsi/diffusion.hpp"
#include "swsi/reconstruct.hpp"

namespace swsi {

struct PicardConfig {
  double delta = 1e-9;
  int max_iters = 100;

  void validate() const;
};

// Extra momentum source S(t) (e.g. manufactured solutions), written into the
// interior of `out` (one Field per dimension).
using SourceFn = std::function<void(double t, std::vector<Field>& out)>;

enum class FrictionTreatment {
  implicit,        // SI-S1: |m| solved with the stage
  explicit_lagged  // SI-S2: gamma from the explicit stage momentum
};

// How the depth part of a stage flux is read off once h_I is known.
enum class DepthFluxRecovery {
  lw_divergence,  // -div_LW(m_I)
  picard          // (h_I - h*) / (a_ii dt), consistent with the depth solve
};

struct StepConfig {
  PicardConfig picard;
  double xi = 1e-15;
  WenoConfig weno;
  DepthFluxRecovery depth_flux = DepthFluxRecovery::picard;
  SourceFn source;

  void validate() const;
};

double max_wave_speed(const Field& h, const std::vector<Field>& m, const PhysParams& params);
double compute_dt(const State& state, const PhysParams& params, double cfl, double dx_min);

bool steady_state_check(const Field& H, double delta, const WenoConfig& cfg = {});

struct PicardProblem {
  const Field* h_star = nullptr;
  const std::vector<Field>* m_star = nullptr;
  const Field* h_E = nullptr;
  const Bathymetry* bath = nullptr;
  double tau = 0.0;
  double lambda = 1.0;
  PhysParams params;
  FrictionTreatment treatment = FrictionTreatment::implicit;
  const Field* gamma_E = nullptr;  // explicit_lagged only
};

struct PicardResult {
  Field h;
  int iters = 0;
  std::vector<double> history;  // L1 size of each update
};

// Lagged-coefficient Picard for the implicit depth update
//   h = h* - tau div(w eps^2 m*) + tau^2 div(w g h_E grad H),
// w from the momentum closure at the previous iterate. Each sweep solves the
// linear system in H exactly.
PicardResult picard_solve_depth(const PicardProblem& prob, const PicardConfig& cfg,
                                DiffusionSolver& solver, const WenoConfig& weno = {});
PicardResult picard_solve_depth(const PicardProblem& prob, const PicardConfig& cfg);

// Holds the per-grid linear solver so its symbolic analysis is reused.
class Integrator {
 public:
  Integrator(const Grid& grid, StepConfig cfg);

  RunReport step_first_order(State& state, const Bathymetry& bath, const PhysParams& params, double dt);
  RunReport step_si_imex_rk(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                            const DoubleTableau& tab);
  RunReport step_si_s2(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                       const DoubleTableau& tab);

  const StepConfig& config() const { return cfg_; }

 private:
  RunReport advance(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                    const DoubleTableau& tab, FrictionTreatment treatment);

  StepConfig cfg_;
  DiffusionSolver solver_;
};

RunReport step_first_order(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                           const StepConfig& cfg);
RunReport step_si_imex_rk(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                          const DoubleTableau& tab, const StepConfig& cfg);
RunReport step_si_s2(State& state, const Bathymetry& bath, const PhysParams& params, double dt,
                     const DoubleTableau& tab, const StepConfig& cfg);

}  // namespace swsi
