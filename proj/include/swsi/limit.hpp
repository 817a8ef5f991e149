#pragma once

#include <vector>

#include "swsi/core.hpp"
#include "swsi/diffusion.hpp"
#include "swsi/timestep.hpp"

namespace swsi {

struct LimitState {
  Field h0;
  double t = 0.0;
};

// DIRK on dh0/dt = limit_rhs(h0) with the implicit half of `tab`. Every stage
// is a lagged-coefficient Picard with one linear solve per sweep.
class LimitIntegrator {
 public:
  LimitIntegrator(const Grid& grid, PicardConfig cfg);
  RunReport step(LimitState& state, const Bathymetry& bath, const PhysParams& params, double dt,
                 const DoubleTableau& tab);

 private:
  PicardConfig cfg_;
  DiffusionSolver solver_;
};

LimitState step_limit_dirk(const LimitState& state, const Bathymetry& bath, const PhysParams& params, double dt,
                           const DoubleTableau& tab, const PicardConfig& cfg, RunReport* report = nullptr);

// -sqrt(h^(eta+1)/k^2) grad_W H / sqrt(max(|grad_W H|, floor)).
std::vector<Field> limit_momentum(const Field& h0, const Bathymetry& bath, const PhysParams& params);

// Convective-scale step used for lim runs: the SI step size evaluated with
// the limit momentum.
double limit_dt(const Field& h0, const Bathymetry& bath, const PhysParams& params, double cfl);

}  // namespace swsi
