#pragma once

#include <array>
#include <vector>

#include "swsi/core.hpp"

namespace swsi {

// Which field supplies the smoothness indicators shared by the grouped
// well-balanced derivative.
enum class IndicatorSource { surface_level, pressure };

struct WenoConfig {
  double eps_weno = 1e-6;
  std::array<double, 3> ideal_weights{0.1, 0.6, 0.3};
  IndicatorSource shared_indicator_source = IndicatorSource::surface_level;

  void validate() const;
};

enum class Bias { left, right };

using Stencil5 = std::array<double, 5>;
using Weights3 = std::array<double, 3>;

// Face value at i+1/2. Left bias takes u_{i-2..i+2}, right bias u_{i-1..i+3},
// both in increasing cell order.
double weno5_face_value(const Stencil5& v, Bias bias, const WenoConfig& cfg = {});

// Lower-level pieces. `u` is upwind-ordered: u[2] is the cell the face leans on.
Weights3 weno5_weights(const Stencil5& u, const WenoConfig& cfg);
double weno5_apply(const Stencil5& u, const Weights3& w);

enum class FluxKind { depth, momentum };

// Conservative LF-split WENO divergence. Depth: div m with m± = (m ± Λ H)/2,
// one field. Momentum: div(m⊗m/h) per component, split on m.
std::vector<Field> div_lw(const State& state, const Bathymetry& bath, double lambda, FluxKind which,
                          const WenoConfig& cfg = {});

// sum_d d/dx_d f_d, with f_d split as (f_d ± Λ q)/2. Ghosts of f and q must be valid.
Field split_divergence(const std::vector<const Field*>& flux, const Field& q, double lambda,
                       const WenoConfig& cfg = {});

// Unsplit WENO derivative: mean of the left- and right-biased derivatives.
std::vector<Field> grad_w(const Field& f, const WenoConfig& cfg = {});

// d(g h^2/2) + g H dB - d(g B^2/2) with one set of nonlinear weights per face.
std::vector<Field> grad_wb_group(const Field& h, const Field& H, const Bathymetry& bath,
                                 const PhysParams& params, const WenoConfig& cfg = {});

}  // namespace swsi
