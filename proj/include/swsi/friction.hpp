#pragma once

#include <vector>

#include "swsi/core.hpp"

namespace swsi {

// Per-cell input of the implicit friction closure m (eps^2 + tau*gamma) = rhs
// with rhs = eps^2 m* - tau (pressure/source gradient).
struct FrictionSolveInput {
  std::vector<Field> rhs;  // one per dimension
  double tau = 0.0;
  Field h_ref;
  PhysParams params;
};

// Scalar kernels. The weight w satisfies m = w * rhs.
double implicit_friction_weight(double rhs_norm, double tau, double h_ref, const PhysParams& p);
double momentum_norm(double rhs_norm, double tau, double h_ref, const PhysParams& p);

// |m| per interior cell, stored in a Field.
Field solve_momentum_norm(const FrictionSolveInput& in);
std::vector<Field> momentum_update(const FrictionSolveInput& in);

bool equilibrium_cutoff(double rhs_norm, double m_prev_norm, double xi);

// eps^2/(eps^2 + dt gamma) * (m - dt conv - dt/eps^2 grad), componentwise.
double explicit_friction_update(double m_n, double convective, double grad_terms, double gamma_n,
                                double eps, double dt);

// g k^2 |m| / h^eta, or 1 in linear mode.
double friction_gamma(double m_norm, double h, const PhysParams& p);

}  // namespace swsi
