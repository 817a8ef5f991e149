#include "swsi/friction.hpp"

#include <cmath>

#include "swsi/errors.hpp"

namespace swsi {

namespace {

void check_input(const FrictionSolveInput& in) {
  if (!(in.tau > 0.0)) throw ConfigError("friction solve: tau must be positive");
  if (static_cast<int>(in.rhs.size()) != in.h_ref.grid().dim())
    throw ConfigError("friction solve: rhs needs one component per dimension");
}

double rhs_norm_at(const std::vector<Field>& rhs, int i, int j) {
  double s = 0.0;
  for (const auto& c : rhs) s += c(i, j) * c(i, j);
  return std::sqrt(s);
}

}  // namespace

double friction_gamma(double m_norm, double h, const PhysParams& p) {
  if (p.friction == FrictionMode::linear) return 1.0;
  return p.g * p.k * p.k * m_norm / std::pow(h, p.eta);
}

// m = 2 rhs / (eps^2 + sqrt(eps^4 + d)), d = 4 tau g k^2 |rhs| / h^eta: the
// positive root of the quadratic with the subtraction moved into the
// denominator.
double implicit_friction_weight(double rhs_norm, double tau, double h_ref, const PhysParams& p) {
  const double e2 = p.epsilon * p.epsilon;
  if (p.friction == FrictionMode::linear) return 1.0 / (e2 + tau);
  const double d = 4.0 * tau * p.g * p.k * p.k * rhs_norm / std::pow(h_ref, p.eta);
  return 2.0 / (e2 + std::sqrt(e2 * e2 + d));
}

double momentum_norm(double rhs_norm, double tau, double h_ref, const PhysParams& p) {
  return implicit_friction_weight(rhs_norm, tau, h_ref, p) * rhs_norm;
}

Field solve_momentum_norm(const FrictionSolveInput& in) {
  check_input(in);
  Field out(in.h_ref.grid());
  for_interior(out.grid(), [&](int i, int j) {
    out(i, j) = momentum_norm(rhs_norm_at(in.rhs, i, j), in.tau, in.h_ref(i, j), in.params);
  });
  return out;
}

std::vector<Field> momentum_update(const FrictionSolveInput& in) {
  check_input(in);
  const Grid& g = in.h_ref.grid();
  std::vector<Field> out(in.rhs.size(), Field(g));
  for_interior(g, [&](int i, int j) {
    const double w = implicit_friction_weight(rhs_norm_at(in.rhs, i, j), in.tau, in.h_ref(i, j), in.params);
    for (std::size_t c = 0; c < in.rhs.size(); ++c) out[c](i, j) = w * in.rhs[c](i, j);
  });
  return out;
}

bool equilibrium_cutoff(double rhs_norm, double m_prev_norm, double xi) {
  return rhs_norm < xi && m_prev_norm < xi;
}

double explicit_friction_update(double m_n, double convective, double grad_terms, double gamma_n,
                                double eps, double dt) {
  const double e2 = eps * eps;
  return e2 / (e2 + dt * gamma_n) * (m_n - dt * convective - dt / e2 * grad_terms);
}

}  // namespace swsi
