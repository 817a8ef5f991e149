#pragma once

// Property checks shared by the reconstruction/diffusion unit tests and the
// acceptance binary. Every operator is exercised as a 1D x-derivative on a
// periodic unit interval.

#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "swsi/diffusion.hpp"
#include "swsi/reconstruct.hpp"

namespace swsi::test {

struct OperatorCase {
  std::string name;
  // Applies the operator to data sampled from (u, aux) on grid g; aux is the
  // coefficient or bathymetry where the operator has one.
  std::function<Field(const Field& u, const Field& aux)> apply;
  std::function<double(double x)> u, aux, exact;
  // Data the operator maps to zero, to round-off.
  std::function<double(double x)> null_u, null_aux;
  double min_order, max_order;
};

inline constexpr double kG = 9.812;

inline std::vector<OperatorCase> operator_cases() {
  std::vector<OperatorCase> out;

  // u = 2 + sin(2 pi x), derivative 2 pi cos(2 pi x)
  auto u = [](double x) { return 2.0 + std::sin(2.0 * kPi * x); };
  auto ux = [](double x) { return 2.0 * kPi * std::cos(2.0 * kPi * x); };
  auto one = [](double) { return 1.0; };
  auto konst = [](double) { return 1.7; };

  out.push_back({"weno5-split",
                 [](const Field& f, const Field&) { return split_divergence({&f}, f, 2.0); },
                 u, one, ux, konst, one, 4.5, 7.0});

  out.push_back({"grad-w", [](const Field& f, const Field&) { return grad_w(f)[0]; }, u, one, ux, konst, one, 4.5,
                 7.0});

  // h with bottom B: g h (h + B)_x
  auto B = [](double x) { return 0.3 + 0.2 * std::cos(2.0 * kPi * x); };
  auto Bx = [](double x) { return -0.4 * kPi * std::sin(2.0 * kPi * x); };
  out.push_back({"grad-wb-group",
                 [](const Field& h, const Field& b) {
                   const Bathymetry bath = Bathymetry::from_field(b, kG);
                   Field H(h.grid());
                   for (std::size_t n = 0; n < H.data().size(); ++n) H.data()[n] = h.data()[n] + b.data()[n];
                   PhysParams p;
                   p.g = kG;
                   return grad_wb_group(h, H, bath, p)[0];
                 },
                 u, B, [=](double x) { return kG * u(x) * (ux(x) + Bx(x)); }, konst,
                 [](double) { return 0.4; }, 4.5, 7.0});

  // (a u_x)_x with a = 1 + 0.5 cos(2 pi x)
  auto a = [](double x) { return 1.0 + 0.5 * std::cos(2.0 * kPi * x); };
  out.push_back({"central4-flux-divergence",
                 [](const Field& f, const Field& coef) { return central4_flux_divergence(coef, f); }, u, a,
                 [=](double x) {
                   const double w = 2.0 * kPi;
                   const double ax = -0.5 * w * std::sin(w * x);
                   return ax * ux(x) + a(x) * (-w * w * std::sin(w * x));
                 },
                 konst, a, 3.8, 4.2});

  out.push_back({"central4-gradient", [](const Field& f, const Field&) { return central4_gradient(f)[0]; }, u, one,
                 ux, konst, one, 3.8, 4.2});
  return out;
}

struct OperatorReport {
  std::string name;
  double null_residual = 0.0;
  bool translation_exact = true;
  std::vector<double> errors, orders;
  bool order_ok = true;

  bool ok() const { return null_residual <= 1e-13 && translation_exact && order_ok; }
};

inline const std::vector<int>& suite_sizes() {
  static const std::vector<int> ns{32, 64, 128, 256};
  return ns;
}

inline OperatorReport run_operator_case(const OperatorCase& oc) {
  OperatorReport r;
  r.name = oc.name;
  for (int n : suite_sizes()) {
    const Grid g = periodic_line(n);
    const Field nu = sampled(g, [&](double x, double) { return oc.null_u(x); });
    const Field na = sampled(g, [&](double x, double) { return oc.null_aux(x); });
    r.null_residual = std::max(r.null_residual, max_abs(oc.apply(nu, na)));

    const Field fu = sampled(g, [&](double x, double) { return oc.u(x); });
    const Field fa = sampled(g, [&](double x, double) { return oc.aux(x); });
    const Field out = oc.apply(fu, fa);
    for (int sh : {1, 5, n / 3}) {
      const Field moved = oc.apply(shifted(fu, sh), shifted(fa, sh));
      r.translation_exact = r.translation_exact && bit_equal(moved, shifted(out, sh));
    }
    const Field want = sampled(g, [&](double x, double) { return oc.exact(x); });
    r.errors.push_back(mean_abs_diff(out, want));
  }
  r.orders = observed_orders(r.errors);
  for (double p : r.orders) r.order_ok = r.order_ok && p >= oc.min_order && p <= oc.max_order;
  return r;
}

// Still water H = 1 over a periodic bottom. Returns max|residual| divided by
// g H^2 / dx, the size of the individual pressure and bottom terms.
inline double still_water_residual(int n) {
  const Grid g = periodic_line(n);
  const Field B = sampled(g, [](double x, double) { return 0.3 + 0.2 * std::cos(2.0 * kPi * x); });
  const Field h = sampled(g, [](double x, double) { return 0.7 - 0.2 * std::cos(2.0 * kPi * x); });
  const Bathymetry bath = Bathymetry::from_field(B, kG);
  Field H(g);
  for (std::size_t q = 0; q < H.data().size(); ++q) H.data()[q] = h.data()[q] + B.data()[q];
  PhysParams p;
  p.g = kG;
  return max_abs(grad_wb_group(h, H, bath, p)[0]) / (kG / g.dx(0));
}

}  // namespace swsi::test
