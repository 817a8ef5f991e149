#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "swsi/core.hpp"

namespace swsi::test {

inline constexpr double kPi = std::numbers::pi;

inline std::vector<double> observed_orders(const std::vector<double>& err) {
  std::vector<double> p;
  for (std::size_t i = 1; i < err.size(); ++i) p.push_back(std::log2(err[i - 1] / err[i]));
  return p;
}

inline Grid periodic_line(int n, double lo = 0.0, double hi = 1.0) {
  return Grid::line(n, lo, hi, Boundary::periodic);
}

inline Grid periodic_plane(int nx, int ny, double hx = 1.0, double hy = 1.0) {
  return Grid::plane({nx, ny}, {0.0, 0.0}, {hx, hy}, {Boundary::periodic, Boundary::periodic});
}

template <class F>
Field sampled(const Grid& g, F&& f) {
  Field out(g);
  out.sample(std::forward<F>(f));
  return out;
}

// Periodic shift by s cells along x: out(i) = f(i - s).
inline Field shifted(const Field& f, int s) {
  const Grid& g = f.grid();
  Field out(g);
  for_interior(g, [&](int i, int j) { out(i, j) = f(((i - s) % g.n(0) + g.n(0)) % g.n(0), j); });
  out.refresh_ghosts();
  return out;
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for_interior(a.grid(), [&](int i, int j) { m = std::max(m, std::abs(a(i, j) - b(i, j))); });
  return m;
}

inline bool bit_equal(const Field& a, const Field& b) {
  bool same = true;
  for_interior(a.grid(), [&](int i, int j) { same = same && a(i, j) == b(i, j); });
  return same;
}

}  // namespace swsi::test
