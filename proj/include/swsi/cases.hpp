#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swsi/core.hpp"
#include "swsi/timestep.hpp"

namespace swsi {

struct CaseOverrides {
  std::optional<double> epsilon;
  std::optional<double> final_time;
  std::optional<double> cfl;
  std::optional<double> theta;  // ex53 family: g k^2 = theta^2, T = 0.01 theta
  std::optional<double> delta;
  std::optional<double> xi;
  std::optional<int> n;   // cells per dimension (x for 2D)
  std::optional<int> ny;  // 2D only; defaults per case
  std::optional<int> picard_max;
  std::optional<std::string> bathymetry;  // still-water-wb: gauss-1d | hump-2d | flat-1d
};

struct PointValue {
  double h = 0.0;
  std::array<double, 2> m{0.0, 0.0};
};

struct BenchmarkCase {
  std::string id;
  Grid grid;
  PhysParams params;
  double final_time = 0.0;
  double cfl = 0.2;
  PicardConfig picard;
  double xi = 1e-15;

  std::function<double(double x, double y)> bottom;
  std::function<PointValue(double x, double y)> initial;
  std::function<PointValue(double x, double y, double t)> exact;           // optional
  std::function<std::array<double, 2>(double x, double y, double t)> source;  // optional

  State initial_state() const;
  Bathymetry bathymetry() const;
  StepConfig step_config() const;
  bool has_exact() const { return static_cast<bool>(exact); }
};

const std::vector<std::string>& case_ids();

BenchmarkCase build(std::string_view id, const CaseOverrides& overrides = {});

PointValue exact_solution(const BenchmarkCase& c, double x, double t, double y = 0.0);

State well_prepared_2d_linear(const Grid& grid);

}  // namespace swsi
