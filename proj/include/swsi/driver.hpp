#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swsi/cases.hpp"
#include "swsi/core.hpp"
#include "swsi/limit.hpp"
#include "swsi/timestep.hpp"

namespace swsi {

enum class Scheme { si_s1, si_s2, first_order, lim };

Scheme parse_scheme(const std::string& s);
std::string scheme_name(Scheme s);

struct RunConfig {
  std::string case_id = "ex51-linear-1d";
  Scheme scheme = Scheme::si_s1;
  CaseOverrides overrides;
  DepthFluxRecovery depth_flux = DepthFluxRecovery::picard;
  std::string output;  // final-state CSV, empty = none
  std::string report;  // report CSV, empty = none
  int snapshot_every = 0;

  // Applies `key = value` settings; unknown keys are a ConfigError.
  void set(const std::string& key, const std::string& value);
  void load_file(const std::string& path);
  void validate() const;
};

// One run of one scheme on one case. For lim the momentum exposed by state()
// is the limit momentum of the current depth.
class Simulation {
 public:
  explicit Simulation(const RunConfig& cfg);

  const BenchmarkCase& benchmark() const { return case_; }
  const Bathymetry& bathymetry() const { return bath_; }
  const State& state() const;
  double time() const;
  const RunReport& report() const { return report_; }

  // Advances one step, clipped to land on t_end; returns true once there.
  bool step(double t_end);
  void run_to(double t_end);
  void run_steps(long n);

 private:
  double next_dt() const;
  void advance(double dt);

  RunConfig cfg_;
  BenchmarkCase case_;
  Bathymetry bath_;
  State state_;
  LimitState lim_;
  mutable State lim_view_;
  mutable bool lim_view_valid_ = false;
  std::unique_ptr<Integrator> integ_;
  std::unique_ptr<LimitIntegrator> lim_integ_;
  DoubleTableau tab_;
  RunReport report_;
};

void write_state_csv(std::ostream& os, const State& s, const Bathymetry& bath);
void write_report_csv(std::ostream& os, const RunReport& r);

// Runs the configured simulation to T and writes the configured artifacts.
// On failure the artifacts get a trailing "#failed" marker row and the
// exception propagates.
RunReport cmd_run(const RunConfig& cfg);

// Samples a fine-grid field at coarse cell centres: direct sampling for odd
// refinement ratios, symmetric 6-point interpolation for even ones.
Field restrict_to(const Field& fine, const Grid& coarse);

enum class Reference { exact, finest };

struct ConvergenceRow {
  int n = 0;
  std::vector<double> err;  // h, m1[, m2]
  std::vector<double> ord;  // NaN on the first row
};

// reference_n <= 0 with Reference::finest uses the last entry of ns as the
// reference (and does not report it).
std::vector<ConvergenceRow> cmd_convergence(const RunConfig& base, const std::vector<int>& ns, Reference ref,
                                            int reference_n = 0);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

struct ApRow {
  double epsilon = 0.0;
  double distance = 0.0;
};

std::vector<ApRow> cmd_ap_compare(const RunConfig& base, const std::vector<double>& eps_list);
void write_ap_csv(std::ostream& os, const std::vector<ApRow>& rows);

struct WellBalanceRow {
  std::string bathymetry;
  double epsilon = 0.0;
  Scheme scheme = Scheme::si_s1;
  long steps = 0;
  double max_dH = 0.0;
  double max_m = 0.0;
};

std::vector<WellBalanceRow> cmd_wellbalance(const std::string& bathymetry, const std::vector<double>& eps_list,
                                            long steps, const std::vector<Scheme>& schemes = {Scheme::si_s1,
                                                                                           Scheme::si_s2});
void write_wellbalance_csv(std::ostream& os, const std::vector<WellBalanceRow>& rows);

}  // namespace swsi
