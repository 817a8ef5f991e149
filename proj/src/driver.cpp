#include "swsi/driver.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "swsi/errors.hpp"

namespace swsi {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc{} || r.ptr != v.data() + v.size())
    throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  return os;
}

void mark_failed(const std::string& path, const std::exception& e) {
  if (path.empty()) return;
  std::ofstream os(path, std::ios::app);
  std::string msg = e.what();
  for (char& ch : msg)
    if (ch == '\n' || ch == ',') ch = ' ';
  os << "#failed," << msg << '\n';
}

State lim_as_state(const LimitState& l, const Bathymetry& bath, const PhysParams& p) {
  State s;
  s.h = l.h0;
  s.m = limit_momentum(l.h0, bath, p);
  s.t = l.t;
  return s;
}

Field exact_field(const BenchmarkCase& c, const Grid& g, double t, int comp) {
  Field f(g);
  f.sample([&](double x, double y) {
    const PointValue v = c.exact(x, y, t);
    return comp == 0 ? v.h : v.m[comp - 1];
  });
  return f;
}

const Field& component(const State& s, int comp) { return comp == 0 ? s.h : s.m[comp - 1]; }

}  // namespace

Scheme parse_scheme(const std::string& s) {
  if (s == "si-s1") return Scheme::si_s1;
  if (s == "si-s2") return Scheme::si_s2;
  if (s == "first-order") return Scheme::first_order;
  if (s == "lim") return Scheme::lim;
  throw ConfigError("unknown scheme '" + s + "'");
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::si_s1: return "si-s1";
    case Scheme::si_s2: return "si-s2";
    case Scheme::first_order: return "first-order";
    case Scheme::lim: return "lim";
  }
  return "?";
}

void RunConfig::set(const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), v = trim(value_in);
  CaseOverrides& o = overrides;
  if (key == "case") case_id = v;
  else if (key == "scheme") scheme = parse_scheme(v);
  else if (key == "n" || key == "N") o.n = to_int(key, v);
  else if (key == "ny") o.ny = to_int(key, v);
  else if (key == "eps" || key == "epsilon") o.epsilon = to_double(key, v);
  else if (key == "cfl") o.cfl = to_double(key, v);
  else if (key == "T" || key == "final_time") o.final_time = to_double(key, v);
  else if (key == "theta") o.theta = to_double(key, v);
  else if (key == "delta") o.delta = to_double(key, v);
  else if (key == "xi") o.xi = to_double(key, v);
  else if (key == "picard_max") o.picard_max = to_int(key, v);
  else if (key == "bathymetry") o.bathymetry = v;
  else if (key == "output") output = v;
  else if (key == "report") report = v;
  else if (key == "snapshot_every") snapshot_every = to_int(key, v);
  else if (key == "depth_flux") {
    if (v == "lw") depth_flux = DepthFluxRecovery::lw_divergence;
    else if (v == "picard") depth_flux = DepthFluxRecovery::picard;
    else throw ConfigError("depth_flux must be 'lw' or 'picard'");
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto c = line.find('#'); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void RunConfig::validate() const {
  const BenchmarkCase c = build(case_id, overrides);
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be nonnegative");
  if (scheme == Scheme::lim) {
    if (c.params.friction != FrictionMode::manning || !(c.params.k > 0.0))
      throw ConfigError("lim needs a case with Manning friction and k > 0");
    if (c.source) throw ConfigError("lim does not support source terms");
  }
}

Simulation::Simulation(const RunConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  case_ = build(cfg_.case_id, cfg_.overrides);
  bath_ = case_.bathymetry();
  state_ = case_.initial_state();
  tab_ = cfg_.scheme == Scheme::first_order ? tableau_euler() : tableau_si_imex_443();
  if (cfg_.scheme == Scheme::lim) {
    lim_.h0 = state_.h;
    lim_.t = 0.0;
    lim_integ_ = std::make_unique<LimitIntegrator>(case_.grid, case_.picard);
  } else {
    StepConfig sc = case_.step_config();
    sc.depth_flux = cfg_.depth_flux;
    integ_ = std::make_unique<Integrator>(case_.grid, std::move(sc));
  }
}

const State& Simulation::state() const {
  if (cfg_.scheme != Scheme::lim) return state_;
  if (!lim_view_valid_) {
    lim_view_ = lim_as_state(lim_, bath_, case_.params);
    lim_view_valid_ = true;
  }
  return lim_view_;
}

double Simulation::time() const { return cfg_.scheme == Scheme::lim ? lim_.t : state_.t; }

double Simulation::next_dt() const {
  const double dx = case_.grid.min_dx();
  if (cfg_.scheme == Scheme::lim) return limit_dt(lim_.h0, bath_, case_.params, case_.cfl);
  return compute_dt(state_, case_.params, case_.cfl, dx);
}

void Simulation::advance(double dt) {
  RunReport r;
  switch (cfg_.scheme) {
    case Scheme::si_s1: r = integ_->step_si_imex_rk(state_, bath_, case_.params, dt, tab_); break;
    case Scheme::si_s2: r = integ_->step_si_s2(state_, bath_, case_.params, dt, tab_); break;
    case Scheme::first_order: r = integ_->step_first_order(state_, bath_, case_.params, dt); break;
    case Scheme::lim:
      r = lim_integ_->step(lim_, bath_, case_.params, dt, tab_);
      lim_view_valid_ = false;
      break;
  }
  report_ += r;
}

bool Simulation::step(double t_end) {
  const double t = time();
  if (t >= t_end) return true;
  double dt = next_dt();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("time step is not positive and finite");
  bool last = false;
  if (t + dt >= t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
    dt = t_end - t;
    last = true;
  }
  advance(dt);
  if (last) {
    // land on t_end exactly, whatever rounding did to t + dt
    if (cfg_.scheme == Scheme::lim) lim_.t = t_end;
    else state_.t = t_end;
  }
  return last;
}

void Simulation::run_to(double t_end) {
  while (!step(t_end)) {
  }
}

void Simulation::run_steps(long n) {
  for (long s = 0; s < n; ++s) advance(next_dt());
}

void write_state_csv(std::ostream& os, const State& s, const Bathymetry& bath) {
  const Grid& g = s.grid();
  const bool two = g.dim() == 2;
  os << (two ? "x,y,B,h,m1,m2,H\n" : "x,B,h,m1,H\n");
  os << std::setprecision(17);
  // row order: lexicographic in (i, j)
  for (int i = 0; i < g.n(0); ++i)
    for (int j = 0; j < g.n(1); ++j) {
      os << g.center(0, i) << ',';
      if (two) os << g.center(1, j) << ',';
      os << bath.B(i, j) << ',' << s.h(i, j) << ',' << s.m[0](i, j) << ',';
      if (two) os << s.m[1](i, j) << ',';
      os << s.h(i, j) + bath.B(i, j) << '\n';
    }
}

void write_report_csv(std::ostream& os, const RunReport& r) {
  os << "steps,picard_total,picard_max,steady_hits,seconds\n";
  os << r.steps << ',' << r.picard_total << ',' << r.picard_max << ',' << r.steady_hits << ','
     << std::setprecision(6) << r.seconds << '\n';
}

RunReport cmd_run(const RunConfig& cfg) {
  Simulation sim(cfg);
  const double T = sim.benchmark().final_time;
  auto write_all = [&] {
    if (!cfg.output.empty()) {
      auto os = open_out(cfg.output);
      write_state_csv(os, sim.state(), sim.bathymetry());
    }
    if (!cfg.report.empty()) {
      auto os = open_out(cfg.report);
      write_report_csv(os, sim.report());
    }
  };
  try {
    long k = 0;
    bool done = sim.time() >= T;
    while (!done) {
      done = sim.step(T);
      ++k;
      if (cfg.snapshot_every > 0 && !cfg.output.empty() && k % cfg.snapshot_every == 0 && !done) {
        auto os = open_out(cfg.output + "." + std::to_string(k));
        write_state_csv(os, sim.state(), sim.bathymetry());
      }
    }
  } catch (const std::exception& e) {
    write_all();
    mark_failed(cfg.output, e);
    mark_failed(cfg.report, e);
    throw;
  }
  write_all();
  return sim.report();
}

Field restrict_to(const Field& fine, const Grid& coarse) {
  const Grid& fg = fine.grid();
  if (fg.dim() != coarse.dim()) throw ConfigError("restriction between grids of different dimension");
  std::array<int, 2> r{1, 1};
  for (int d = 0; d < fg.dim(); ++d) {
    if (fg.lo(d) != coarse.lo(d) || fg.hi(d) != coarse.hi(d)) throw ConfigError("restriction needs equal domains");
    if (fg.n(d) % coarse.n(d) != 0) throw ConfigError("reference mesh is not nested");
    r[d] = fg.n(d) / coarse.n(d);
  }
  // Midpoint of two fine cells from three on each side.
  static constexpr std::array<double, 6> w6{3.0 / 256, -25.0 / 256, 150.0 / 256, 150.0 / 256, -25.0 / 256, 3.0 / 256};
  auto taps = [](int rd, int ic, std::array<int, 6>& idx, std::array<double, 6>& w) {
    if (rd % 2 == 1) {
      idx.fill(rd * ic + rd / 2);
      w = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
      return;
    }
    const int k = rd * ic + rd / 2 - 1;
    for (int q = 0; q < 6; ++q) idx[q] = k - 2 + q;
    w = w6;
  };
  Field out(coarse);
  for_interior(coarse, [&](int i, int j) {
    std::array<int, 6> ix{}, iy{};
    std::array<double, 6> wx{}, wy{};
    taps(r[0], i, ix, wx);
    if (coarse.dim() == 2) taps(r[1], j, iy, wy);
    else {
      iy.fill(0);
      wy = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    }
    double v = 0.0;
    for (int b = 0; b < 6; ++b) {
      if (wy[b] == 0.0) continue;
      for (int a = 0; a < 6; ++a)
        if (wx[a] != 0.0) v += wx[a] * wy[b] * fine(ix[a], iy[b]);
    }
    out(i, j) = v;
  });
  out.refresh_ghosts();
  return out;
}

std::vector<ConvergenceRow> cmd_convergence(const RunConfig& base, const std::vector<int>& ns_in, Reference ref,
                                            int reference_n) {
  if (ns_in.empty()) throw ConfigError("empty N list");
  for (std::size_t q = 1; q < ns_in.size(); ++q)
    if (ns_in[q] <= ns_in[q - 1]) throw ConfigError("N list must be ascending");

  std::vector<int> ns = ns_in;
  std::optional<State> reference;
  BenchmarkCase ref_case;
  if (ref == Reference::finest) {
    int nref = reference_n;
    if (nref <= 0) {
      nref = ns.back();
      ns.pop_back();
      if (ns.empty()) throw ConfigError("need at least one N besides the reference");
    }
    for (int n : ns)
      if (nref % n != 0 || nref <= n) throw ConfigError("N list is not nested in the reference mesh");
    RunConfig rc = base;
    rc.overrides.n = nref;
    if (rc.overrides.ny) rc.overrides.ny = *rc.overrides.ny * nref / ns_in.front();
    Simulation sim(rc);
    sim.run_to(sim.benchmark().final_time);
    reference = sim.state();
    ref_case = sim.benchmark();
  }

  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    RunConfig rc = base;
    rc.overrides.n = n;
    if (rc.overrides.ny) rc.overrides.ny = *rc.overrides.ny * n / ns_in.front();
    Simulation sim(rc);
    const BenchmarkCase& c = sim.benchmark();
    if (ref == Reference::exact && !c.has_exact()) throw ConfigError("case '" + c.id + "' has no exact solution");
    const double T = c.final_time;
    sim.run_to(T);
    const State& s = sim.state();
    ConvergenceRow row;
    row.n = n;
    const int ncomp = 1 + c.grid.dim();
    for (int comp = 0; comp < ncomp; ++comp) {
      const Field target = ref == Reference::exact ? exact_field(c, c.grid, T, comp)
                                                   : restrict_to(component(*reference, comp), c.grid);
      row.err.push_back(mean_abs_diff(component(s, comp), target));
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t q = 0; q < rows.size(); ++q) {
    rows[q].ord.assign(rows[q].err.size(), std::numeric_limits<double>::quiet_NaN());
    if (q == 0) continue;
    const double ratio = static_cast<double>(rows[q].n) / rows[q - 1].n;
    for (std::size_t v = 0; v < rows[q].err.size(); ++v)
      rows[q].ord[v] = std::log(rows[q - 1].err[v] / rows[q].err[v]) / std::log(ratio);
  }
  return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  const std::size_t nv = rows.empty() ? 2 : rows.front().err.size();
  os << "N,err_h,ord_h,err_m1,ord_m1";
  if (nv > 2) os << ",err_m2,ord_m2";
  os << '\n' << std::setprecision(6);
  for (const auto& r : rows) {
    os << r.n;
    for (std::size_t v = 0; v < r.err.size(); ++v) {
      os << ',' << std::scientific << r.err[v] << std::defaultfloat << ',';
      if (!std::isnan(r.ord[v])) os << std::fixed << std::setprecision(2) << r.ord[v] << std::defaultfloat
                                    << std::setprecision(6);
    }
    os << '\n';
  }
}

std::vector<ApRow> cmd_ap_compare(const RunConfig& base, const std::vector<double>& eps_list) {
  if (base.scheme == Scheme::lim) throw ConfigError("ap-compare needs an SI scheme for the eps runs");
  RunConfig lc = base;
  lc.scheme = Scheme::lim;
  lc.overrides.epsilon.reset();
  Simulation lim(lc);
  lim.run_to(lim.benchmark().final_time);
  const Field h_lim = lim.state().h;

  std::vector<ApRow> rows;
  for (double eps : eps_list) {
    RunConfig rc = base;
    rc.overrides.epsilon = eps;
    Simulation sim(rc);
    sim.run_to(sim.benchmark().final_time);
    rows.push_back({eps, mean_abs_diff(sim.state().h, h_lim)});
  }
  return rows;
}

void write_ap_csv(std::ostream& os, const std::vector<ApRow>& rows) {
  os << "eps,distance\n" << std::setprecision(6);
  for (const auto& r : rows) os << r.epsilon << ',' << std::scientific << r.distance << std::defaultfloat << '\n';
}

std::vector<WellBalanceRow> cmd_wellbalance(const std::string& bathymetry, const std::vector<double>& eps_list,
                                            long steps, const std::vector<Scheme>& schemes) {
  if (steps < 0) throw ConfigError("step budget must be nonnegative");
  std::vector<WellBalanceRow> rows;
  for (Scheme sc : schemes) {
    if (sc == Scheme::lim) throw ConfigError("well-balance audit runs the SI schemes only");
    for (double eps : eps_list) {
      RunConfig rc;
      rc.case_id = "still-water-wb";
      rc.scheme = sc;
      rc.overrides.bathymetry = bathymetry;
      rc.overrides.epsilon = eps;
      Simulation sim(rc);
      const Field H0 = surface_level(sim.state(), sim.bathymetry());
      sim.run_steps(steps);
      const Field H = surface_level(sim.state(), sim.bathymetry());
      WellBalanceRow row{bathymetry, eps, sc, steps, 0.0, 0.0};
      for_interior(H.grid(), [&](int i, int j) { row.max_dH = std::max(row.max_dH, std::abs(H(i, j) - H0(i, j))); });
      for (const auto& m : sim.state().m) row.max_m = std::max(row.max_m, max_abs(m));
      rows.push_back(row);
    }
  }
  return rows;
}

void write_wellbalance_csv(std::ostream& os, const std::vector<WellBalanceRow>& rows) {
  os << "bathymetry,eps,scheme,steps,max_dH,max_m\n" << std::setprecision(6);
  for (const auto& r : rows)
    os << r.bathymetry << ',' << r.epsilon << ',' << scheme_name(r.scheme) << ',' << r.steps << ','
       << std::scientific << r.max_dH << ',' << r.max_m << std::defaultfloat << '\n';
}

}  // namespace swsi
