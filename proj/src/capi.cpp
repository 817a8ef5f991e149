#include "swsi/swsi.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "swsi/driver.hpp"
#include "swsi/errors.hpp"

struct swsi_config {
  swsi::RunConfig cfg;
};

struct swsi_simulation {
  std::unique_ptr<swsi::Simulation> sim;
  bool finished = false;
};

namespace {

thread_local std::string g_last_error;

template <class F>
swsi_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SWSI_OK;
  } catch (const swsi::ConfigError& e) {
    g_last_error = e.what();
    return SWSI_ERR_CONFIG;
  } catch (const swsi::NonconvergenceError& e) {
    g_last_error = e.what();
    return SWSI_ERR_NONCONVERGENCE;
  } catch (const swsi::PositivityError& e) {
    g_last_error = e.what();
    return SWSI_ERR_POSITIVITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SWSI_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SWSI_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw swsi::ConfigError(std::string("null ") + what);
}

template <class W>
void emit(const char* path, W&& write) {
  if (!path || std::string(path) == "-" || std::string(path).empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path);
  if (!os) throw swsi::ConfigError(std::string("cannot open '") + path + "' for writing");
  write(os);
}

}  // namespace

extern "C" {

const char* swsi_last_error(void) { return g_last_error.c_str(); }
const char* swsi_version(void) { return "1.0.0"; }

swsi_status swsi_config_create(swsi_config** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new swsi_config{};
  });
}

void swsi_config_destroy(swsi_config* cfg) { delete cfg; }

swsi_status swsi_config_set(swsi_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "config");
    require(key, "key");
    require(value, "value");
    cfg->cfg.set(key, value);
  });
}

swsi_status swsi_config_load(swsi_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg, "config");
    require(path, "path");
    cfg->cfg.load_file(path);
  });
}

swsi_status swsi_simulation_create(const swsi_config* cfg, swsi_simulation** out) {
  return guarded([&] {
    require(cfg, "config");
    require(out, "output pointer");
    auto s = std::make_unique<swsi_simulation>();
    s->sim = std::make_unique<swsi::Simulation>(cfg->cfg);
    s->finished = s->sim->time() >= s->sim->benchmark().final_time;
    *out = s.release();
  });
}

void swsi_simulation_destroy(swsi_simulation* sim) { delete sim; }

swsi_status swsi_simulation_step(swsi_simulation* sim, int* finished) {
  return guarded([&] {
    require(sim, "simulation");
    if (!sim->finished) sim->finished = sim->sim->step(sim->sim->benchmark().final_time);
    if (finished) *finished = sim->finished ? 1 : 0;
  });
}

swsi_status swsi_simulation_run(swsi_simulation* sim) {
  return guarded([&] {
    require(sim, "simulation");
    sim->sim->run_to(sim->sim->benchmark().final_time);
    sim->finished = true;
  });
}

double swsi_simulation_time(const swsi_simulation* sim) { return sim ? sim->sim->time() : 0.0; }

double swsi_simulation_final_time(const swsi_simulation* sim) {
  return sim ? sim->sim->benchmark().final_time : 0.0;
}

size_t swsi_simulation_cells(const swsi_simulation* sim) { return sim ? sim->sim->benchmark().grid.cells() : 0; }

swsi_status swsi_simulation_depth(const swsi_simulation* sim, double* out, size_t n) {
  return guarded([&] {
    require(sim, "simulation");
    require(out, "buffer");
    const swsi::Field& h = sim->sim->state().h;
    const swsi::Grid& g = h.grid();
    if (n != g.cells()) throw swsi::ConfigError("buffer size does not match the cell count");
    std::size_t q = 0;
    for (int i = 0; i < g.n(0); ++i)
      for (int j = 0; j < g.n(1); ++j) out[q++] = h(i, j);
  });
}

swsi_status swsi_simulation_report(const swsi_simulation* sim, swsi_report* out) {
  return guarded([&] {
    require(sim, "simulation");
    require(out, "report");
    const swsi::RunReport& r = sim->sim->report();
    *out = swsi_report{r.steps, r.picard_total, r.picard_max, r.steady_hits, r.seconds};
  });
}

swsi_status swsi_simulation_write_state(const swsi_simulation* sim, const char* path) {
  return guarded([&] {
    require(sim, "simulation");
    emit(path, [&](std::ostream& os) { swsi::write_state_csv(os, sim->sim->state(), sim->sim->bathymetry()); });
  });
}

swsi_status swsi_run(const swsi_config* cfg) {
  return guarded([&] {
    require(cfg, "config");
    swsi::cmd_run(cfg->cfg);
  });
}

swsi_status swsi_convergence(const swsi_config* cfg, const int* n, size_t count, const char* reference,
                             int reference_n, const char* csv_path) {
  return guarded([&] {
    require(cfg, "config");
    require(n, "N list");
    require(reference, "reference");
    const std::string r = reference;
    swsi::Reference ref;
    if (r == "exact") ref = swsi::Reference::exact;
    else if (r == "finest") ref = swsi::Reference::finest;
    else throw swsi::ConfigError("reference must be 'exact' or 'finest'");
    const auto rows = swsi::cmd_convergence(cfg->cfg, std::vector<int>(n, n + count), ref, reference_n);
    emit(csv_path, [&](std::ostream& os) { swsi::write_convergence_csv(os, rows); });
  });
}

swsi_status swsi_ap_compare(const swsi_config* cfg, const double* eps, size_t count, const char* csv_path) {
  return guarded([&] {
    require(cfg, "config");
    require(eps, "eps list");
    const auto rows = swsi::cmd_ap_compare(cfg->cfg, std::vector<double>(eps, eps + count));
    emit(csv_path, [&](std::ostream& os) { swsi::write_ap_csv(os, rows); });
  });
}

swsi_status swsi_wellbalance(const char* bathymetry, const double* eps, size_t count, long steps,
                             const char* schemes, const char* csv_path) {
  return guarded([&] {
    require(bathymetry, "bathymetry");
    require(eps, "eps list");
    std::vector<swsi::Scheme> sc;
    if (schemes && *schemes) {
      std::stringstream ss(schemes);
      std::string item;
      while (std::getline(ss, item, ',')) sc.push_back(swsi::parse_scheme(item));
    } else {
      sc = {swsi::Scheme::si_s1, swsi::Scheme::si_s2};
    }
    const auto rows = swsi::cmd_wellbalance(bathymetry, std::vector<double>(eps, eps + count), steps, sc);
    emit(csv_path, [&](std::ostream& os) { swsi::write_wellbalance_csv(os, rows); });
  });
}

}  // extern "C"
