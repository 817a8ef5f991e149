// Command-line front end; talks to the solver only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "swsi/swsi.h"

namespace {

using ConfigPtr = std::unique_ptr<swsi_config, decltype(&swsi_config_destroy)>;

int fail(swsi_status st) {
  std::fprintf(stderr, "swsi: %s\n", swsi_last_error());
  return static_cast<int>(st);
}

// Options shared by the simulation subcommands; empty strings mean "case default".
struct Common {
  std::string config_file;
  std::map<std::string, std::string> kv;

  void attach(CLI::App* app, bool with_outputs) {
    app->add_option("-c,--config", config_file, "key = value config file");
    for (const char* key : {"case", "scheme", "n", "ny", "eps", "cfl", "T", "theta", "delta", "xi", "picard_max",
                            "depth_flux"})
      app->add_option(std::string("--") + key, kv[key]);
    if (with_outputs)
      for (const char* key : {"output", "report", "snapshot_every"}) app->add_option(std::string("--") + key, kv[key]);
  }

  swsi_status build(ConfigPtr& cfg) const {
    swsi_config* raw = nullptr;
    if (auto st = swsi_config_create(&raw); st != SWSI_OK) return st;
    cfg.reset(raw);
    if (!config_file.empty())
      if (auto st = swsi_config_load(raw, config_file.c_str()); st != SWSI_OK) return st;
    for (const auto& [k, v] : kv)
      if (!v.empty())
        if (auto st = swsi_config_set(raw, k.c_str(), v.c_str()); st != SWSI_OK) return st;
    return SWSI_OK;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-implicit shallow water solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", swsi_version());

  Common run_opts, conv_opts, ap_opts;

  auto* run = app.add_subcommand("run", "advance one case to its final time");
  run_opts.attach(run, true);

  auto* conv_cmd = app.add_subcommand("convergence", "mesh refinement study");
  conv_opts.attach(conv_cmd, false);
  std::vector<int> ns;
  std::string reference = "exact";
  int reference_n = 0;
  std::string conv_out = "-";
  conv_cmd->add_option("--n-list", ns, "ascending cell counts")->required()->delimiter(',');
  conv_cmd->add_option("--reference", reference, "exact | finest")->check(CLI::IsMember({"exact", "finest"}));
  conv_cmd->add_option("--reference-n", reference_n, "reference mesh for 'finest' (default: last N)");
  conv_cmd->add_option("-o,--out", conv_out, "CSV path, '-' for stdout");

  auto* ap = app.add_subcommand("ap-compare", "distance of SI-S1 runs to the limit solver");
  ap_opts.attach(ap, false);
  std::vector<double> ap_eps;
  std::string ap_out = "-";
  ap->add_option("--eps-list", ap_eps, "epsilon values")->required()->delimiter(',');
  ap->add_option("-o,--out", ap_out, "CSV path, '-' for stdout");

  auto* wb = app.add_subcommand("wellbalance", "still-water audit");
  std::string bathy = "gauss-1d", wb_schemes = "si-s1,si-s2", wb_out = "-";
  std::vector<double> wb_eps{1.0, 1e-3, 1e-6};
  long steps = 100;
  wb->add_option("--bathymetry", bathy, "gauss-1d | hump-2d | flat-1d");
  wb->add_option("--eps-list", wb_eps, "epsilon values")->delimiter(',');
  wb->add_option("--steps", steps, "step budget");
  wb->add_option("--schemes", wb_schemes, "comma-separated schemes");
  wb->add_option("-o,--out", wb_out, "CSV path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : SWSI_ERR_CONFIG;
  }

  ConfigPtr cfg(nullptr, &swsi_config_destroy);
  swsi_status st = SWSI_OK;
  if (run->parsed()) {
    if ((st = run_opts.build(cfg)) == SWSI_OK) st = swsi_run(cfg.get());
  } else if (conv_cmd->parsed()) {
    if ((st = conv_opts.build(cfg)) == SWSI_OK)
      st = swsi_convergence(cfg.get(), ns.data(), ns.size(), reference.c_str(), reference_n, conv_out.c_str());
  } else if (ap->parsed()) {
    if ((st = ap_opts.build(cfg)) == SWSI_OK) st = swsi_ap_compare(cfg.get(), ap_eps.data(), ap_eps.size(), ap_out.c_str());
  } else if (wb->parsed()) {
    st = swsi_wellbalance(bathy.c_str(), wb_eps.data(), wb_eps.size(), steps, wb_schemes.c_str(), wb_out.c_str());
  }
  return st == SWSI_OK ? 0 : fail(st);
}
