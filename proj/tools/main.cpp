// Command-line driver; everything substantive lives behind the C API of the
// shared library.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulerfv.h"

namespace {

struct Args {
  std::string config_path;
  std::vector<std::string> overrides;
  bool vtk = false;
};

efv_config* load_config(const Args& args, char* err, size_t errcap) {
  efv_config* cfg = args.config_path.empty() ? efv_config_create()
                                             : efv_config_load(args.config_path.c_str(), err, errcap);
  if (!cfg) return nullptr;
  for (const std::string& kv : args.overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::snprintf(err, errcap, "--set expects section.key=value, got '%s'", kv.c_str());
      efv_config_destroy(cfg);
      return nullptr;
    }
    if (efv_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str(), err, errcap) !=
        EFV_OK) {
      efv_config_destroy(cfg);
      return nullptr;
    }
  }
  if (args.vtk && efv_config_set(cfg, "output.vtk", "true", err, errcap) != EFV_OK) {
    efv_config_destroy(cfg);
    return nullptr;
  }
  return cfg;
}

void add_common(CLI::App* cmd, Args& args, bool config_required = true) {
  cmd->add_option("config", args.config_path, "INI configuration file")
      ->required(config_required);
  cmd->add_option("--set", args.overrides, "override section.key=value")->allow_extra_args(false);
  cmd->add_flag("--vtk", args.vtk, "also write legacy VTK files for 2d fields");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"implicit finite volume solver for the isentropic Euler system "
               "with Cesaro-averaging convergence diagnostics"};
  app.require_subcommand(1);

  Args args;
  CLI::App* solve = app.add_subcommand("solve", "single run: fields + energy ledger");
  add_common(solve, args);
  CLI::App* study = app.add_subcommand("study", "mesh-refinement study with diagnostics");
  add_common(study, args);
  CLI::App* consistency =
      app.add_subcommand("consistency", "weak-form residual decay across refinements");
  add_common(consistency, args);
  CLI::App* audit = app.add_subcommand("audit", "energy balance audit of a single run");
  add_common(audit, args);
  app.add_subcommand("selftest", "run the built-in example suite");

  CLI11_PARSE(app, argc, argv);

  char err[1024] = {0};

  if (app.got_subcommand("selftest")) {
    std::vector<char> report(1 << 16, '\0');
    const efv_status st = efv_selftest(report.data(), report.size());
    std::fputs(report.data(), stdout);
    return static_cast<int>(st);
  }

  efv_config* cfg = load_config(args, err, sizeof(err));
  if (!cfg) {
    std::fprintf(stderr, "error: %s\n", err);
    return EFV_ERR_CONFIG;
  }

  efv_status st = EFV_OK;
  if (app.got_subcommand("solve")) {
    st = efv_cmd_solve(cfg, err, sizeof(err));
  } else if (app.got_subcommand("study")) {
    char label[64] = {0};
    st = efv_cmd_study(cfg, label, sizeof(label), err, sizeof(err));
    if (st == EFV_OK) std::printf("KCONV: %s\n", label);
  } else if (app.got_subcommand("consistency")) {
    st = efv_cmd_consistency(cfg, err, sizeof(err));
  } else if (app.got_subcommand("audit")) {
    st = efv_cmd_audit(cfg, err, sizeof(err));
    if (st == EFV_OK) std::printf("AUDIT: pass\n");
  }
  efv_config_destroy(cfg);
  if (st != EFV_OK) std::fprintf(stderr, "error: %s\n", err);
  return static_cast<int>(st);
}
