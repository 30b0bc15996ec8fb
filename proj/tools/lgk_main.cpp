#include <iostream>

#include <CLI11.hpp>

#include "lgk/app.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  double tol = -1.0;
  long long seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "path to the run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--tol", opts.tol, "override the residual tolerance");
  cmd->add_option("--seed", opts.seed, "override the deterministic seed");
  cmd->add_option("--out", opts.out_dir, "directory for report.json / spectrum.csv");
}

int run(const CommonOpts& opts,
        lgk::Report (*fn)(const lgk::RunConfig&)) {
  lgk::RunConfig cfg = lgk::load_config(opts.config_path);
  if (opts.tol > 0) cfg.tol = opts.tol;
  if (opts.seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(opts.seed);
    cfg.solver.seed = cfg.seed;
  }
  const lgk::Report rep = fn(cfg);
  std::cout << rep.str();
  if (!opts.out_dir.empty()) rep.write(opts.out_dir);
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice gauge kinematics engine"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* desc;
    lgk::Report (*fn)(const lgk::RunConfig&);
    CommonOpts opts;
  };
  std::vector<Entry> entries = {
      {"lattice-info", "site/link/plaquette counts and envelope sizes",
       &lgk::cmd_lattice_info, {}},
      {"sector-dim", "total dimension and Gauss sector rank",
       &lgk::cmd_sector_dim, {}},
      {"spectrum", "lowest eigenvalues of the Hamiltonian and its restriction",
       &lgk::cmd_spectrum, {}},
      {"wilson", "Wilson loop expectation in the Gauss sector ground state",
       &lgk::cmd_wilson, {}},
      {"tprocedure-report", "constraint reduction data and structure checks",
       &lgk::cmd_tprocedure_report, {}},
      {"verify", "run the full invariant suite; nonzero exit on any failure",
       &lgk::cmd_verify, {}},
  };
  for (auto& e : entries) {
    CLI::App* cmd = app.add_subcommand(e.name, e.desc);
    add_common(cmd, e.opts);
    cmd->callback([&e]() { std::exit(run(e.opts, e.fn)); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
