#ifndef LGK_APP_HPP
#define LGK_APP_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "lgk/observables.hpp"
#include "lgk/solver.hpp"

namespace lgk {

// Parsed and schema-validated run configuration.  Unknown keys are rejected.
struct RunConfig {
  GroupSpec group;
  int cutoff = 1;
  Region region;
  std::optional<Region> inner_region;
  bool matter_enabled = false;
  int matter_w = 1;
  Couplings couplings;
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
  SpectrumRequest solver;
  std::optional<LoopPath> wilson_loop_spec;  // resolved against the graph later
  std::optional<int> wilson_plaquette;
  nlohmann::json echo;  // the validated raw config

  KinematicSpace make_space() const;
  Region scoped_region() const { return inner_region ? *inner_region : region; }
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

struct Report {
  nlohmann::json body;
  bool pass = true;

  std::string str() const;
  // writes report.json (and spectrum.csv when present) into `out_dir`
  void write(const std::string& out_dir) const;
};

Report cmd_lattice_info(const RunConfig& cfg);
Report cmd_sector_dim(const RunConfig& cfg);
Report cmd_spectrum(const RunConfig& cfg);
Report cmd_wilson(const RunConfig& cfg);
Report cmd_tprocedure_report(const RunConfig& cfg);
Report cmd_verify(const RunConfig& cfg);

}  // namespace lgk

#endif
