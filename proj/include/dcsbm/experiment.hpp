#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcsbm/baselines.hpp"
#include "dcsbm/detect.hpp"
#include "dcsbm/graph.hpp"
#include "dcsbm/model.hpp"

namespace dcsbm {

// Named instance families.
//   eppm             a=5, b=1, D = log^2 n, two equal blocks
//   fig1-3block      B = [[1,2,3],[2,0,2],[3,2,5]], D = within-block index^(1/3)
//   bimodal-allones  B = ones, D = c log^2 n / 100 c log^2 n (c keeps p <= 1)
//   planted-hubs     EPPM bulk plus planted stars (not a DC-SBM)
DcsbmParams eppm_params(Index n, double a = 5.0, double b = 1.0);
DcsbmParams fig1_params(Index n);
DcsbmParams bimodal_params(Index n);
bool is_preset(const std::string& name);
std::vector<std::string> preset_names();

struct Instance {
  Graph graph;
  std::vector<int> truth;
  std::optional<DcsbmParams> params;
  int K = 2;
  Regime regime = Regime::SuperLog;
};

// Preset name or model path; planted-hubs scales its hub degrees with n.
Instance make_instance(const std::string& preset_or_model, Index n, std::uint64_t seed);
DcsbmParams preset_params(const std::string& preset, Index n);

struct ExperimentSpec {
  std::string name = "experiment";
  std::string source;                     // preset name or model file
  std::vector<Index> ns;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods;       // hhat, hhat-known, laplacian, laplacian-leading, adjacency, score
  std::string out_dir;                    // empty: no files
  bool concentration = false;
  double f_multiplier = 1.0;
  std::optional<Regime> regime;           // default: the instance's
};

struct ExperimentRow {
  std::string source;
  Index n = 0;
  std::uint64_t seed = 0;
  std::string method;
  std::string status = "ok";
  double error = 0.0;
  Index errors = 0;
  Index unassigned = 0;
  int clusters = 0;
  Index L_hat = -1;
  double f = 0.0;
  double eps = 0.0;
  double rho_w_dbar = 0.0;
  double w_over_gap = 0.0;
  double seconds = 0.0;
};

std::vector<std::string> method_names();

// Rows ordered by (n, seed, method) in the order given. Writes results.csv (no
// timings, reproducible) and timings.csv into out_dir when set.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

void write_results_csv(const std::vector<ExperimentRow>& rows, std::ostream& out, bool with_concentration);
void write_timings_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);

}  // namespace dcsbm
