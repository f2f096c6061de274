#include "dcsbm/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dcsbm/io.hpp"
#include "dcsbm/metrics.hpp"

namespace dcsbm {

DcsbmParams eppm_params(Index n, double a, double b) {
  Eigen::MatrixXd block(2, 2);
  block << a, b, b, a;
  const double logn = std::log(static_cast<double>(n));
  return make_params(n, block, {0.5, 0.5}, std::vector<double>(n, logn * logn));
}

DcsbmParams fig1_params(Index n) {
  Eigen::MatrixXd block(3, 3);
  block << 1, 2, 3, 2, 0, 2, 3, 2, 5;
  DcsbmParams p = make_params(n, block, {1.0 / 3, 1.0 / 3, 1.0 / 3}, std::vector<double>(n, 1.0));
  std::vector<Index> seen(3, 0);
  for (Index u = 0; u < n; ++u) p.weights[u] = std::cbrt(static_cast<double>(++seen[p.sigma[u]]));
  return p;
}

DcsbmParams bimodal_params(Index n) {
  const double l2 = std::pow(std::log(static_cast<double>(n)), 2);
  // Largest pair probability is 2e4 c l2 / (101 n); keep it at 0.999 or below.
  const double c = std::min(1.0, 0.999 * 101.0 * static_cast<double>(n) / (2e4 * l2));
  Eigen::MatrixXd block = Eigen::MatrixXd::Ones(2, 2);
  DcsbmParams p = make_params(n, block, {0.5, 0.5}, std::vector<double>(n, c * l2));
  for (Index u = 0; u < n; ++u)
    if (p.sigma[u] == 1) p.weights[u] = 100.0 * c * l2;
  return p;
}

std::vector<std::string> preset_names() { return {"eppm", "fig1-3block", "bimodal-allones", "planted-hubs"}; }

bool is_preset(const std::string& name) {
  const auto v = preset_names();
  return std::find(v.begin(), v.end(), name) != v.end();
}

DcsbmParams preset_params(const std::string& preset, Index n) {
  if (preset == "eppm") return eppm_params(n);
  if (preset == "fig1-3block") return fig1_params(n);
  if (preset == "bimodal-allones") return bimodal_params(n);
  throw InvalidArgument("preset '" + preset + "' has no DC-SBM parameters");
}

Instance make_instance(const std::string& source, Index n, std::uint64_t seed) {
  Instance inst;
  if (source == "planted-hubs") {
    PlantedHubsConfig cfg;
    const double scale = static_cast<double>(n) / static_cast<double>(cfg.n);
    for (auto& d : cfg.hub_degrees) d = std::max<Index>(1, std::llround(static_cast<double>(d) * scale));
    cfg.n = n;
    auto ph = planted_hubs(cfg, seed);
    inst.graph = std::move(ph.graph);
    inst.truth = std::move(ph.truth);
    inst.K = 2;
    inst.regime = Regime::LogOrder;
    return inst;
  }
  DcsbmParams p = is_preset(source) ? preset_params(source, n) : read_model(source);
  if (!is_preset(source) && n > 0 && n != p.n)
    throw InvalidArgument("model file fixes n=" + std::to_string(p.n) + "; requested " + std::to_string(n));
  inst.graph = sample_graph(p, seed);
  inst.truth = p.sigma;
  inst.K = p.K;
  inst.regime = source == "fig1-3block" ? Regime::LogOrder : Regime::SuperLog;
  inst.params = std::move(p);
  return inst;
}

std::vector<std::string> method_names() {
  return {"hhat", "hhat-known", "laplacian", "laplacian-leading", "adjacency", "score"};
}

namespace {

void run_method(const Instance& inst, const ExperimentSpec& spec, std::uint64_t seed, ExperimentRow& row) {
  const Graph& g = inst.graph;
  SpectralOptions so;
  so.kmeans.seed = seed;
  Clustering c;
  if (row.method == "hhat" || row.method == "hhat-known") {
    DetectConfig cfg;
    cfg.regime = spec.regime.value_or(inst.regime);
    cfg.f_multiplier = spec.f_multiplier;
    cfg.seed = seed;
    Detection d;
    if (row.method == "hhat") {
      d = detect_communities(g, cfg);
    } else {
      std::vector<Index> sizes(inst.K, 0);
      for (int t : inst.truth) ++sizes[t];
      const double amin = static_cast<double>(*std::min_element(sizes.begin(), sizes.end())) / static_cast<double>(g.n());
      d = detect_with_known_L(g, inst.K, amin, cfg);
    }
    row.L_hat = d.L_hat;
    row.f = d.f;
    row.eps = d.eps.value_or(0.0);
    c = std::move(d.clustering);
  } else if (row.method == "laplacian" || row.method == "laplacian-leading") {
    LaplacianOptions lo;
    lo.spectral = so;
    if (row.method == "laplacian-leading") {
      lo.dims = 1;
      lo.project = false;
    }
    const double tau = g.isolated_count() > 0 ? g.average_degree() : 0.0;
    c = laplacian_spectral(g, inst.K, tau, lo);
  } else if (row.method == "adjacency") {
    c = adjacency_spectral(g, inst.K, so);
  } else if (row.method == "score") {
    c = score_cluster(g, inst.K, so);
  } else {
    throw InvalidArgument("unknown method '" + row.method + "'");
  }
  const auto mc = misclassification(c, inst.truth);
  row.error = mc.fraction;
  row.errors = mc.errors;
  row.unassigned = c.unassigned();
  row.clusters = c.count;
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.ns.empty() || spec.seeds.empty() || spec.methods.empty())
    throw InvalidArgument("experiment needs at least one n, one seed and one method");
  for (const auto& m : spec.methods) {
    const auto v = method_names();
    if (std::find(v.begin(), v.end(), m) == v.end()) throw InvalidArgument("unknown method '" + m + "'");
  }
  std::vector<ExperimentRow> rows;
  for (Index n : spec.ns)
    for (std::uint64_t seed : spec.seeds) {
      std::optional<Instance> inst;
      std::string inst_error;
      try {
        inst = make_instance(spec.source, n, seed);
      } catch (const Error& e) {
        if (e.exit_code() == 3) throw;
        inst_error = e.what();
      }
      std::optional<ConcentrationReport> conc;
      if (inst && spec.concentration && inst->params) {
        try {
          conc = concentration_report(inst->graph, *inst->params);
        } catch (const Error&) {
        }
      }
      for (const auto& m : spec.methods) {
        ExperimentRow row;
        row.source = spec.source;
        row.n = n;
        row.seed = seed;
        row.method = m;
        const auto t0 = std::chrono::steady_clock::now();
        if (!inst) {
          row.status = "error: " + inst_error;
        } else {
          try {
            run_method(*inst, spec, seed, row);
          } catch (const Error& e) {
            row.status = std::string("error: ") + e.what();
          }
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (conc) {
          row.rho_w_dbar = conc->ratio_w;
          row.w_over_gap = conc->w_over_gap;
        }
        rows.push_back(std::move(row));
      }
    }
  if (!spec.out_dir.empty()) {
    std::filesystem::create_directories(spec.out_dir);
    auto out = open_output((std::filesystem::path(spec.out_dir) / "results.csv").string());
    write_results_csv(rows, out, spec.concentration);
    auto tout = open_output((std::filesystem::path(spec.out_dir) / "timings.csv").string());
    write_timings_csv(rows, tout);
  }
  return rows;
}

void write_results_csv(const std::vector<ExperimentRow>& rows, std::ostream& out, bool with_concentration) {
  out << kCsvSchema << '\n' << "source,n,seed,method,status,error,errors,unassigned,clusters,L_hat,f,eps";
  if (with_concentration) out << ",rho_w_dbar,w_over_gap";
  out << '\n';
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out << r.source << ',' << r.n << ',' << r.seed << ',' << r.method << ',' << status << ',' << num(r.error) << ','
        << r.errors << ',' << r.unassigned << ',' << r.clusters << ',' << r.L_hat << ',' << num(r.f) << ','
        << num(r.eps);
    if (with_concentration) out << ',' << num(r.rho_w_dbar) << ',' << num(r.w_over_gap);
    out << '\n';
  }
}

void write_timings_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << kCsvSchema << '\n' << "source,n,seed,method,seconds\n";
  for (const auto& r : rows) out << r.source << ',' << r.n << ',' << r.seed << ',' << r.method << ',' << num(r.seconds) << '\n';
}

}  // namespace dcsbm
