// Command-line front end. Exit codes: 0 ok, 2 usage or invalid input, 3 I/O, 4 non-convergence.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "dcsbm/dcsbm.hpp"
#include "dcsbm/omp.hpp"

using namespace dcsbm;

namespace {

struct GraphInput {
  std::string path;
  bool one_indexed = false;
  bool dedupe = false;
  Index n = -1;
  std::string truth;
  std::string out;
  std::string eigvecs;

  void add(CLI::App* app) {
    app->add_option("--graph", path, "Edge list (0-indexed 'u v' per line)")->required();
    app->add_flag("--one-indexed", one_indexed, "Shift 1-based vertex ids to 0-based");
    app->add_flag("--dedupe", dedupe, "Collapse duplicate edges instead of failing");
    app->add_option("--n", n, "Node count (default: max id + 1)");
    app->add_option("--truth", truth, "Truth labels; prints the misclassification");
    app->add_option("--out", out, "Write 'vertex label' lines here");
    app->add_option("--eigvecs", eigvecs, "Write the embedding eigenvectors as CSV");
  }
  Graph load() const { return read_edge_list(path, {one_indexed, dedupe, n}); }
};

void print_sizes(const Clustering& c) {
  std::cout << "clusters=" << c.count << "\nsizes=";
  const auto s = c.sizes();
  for (std::size_t i = 0; i < s.size(); ++i) std::cout << (i ? " " : "") << s[i];
  std::cout << "\nunassigned=" << c.unassigned() << '\n';
  for (const auto& w : c.warnings) std::cout << "warning=" << w << '\n';
}

void report_truth(const GraphInput& in, const Clustering& c) {
  if (in.truth.empty()) return;
  const auto truth = read_labels(in.truth);
  const auto mc = misclassification(c, truth);
  std::cout << "errors=" << mc.errors << "\nerror_fraction=" << mc.fraction << '\n';
}

std::string summary_graph(const Graph& g) {
  std::vector<Index> d = g.degrees();
  std::sort(d.begin(), d.end());
  auto q = [&](double p) { return d.empty() ? 0 : d[static_cast<std::size_t>(p * static_cast<double>(d.size() - 1))]; };
  std::ostringstream os;
  os << "n=" << g.n() << "\nedges=" << g.num_edges() << "\ndegree_min=" << q(0) << "\ndegree_q25=" << q(0.25)
     << "\ndegree_median=" << q(0.5) << "\ndegree_q75=" << q(0.75) << "\ndegree_max=" << q(1) << '\n';
  return os.str();
}

template <class T>
std::vector<T> expand_seeds(const std::vector<std::string>& items) {
  std::vector<T> out;
  for (const auto& s : items) {
    const auto dash = s.find('-');
    if (dash != std::string::npos && dash > 0) {
      const T a = static_cast<T>(std::stoull(s.substr(0, dash))), b = static_cast<T>(std::stoull(s.substr(dash + 1)));
      for (T x = a; x <= b; ++x) out.push_back(x);
    } else {
      out.push_back(static_cast<T>(std::stoull(s)));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral community detection on degree-corrected block models"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (default: runtime setting)");

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a graph and its truth labels");
  std::string gen_source, gen_graph, gen_labels;
  Index gen_n = 2000;
  std::uint64_t gen_seed = 1;
  gen->add_option("--preset", gen_source, "Preset name or model file")->required();
  gen->add_option("--n", gen_n, "Node count for presets");
  gen->add_option("--seed", gen_seed, "Sampling seed");
  gen->add_option("--out-graph", gen_graph, "Edge list output")->required();
  gen->add_option("--out-labels", gen_labels, "Truth labels output")->required();

  // detect
  auto* det = app.add_subcommand("detect", "Run the H-hat spectral algorithm");
  GraphInput det_in;
  det_in.add(det);
  std::string regime = "superlog", leftover = "unassigned";
  double f_mult = 1.0, alpha_min = 0.0;
  std::uint64_t det_seed = 1;
  Index known_L = 0, min_pairs = 32;
  bool literal_ball = false;
  det->add_option("--regime", regime, "superlog or logorder")->check(CLI::IsMember({"superlog", "logorder"}));
  det->add_option("--f-mult", f_mult, "Multiplier on f");
  det->add_option("--seed", det_seed, "Seed for pair sampling");
  det->add_option("--known-L", known_L, "Skip rank estimation and use this many eigenvectors");
  det->add_option("--alpha-min", alpha_min, "Smallest community fraction (with --known-L)");
  det->add_option("--leftover", leftover, "unassigned or nearest")->check(CLI::IsMember({"unassigned", "nearest"}));
  det->add_option("--min-pairs", min_pairs, "Lower bound on sampled pairs (0: ceil(f^-1/3) only)");
  det->add_flag("--literal-ball", literal_ball, "Ball size threshold f^(1/3) n exactly");

  // baseline
  auto* base = app.add_subcommand("baseline", "Comparison methods");
  GraphInput base_in;
  base_in.add(base);
  std::string method = "laplacian", op = "hhat";
  Index K = 2, eig_index = 1, dims = 0;
  double tau = 0.0, floor_v = 200.0;
  bool no_project = false;
  std::uint64_t base_seed = 1;
  base->add_option("--method", method, "adjacency, laplacian, score or frobenius")
      ->check(CLI::IsMember({"adjacency", "laplacian", "score", "frobenius"}));
  base->add_option("--K", K, "Number of clusters");
  base->add_option("--tau", tau, "Laplacian regularization");
  base->add_option("--operator", op, "Operator for frobenius")
      ->check(CLI::IsMember({"hhat", "hinflated", "laplacian", "adjacency"}));
  base->add_option("--floor", floor_v, "Degree-product floor for hinflated");
  base->add_option("--eig-index", eig_index, "Eigenvector index for frobenius (1 = leading)");
  base->add_option("--dims", dims, "Laplacian eigenvectors used (0 = K)");
  base->add_flag("--no-project", no_project, "Skip unit-sphere row projection");
  base->add_option("--seed", base_seed, "k-means seed");

  // verify
  auto* ver = app.add_subcommand("verify", "Concentration and random-walk diagnostics as CSV");
  std::string ver_source, ver_out;
  Index ver_n = 500;
  std::vector<std::string> ver_seeds{"1"};
  ver->add_option("--preset", ver_source, "Preset name or model file")->required();
  ver->add_option("--n", ver_n, "Node count for presets");
  ver->add_option("--seeds", ver_seeds, "Seeds (values or ranges a-b)");
  ver->add_option("--out", ver_out, "CSV output (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Seed and size sweeps");
  ExperimentSpec spec;
  std::vector<std::string> exp_seeds{"1"};
  std::string exp_regime;
  exp->add_option("--preset", spec.source, "Preset name or model file")->required();
  exp->add_option("--n", spec.ns, "Node counts")->required();
  exp->add_option("--seeds", exp_seeds, "Seeds (values or ranges a-b)");
  exp->add_option("--methods", spec.methods, "Methods")->required();
  exp->add_option("--out-dir", spec.out_dir, "Directory for results.csv and timings.csv");
  exp->add_flag("--concentration", spec.concentration, "Add concentration ratios");
  exp->add_option("--f-mult", spec.f_multiplier, "Multiplier on f for hhat");
  exp->add_option("--regime", exp_regime, "Override the preset regime")->check(CLI::IsMember({"superlog", "logorder"}));

  // alignment
  auto* al = app.add_subcommand("alignment", "Eigenvalue and eigenvector alignment report");
  std::string al_a, al_d;
  al->add_option("--a", al_a, "Matrix file for A")->required();
  al->add_option("--delta", al_d, "Matrix file for the perturbation")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  set_threads(threads);

  try {
    if (*gen) {
      const Instance inst = make_instance(gen_source, gen_n, gen_seed);
      write_edge_list(inst.graph, gen_graph);
      write_labels(inst.truth, gen_labels);
      std::cout << summary_graph(inst.graph);
    } else if (*det) {
      const Graph g = det_in.load();
      DetectConfig cfg;
      cfg.regime = parse_regime(regime);
      cfg.f_multiplier = f_mult;
      cfg.seed = det_seed;
      cfg.leftover = parse_leftover(leftover);
      cfg.min_pairs = min_pairs;
      cfg.ball_rule = literal_ball ? BallRule::Literal : BallRule::Adaptive;
      const auto t0 = std::chrono::steady_clock::now();
      Detection d;
      if (known_L > 0) {
        if (!(alpha_min > 0.0)) throw InvalidArgument("--known-L requires --alpha-min in (0, 1]");
        d = detect_with_known_L(g, known_L, alpha_min, cfg);
      } else {
        d = detect_communities(g, cfg);
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cout << "L_hat=" << d.L_hat << "\nf=" << d.f << "\nthreshold=" << d.threshold
                << "\navg_degree=" << d.avg_degree << "\neps=";
      if (d.eps) std::cout << *d.eps; else std::cout << "none";
      std::cout << "\npairs=" << d.pairs << '\n';
      print_sizes(d.clustering);
      std::cout << "seconds=" << secs << '\n';
      report_truth(det_in, d.clustering);
      if (!det_in.out.empty()) write_labels(d.clustering.labels, det_in.out);
      if (!det_in.eigvecs.empty() && d.L_hat > 0) {
        const auto es = eigs_topk(normalized_adjacency(g), d.L_hat);
        write_eigvecs_csv(es.vectors, det_in.eigvecs);
      }
    } else if (*base) {
      const Graph g = base_in.load();
      SpectralOptions so;
      so.kmeans.seed = base_seed;
      Clustering c;
      Eigen::MatrixXd vecs;
      if (method == "adjacency") {
        c = adjacency_spectral(g, K, so);
        if (!base_in.eigvecs.empty()) vecs = eigs_topk(adjacency(g), K).vectors;
      } else if (method == "laplacian") {
        LaplacianOptions lo;
        lo.dims = dims;
        lo.project = !no_project;
        lo.spectral = so;
        c = laplacian_spectral(g, K, tau, lo);
        if (!base_in.eigvecs.empty()) vecs = eigs_topk(laplacian(g, tau), dims > 0 ? dims : K).vectors;
      } else if (method == "score") {
        c = score_cluster(g, K, so);
      } else {
        SymMatrix m;
        if (op == "hhat") m = normalized_adjacency(g);
        else if (op == "hinflated") m = inflated_normalized_adjacency(g, floor_v);
        else if (op == "laplacian") m = laplacian(g, tau);
        else m = adjacency(g);
        const auto r = frobenius_threshold(m, eig_index);
        std::cout << "eigenvalue=" << r.eigenvalue << "\ndegenerate=" << (r.degenerate ? 1 : 0) << '\n';
        c = r.clustering;
        vecs = r.vector;
      }
      print_sizes(c);
      report_truth(base_in, c);
      if (!base_in.out.empty()) write_labels(c.labels, base_in.out);
      if (!base_in.eigvecs.empty() && vecs.size() > 0) write_eigvecs_csv(vecs, base_in.eigvecs);
    } else if (*ver) {
      std::ofstream file;
      if (!ver_out.empty()) file = open_output(ver_out);
      std::ostream& out = ver_out.empty() ? std::cout : file;
      out << kCsvSchema << '\n'
          << "seed,n,d_bar,rho_hat_h,rho_h_eh,rho_eh_p,rho_w,gap_p,rho_w_dbar,w_over_gap,triangle_ok,"
             "rw_residual,lambda_max,lambda_lower,lambda_upper,rw_bounds_ok\n";
      out << std::setprecision(12);
      for (auto seed : expand_seeds<std::uint64_t>(ver_seeds)) {
        const Instance inst = make_instance(ver_source, ver_n, seed);
        if (!inst.params) throw InvalidArgument("verify needs a DC-SBM preset or model file");
        const auto r = concentration_report(inst.graph, *inst.params);
        const auto rw = random_walk_checks(inst.graph);
        out << seed << ',' << inst.graph.n() << ',' << r.d_bar << ',' << r.rho_hat_h << ',' << r.rho_h_eh << ','
            << r.rho_eh_p << ',' << r.rho_w << ',' << r.gap_p << ',' << r.ratio_w << ',' << r.w_over_gap << ','
            << (r.triangle_ok() ? 1 : 0) << ',' << rw.identity_residual << ',' << rw.lambda_max << ',' << rw.lower
            << ',' << rw.upper << ',' << ((rw.lower_ok && rw.upper_ok) ? 1 : 0) << '\n';
      }
    } else if (*exp) {
      spec.seeds = expand_seeds<std::uint64_t>(exp_seeds);
      if (!exp_regime.empty()) spec.regime = parse_regime(exp_regime);
      const auto rows = run_experiment(spec);
      if (spec.out_dir.empty()) write_results_csv(rows, std::cout, spec.concentration);
      else std::cout << "rows=" << rows.size() << "\nresults=" << (std::filesystem::path(spec.out_dir) / "results.csv").string() << '\n';
    } else if (*al) {
      const auto r = alignment_report(read_matrix(al_a), read_matrix(al_d));
      std::cout << std::setprecision(12) << "rho_delta=" << r.rho_delta << "\ngap=" << r.gap
                << "\nhypothesis=" << (r.hypothesis ? 1 : 0) << "\nbound=" << r.bound << "\nweyl_all=" << r.weyl_all()
                << "\ndims_all=" << r.dims_all() << "\ndots_all=" << r.dots_all() << '\n'
                << "i,lambda,mu,abs_diff,weyl_ok,dim_perturbed,dim_unperturbed,dot,dot_ok\n";
      for (std::size_t i = 0; i < r.entries.size(); ++i) {
        const auto& e = r.entries[i];
        std::cout << i << ',' << e.lambda << ',' << e.mu << ',' << e.abs_diff << ',' << e.weyl_ok << ','
                  << e.dim_perturbed << ',' << e.dim_unperturbed << ',' << e.dot << ',' << e.dot_ok << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
