#include "dcsbm/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace dcsbm {

namespace {

[[noreturn]] void fail(const std::string& name, Index line, const std::string& msg) {
  throw InvalidArgument(name + ":" + std::to_string(line) + ": " + msg);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::string strip_comment(const std::string& s) {
  const auto p = s.find('#');
  return p == std::string::npos ? s : s.substr(0, p);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

long long to_int(const std::string& t, const std::string& name, Index line) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    fail(name, line, "expected an integer, found '" + t + "'");
  }
  if (pos != t.size()) fail(name, line, "expected an integer, found '" + t + "'");
  return v;
}

double to_real(const std::string& t, const std::string& name, Index line) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    fail(name, line, "expected a number, found '" + t + "'");
  }
  if (pos != t.size()) fail(name, line, "expected a number, found '" + t + "'");
  return v;
}

}  // namespace

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

Graph parse_edge_list(std::istream& in, const EdgeListOptions& opt, const std::string& name) {
  std::vector<Edge> edges;
  std::set<Edge> seen;
  Index max_id = -1;
  Index lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    const auto t = tokens(body);
    if (t.size() != 2) fail(name, lineno, "expected two vertex ids");
    Index u = to_int(t[0], name, lineno), v = to_int(t[1], name, lineno);
    if (opt.one_indexed) {
      --u;
      --v;
    }
    if (u < 0 || v < 0) fail(name, lineno, "negative vertex id");
    if (u == v) fail(name, lineno, "self-loop at vertex " + t[0]);
    const Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.insert(e).second) {
      if (opt.dedupe) continue;
      fail(name, lineno, "duplicate edge " + t[0] + " " + t[1]);
    }
    edges.push_back(e);
    max_id = std::max({max_id, u, v});
  }
  Index n = max_id + 1;
  if (opt.n >= 0) {
    if (opt.n < n) throw InvalidArgument(name + ": vertex id " + std::to_string(max_id) + " exceeds n=" + std::to_string(opt.n));
    n = opt.n;
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph read_edge_list(const std::string& path, const EdgeListOptions& opt) {
  auto in = open_input(path);
  return parse_edge_list(in, opt, path);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const Graph& g, const std::string& path) {
  auto out = open_output(path);
  write_edge_list(g, out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<int> parse_labels(std::istream& in, const std::string& name) {
  std::map<Index, int> pairs;
  std::vector<int> seq;
  Index lineno = 0;
  int columns = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    const auto t = tokens(body);
    const int c = static_cast<int>(t.size());
    if (c != 1 && c != 2) fail(name, lineno, "expected 'label' or 'vertex label'");
    if (columns == 0) columns = c;
    if (c != columns) fail(name, lineno, "inconsistent column count");
    if (c == 1) {
      seq.push_back(static_cast<int>(to_int(t[0], name, lineno)));
    } else {
      const Index u = to_int(t[0], name, lineno);
      if (u < 0) fail(name, lineno, "negative vertex id");
      if (!pairs.emplace(u, static_cast<int>(to_int(t[1], name, lineno))).second)
        fail(name, lineno, "vertex " + t[0] + " labelled twice");
    }
  }
  if (columns != 2) return seq;
  std::vector<int> out(pairs.empty() ? 0 : pairs.rbegin()->first + 1, kUnassigned);
  for (auto [u, l] : pairs) out[u] = l;
  for (std::size_t u = 0; u < out.size(); ++u)
    if (!pairs.count(static_cast<Index>(u))) throw InvalidArgument(name + ": vertex " + std::to_string(u) + " has no label");
  return out;
}

std::vector<int> read_labels(const std::string& path) {
  auto in = open_input(path);
  return parse_labels(in, path);
}

void write_labels(const std::vector<int>& labels, std::ostream& out) {
  for (std::size_t u = 0; u < labels.size(); ++u) out << u << ' ' << labels[u] << '\n';
}

void write_labels(const std::vector<int>& labels, const std::string& path) {
  auto out = open_output(path);
  write_labels(labels, out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

DcsbmParams parse_model(std::istream& in, const std::string& name) {
  std::map<std::string, std::pair<std::vector<std::string>, Index>> kv;
  Index lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(name, lineno, "expected 'key = value'");
    const auto key = tokens(body.substr(0, eq));
    if (key.size() != 1) fail(name, lineno, "malformed key");
    if (kv.count(key[0])) fail(name, lineno, "key '" + key[0] + "' repeated");
    kv[key[0]] = {tokens(body.substr(eq + 1)), lineno};
  }
  auto need = [&](const std::string& k) -> const std::pair<std::vector<std::string>, Index>& {
    auto it = kv.find(k);
    if (it == kv.end()) throw InvalidArgument(name + ": missing key '" + k + "'");
    return it->second;
  };
  auto reals = [&](const std::string& k, std::size_t from = 0) {
    const auto& [t, ln] = need(k);
    std::vector<double> v;
    for (std::size_t i = from; i < t.size(); ++i) v.push_back(to_real(t[i], name, ln));
    return v;
  };
  auto scalar_int = [&](const std::string& k) {
    const auto& [t, ln] = need(k);
    if (t.size() != 1) fail(name, ln, "'" + k + "' takes one integer");
    return to_int(t[0], name, ln);
  };

  DcsbmParams p;
  p.n = scalar_int("n");
  p.K = static_cast<int>(scalar_int("K"));
  if (p.n < 1 || p.K < 1) throw InvalidArgument(name + ": n and K must be positive");
  p.alpha = reals("alpha");
  const auto b = reals("block");
  if (static_cast<Index>(b.size()) != static_cast<Index>(p.K) * p.K)
    fail(name, need("block").second, "block needs K*K entries");
  p.block.resize(p.K, p.K);
  for (int i = 0; i < p.K; ++i)
    for (int j = 0; j < p.K; ++j) p.block(i, j) = b[i * p.K + j];

  if (kv.count("sigma")) {
    const auto& [t, ln] = kv["sigma"];
    for (const auto& s : t) p.sigma.push_back(static_cast<int>(to_int(s, name, ln)));
    if (static_cast<Index>(p.sigma.size()) != p.n) fail(name, ln, "sigma needs n entries");
  } else {
    if (static_cast<int>(p.alpha.size()) != p.K) fail(name, need("alpha").second, "alpha needs K entries");
    p.sigma = contiguous_labels(community_sizes(p.alpha, p.n));
  }

  const auto& [wt, wl] = need("weights");
  if (wt.empty()) fail(name, wl, "weights needs a family");
  const std::string fam = wt[0];
  auto arg = [&](std::size_t count) {
    if (wt.size() != count + 1) fail(name, wl, "weights " + fam + " takes " + std::to_string(count) + " argument(s)");
  };
  p.weights.resize(p.n);
  const double logn = std::log(static_cast<double>(p.n));
  if (fam == "constant") {
    arg(1);
    std::fill(p.weights.begin(), p.weights.end(), to_real(wt[1], name, wl));
  } else if (fam == "log2") {
    arg(1);
    std::fill(p.weights.begin(), p.weights.end(), to_real(wt[1], name, wl) * logn * logn);
  } else if (fam == "power") {
    arg(1);
    const double e = to_real(wt[1], name, wl);
    for (Index u = 0; u < p.n; ++u) p.weights[u] = std::pow(static_cast<double>(u + 1), e);
  } else if (fam == "fig1") {
    arg(0);
    std::vector<Index> seen(p.K, 0);
    for (Index u = 0; u < p.n; ++u) {
      const int s = p.sigma[u];
      if (s < 0 || s >= p.K) fail(name, wl, "sigma out of range");
      p.weights[u] = std::cbrt(static_cast<double>(++seen[s]));
    }
  } else if (fam == "blockwise") {
    arg(static_cast<std::size_t>(p.K));
    for (Index u = 0; u < p.n; ++u) {
      const int s = p.sigma[u];
      if (s < 0 || s >= p.K) fail(name, wl, "sigma out of range");
      p.weights[u] = to_real(wt[s + 1], name, wl);
    }
  } else if (fam == "list") {
    arg(static_cast<std::size_t>(p.n));
    for (Index u = 0; u < p.n; ++u) p.weights[u] = to_real(wt[u + 1], name, wl);
  } else {
    fail(name, wl, "unknown weights family '" + fam + "'");
  }
  for (const auto& [k, v] : kv)
    if (k != "n" && k != "K" && k != "alpha" && k != "block" && k != "sigma" && k != "weights")
      fail(name, v.second, "unknown key '" + k + "'");
  return p;
}

DcsbmParams read_model(const std::string& path) {
  auto in = open_input(path);
  return parse_model(in, path);
}

void write_matrix(const SymMatrix& m, std::ostream& out) {
  out << "# n " << m.n() << '\n' << std::setprecision(17);
  for (const auto& t : m.upper_triplets()) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

void write_matrix(const SymMatrix& m, const std::string& path) {
  auto out = open_output(path);
  write_matrix(m, out);
}

SymMatrix parse_matrix(std::istream& in, const std::string& name) {
  Index n = -1, lineno = 0, max_id = -1;
  std::vector<Triplet> t;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (n < 0 && line.rfind("# n ", 0) == 0) {
      n = to_int(tokens(line.substr(4)).at(0), name, lineno);
      continue;
    }
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    const auto tk = tokens(body);
    if (tk.size() != 3) fail(name, lineno, "expected 'u v value'");
    const Index u = to_int(tk[0], name, lineno), v = to_int(tk[1], name, lineno);
    if (u < 0 || v < 0) fail(name, lineno, "negative index");
    if (u > v) fail(name, lineno, "entries must come from the upper triangle");
    t.push_back({u, v, to_real(tk[2], name, lineno)});
    max_id = std::max(max_id, v);
  }
  if (n < 0) n = max_id + 1;
  if (max_id >= n) throw InvalidArgument(name + ": index exceeds declared n");
  return SymMatrix::sparse(n, std::move(t));
}

SymMatrix read_matrix(const std::string& path) {
  auto in = open_input(path);
  return parse_matrix(in, path);
}

void write_eigvecs_csv(const Eigen::MatrixXd& vectors, std::ostream& out) {
  out << kCsvSchema << '\n' << "node";
  for (Index j = 0; j < vectors.cols(); ++j) out << ",value" << (j + 1);
  out << '\n' << std::setprecision(17);
  for (Index u = 0; u < vectors.rows(); ++u) {
    out << u;
    for (Index j = 0; j < vectors.cols(); ++j) out << ',' << vectors(u, j);
    out << '\n';
  }
}

void write_eigvecs_csv(const Eigen::MatrixXd& vectors, const std::string& path) {
  auto out = open_output(path);
  write_eigvecs_csv(vectors, out);
}

}  // namespace dcsbm
