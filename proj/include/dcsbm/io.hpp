#pragma once

#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dcsbm/graph.hpp"
#include "dcsbm/model.hpp"
#include "dcsbm/sym_matrix.hpp"

namespace dcsbm {

inline constexpr const char* kCsvSchema = "# dcsbm-csv v1";

struct EdgeListOptions {
  bool one_indexed = false;
  bool dedupe = false;
  Index n = -1;  // -1: max index + 1
};

// Whitespace-separated "u v" pairs; '#' comments and blank lines skipped.
// Errors carry "<name>:<line>:".
Graph parse_edge_list(std::istream& in, const EdgeListOptions& opt = {}, const std::string& name = "<input>");
Graph read_edge_list(const std::string& path, const EdgeListOptions& opt = {});
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::string& path);

// One "vertex label" pair per line, or a single label per line (line order).
std::vector<int> parse_labels(std::istream& in, const std::string& name = "<input>");
std::vector<int> read_labels(const std::string& path);
void write_labels(const std::vector<int>& labels, std::ostream& out);
void write_labels(const std::vector<int>& labels, const std::string& path);

// key = value model description. Keys: n, K, alpha, block (row-major),
// sigma (optional), weights. weights is one of
//   constant c | log2 c (c log^2 n) | power p (u^p, 1-based) |
//   fig1 (within-block index^(1/3)) | blockwise w_0 .. w_{K-1} | list w_0 .. w_{n-1}
DcsbmParams parse_model(std::istream& in, const std::string& name = "<input>");
DcsbmParams read_model(const std::string& path);

// "# n N" header, then "u v value" for the upper triangle.
void write_matrix(const SymMatrix& m, std::ostream& out);
void write_matrix(const SymMatrix& m, const std::string& path);
SymMatrix parse_matrix(std::istream& in, const std::string& name = "<input>");
SymMatrix read_matrix(const std::string& path);

// Schema line, then "node,value1,..,valuek".
void write_eigvecs_csv(const Eigen::MatrixXd& vectors, std::ostream& out);
void write_eigvecs_csv(const Eigen::MatrixXd& vectors, const std::string& path);

std::ofstream open_output(const std::string& path);

}  // namespace dcsbm
