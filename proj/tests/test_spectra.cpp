#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace dcsbm;
using namespace testutil;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(rows.size(), rows.begin()->size());
  Index i = 0;
  for (auto r : rows) {
    Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Eigen's own self-adjoint solver, sorted by descending |lambda|.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> oracle(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Index n = m.rows();
  std::vector<Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    return std::abs(es.eigenvalues()[a]) > std::abs(es.eigenvalues()[b]);
  });
  Eigen::VectorXd v(n);
  Eigen::MatrixXd x(n, n);
  for (Index i = 0; i < n; ++i) {
    v[i] = es.eigenvalues()[idx[i]];
    x.col(i) = es.eigenvectors().col(idx[i]);
  }
  return {v, x};
}

// sin of the largest principal angle between two orthonormal bases.
double subspace_sin(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd r = a - b * (b.transpose() * a);
  return r.norm() == 0.0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(r).singularValues()[0];
}

// Distinct rows under single linkage at tolerance tol.
Index distinct_rows(const Eigen::MatrixXd& rows, double tol) {
  const Index n = rows.rows();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if ((rows.row(i) - rows.row(j)).norm() <= tol) parent[find(i)] = find(j);
  Index c = 0;
  for (Index i = 0; i < n; ++i) c += find(i) == i;
  return c;
}

Eigen::MatrixXd unit_rows(Eigen::MatrixXd m) {
  for (Index i = 0; i < m.rows(); ++i)
    if (m.row(i).norm() > 0) m.row(i).normalize();
  return m;
}

SymMatrix random_sparse(Index n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::normal_distribution<double> g;
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j)
      if (u(rng) < density) t.push_back({i, j, g(rng)});
  return SymMatrix::sparse(n, t);
}

Eigen::MatrixXd random_orthogonal(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = g(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("sparse storage mirrors, sums duplicates, drops zeros") {
    const SymMatrix m = SymMatrix::sparse(3, {{0, 1, 2.0}, {0, 1, 0.5}, {1, 2, 0.0}, {2, 2, 4.0}});
    CHECK(m.at(0, 1) == 2.5);
    CHECK(m.at(1, 0) == 2.5);
    CHECK(m.at(1, 2) == 0.0);
    CHECK(m.nonzeros() == 3);
    const SymMatrix d = SymMatrix::dense(mat({{1, 2}, {7, 3}}));
    CHECK(d.at(1, 0) == 2.0);
    CHECK(abs(SymMatrix::sparse(2, {{0, 1, -3.0}})).at(1, 0) == 3.0);
  }

  TEST_CASE("adjacency") {
    const SymMatrix a = adjacency(path(3));
    CHECK(a.at(0, 1) == 1.0);
    CHECK(a.at(1, 2) == 1.0);
    CHECK(a.at(0, 2) == 0.0);
    CHECK(adjacency(Graph::from_edges(4, {})).nonzeros() == 0);
    const Eigen::VectorXd rs = adjacency(star(5)).row_sums();
    CHECK(rs[0] == 5.0);
    for (Index i = 1; i <= 5; ++i) CHECK(rs[i] == 1.0);
  }

  TEST_CASE("normalized adjacency closed forms") {
    CHECK(max_abs_diff(normalized_adjacency(path(3)).to_dense(), mat({{0, 0.5, 0}, {0.5, 0, 0.5}, {0, 0.5, 0}})) == 0.0);
    const SymMatrix e = normalized_adjacency(path(2));
    CHECK(e.at(0, 1) == 1.0);
    CHECK(spectral_radius(e) == doctest::Approx(1.0));
    const Index k = 9;
    const SymMatrix h = normalized_adjacency(star(k));
    CHECK(h.at(0, 3) == doctest::Approx(1.0 / k));
    const Eigen::VectorXd ev = dense_eigenvalues(h.to_dense());
    CHECK(ev[0] == doctest::Approx(-1.0 / 3.0));
    CHECK(ev[k] == doctest::Approx(1.0 / 3.0));
    for (Index i = 1; i < k; ++i) CHECK(std::abs(ev[i]) < 1e-12);
  }

  TEST_CASE("inflated normalization") {
    const Graph g = random_graph(50, 0.2, 2);
    CHECK(max_abs_diff(inflated_normalized_adjacency(g, 1.0).to_dense(), normalized_adjacency(g).to_dense()) == 0.0);
    CHECK(inflated_normalized_adjacency(path(2), 200.0).at(0, 1) == doctest::Approx(1.0 / 200));
    const Eigen::MatrixXd a = inflated_normalized_adjacency(g, 10.0).to_dense();
    const Eigen::MatrixXd b = inflated_normalized_adjacency(g, 1e6).to_dense();
    CHECK((b.array() <= a.array()).all());
    CHECK(b.maxCoeff() <= 1e-6);
  }

  TEST_CASE("model normalization") {
    // p = 1 everywhere, so E[D-hat] equals the realized degree
    const Index n = 8;
    const auto p = make_params(n, mat({{static_cast<double>(n)}}), {1.0}, std::vector<double>(n, 1.0));
    const Graph g = complete(n);
    CHECK(max_abs_diff(model_normalized(g, p).to_dense(), normalized_adjacency(g).to_dense()) < 1e-15);
    CHECK(model_normalized(Graph::from_edges(n, {}), p).nonzeros() == 0);
  }

  TEST_CASE("expected normalized matrix") {
    const auto p = make_params(6, mat({{0.5}}), {1.0}, std::vector<double>(6, 1.0));
    const Eigen::MatrixXd eh = expected_model_normalized(p).to_dense();
    for (Index u = 0; u < 6; ++u) {
      CHECK(eh(u, u) == 0.0);
      for (Index v = 0; v < 6; ++v)
        if (u != v) CHECK(eh(u, v) == doctest::Approx(eh(0, 1)));
    }
    CHECK((expected_model_normalized(fig1_params(90)).to_dense().array() >= 0.0).all());
  }

  TEST_CASE("three-block population embedding has three rows, the Laplacian more") {
    const auto p = fig1_params(600);
    const EigenSystem h = eigs_topk(expected_model_normalized(p), 2);
    CHECK(distinct_rows(unit_rows(h.vectors), 1e-6) == 3);
    const EigenSystem l = eigs_topk(expected_normalized_laplacian(p), 2);
    CHECK(distinct_rows(unit_rows(l.vectors), 1e-6) > 3);
  }

  TEST_CASE("population matrix") {
    SUBCASE("single block") {
      const auto p = make_params(10, mat({{0.8}}), {1.0}, {1, 2, 3, 4, 5, 1, 2, 3, 4, 5});
      const auto agg = aggregates(p);
      const Eigen::VectorXd ev = dense_eigenvalues(population_matrix(p).to_dense());
      CHECK(ev[9] == doctest::Approx(0.8 / (agg.d_bar * agg.M_bar[0] * agg.M_bar[0])));
      for (Index i = 0; i < 9; ++i) CHECK(std::abs(ev[i]) < 1e-12);
    }
    SUBCASE("rows agree within a community") {
      const auto p = fig1_params(30);
      const Eigen::MatrixXd m = population_matrix(p).to_dense();
      CHECK(max_abs_diff(m.row(0), m.row(5)) == 0.0);
      CHECK(max_abs_diff(m.row(10), m.row(19)) == 0.0);
    }
    SUBCASE("rank two block matrix gives rank two population matrix") {
      auto p = make_params(60, mat({{1, 2, 3}, {2, 0, 2}, {3, 2, 5}}), {1.0 / 3, 1.0 / 3, 1.0 / 3}, std::vector<double>(60));
      for (Index u = 0; u < 60; ++u) p.weights[u] = p.sigma[u] + 1.0;
      const EigenSystem es = dense_spectrum(population_matrix(p).to_dense());
      const double top = std::abs(es.values[0]);
      Index nonzero = 0;
      for (Index i = 0; i < es.size(); ++i)
        if (std::abs(es.values[i]) > 1e-10 * top) {
          ++nonzero;
          // block-constant eigenvectors
          for (Index u = 0; u < 60; ++u) CHECK(std::abs(es.vectors(u, i) - es.vectors(20 * (u / 20), i)) <= 1e-9);
        }
      CHECK(nonzero == 2);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(block_matrix_z(p));
      CHECK(lu.rank() == 2);
    }
  }

  TEST_CASE("block matrix Z") {
    const auto p = make_params(10, mat({{0.8}}), {1.0}, std::vector<double>(10, 1.0));
    CHECK(block_matrix_z(p)(0, 0) == doctest::Approx(1.0 / 0.8));
  }

  TEST_CASE("bimodal degree classes: the degree matrix has eigenvector (1,10) with eigenvalue 101") {
    const auto p = bimodal_params(2000);
    const Eigen::MatrixXd l = expected_normalized_laplacian(p).to_dense();
    // block representatives: one light and one heavy node, plus a second light node
    const double ll = l(0, 1), lh = l(0, 1999), hh = l(1998, 1999);
    Eigen::MatrixXd m(2, 2);
    m << 1, lh / ll, lh / ll, hh / ll;
    CHECK(m(0, 1) == doctest::Approx(10.0).epsilon(1e-2));
    CHECK(m(1, 1) == doctest::Approx(100.0).epsilon(1e-2));
    const EigenSystem es = dense_spectrum(mat({{1, 10}, {10, 100}}));
    CHECK(es.values[0] == doctest::Approx(101.0));
    CHECK(es.vectors(1, 0) / es.vectors(0, 0) == doctest::Approx(10.0));
    CHECK(std::abs(es.values[1]) < 1e-12);
  }

  TEST_CASE("lifting Z eigenvectors to P") {
    SUBCASE("single block") {
      const auto p = make_params(12, mat({{0.5}}), {1.0}, std::vector<double>(12, 2.0));
      const double z = block_matrix_z(p)(0, 0);
      const auto lp = lift_z_eigenvector(p, Eigen::VectorXd::Ones(1), z);
      CHECK(lp.lambda == doctest::Approx(z / aggregates(p).d_bar));
      CHECK((lp.w.array() == 1.0).all());
      CHECK(lp.residual <= 1e-8);
    }
    SUBCASE("two-block sign vector") {
      const auto p = eppm_params(200);
      const Eigen::MatrixXd z = block_matrix_z(p);
      // symmetric two-block Z: (1,-1) has eigenvalue z00 - z01
      Eigen::VectorXd y(2);
      y << 1, -1;
      const auto lp = lift_z_eigenvector(p, y, z(0, 0) - z(0, 1));
      for (Index u = 0; u < 200; ++u) CHECK(lp.w[u] == (u < 100 ? 1.0 : -1.0));
      CHECK(lp.residual <= 1e-8);
      CHECK_THROWS_AS(lift_z_eigenvector(p, y, z(0, 0) + z(0, 1)), InvalidArgument);
    }
    SUBCASE("random three-block models") {
      std::mt19937_64 rng(4);
      std::uniform_real_distribution<double> u(0.2, 1.0);
      for (int t = 0; t < 5; ++t) {
        Eigen::MatrixXd b(3, 3);
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j) b(i, j) = b(j, i) = u(rng);
        std::vector<double> w(90);
        for (auto& x : w) x = u(rng);
        const auto p = make_params(90, b, {0.2, 0.3, 0.5}, w);
        Eigen::EigenSolver<Eigen::MatrixXd> zs(block_matrix_z(p));
        const Eigen::VectorXd pv = dense_eigenvalues(population_matrix(p).to_dense());
        for (int k = 0; k < 3; ++k) {
          const Eigen::VectorXd y = zs.eigenvectors().col(k).real();
          const auto lp = lift_z_eigenvector(p, y, zs.eigenvalues()[k].real());
          CHECK(lp.residual <= 1e-8);
          CHECK((pv.array() - lp.lambda).abs().minCoeff() <= 1e-10 * pv.cwiseAbs().maxCoeff());
        }
      }
    }
  }

  TEST_CASE("Laplacian") {
    const SymMatrix e = laplacian(path(2), 0.0);
    CHECK(e.at(0, 1) == 1.0);
    const Eigen::VectorXd ev = dense_eigenvalues(e.to_dense());
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));

    const SymMatrix p3 = laplacian(path(3), 0.0);
    CHECK(p3.at(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
    const Eigen::VectorXd pv = dense_eigenvalues(p3.to_dense());
    CHECK(pv[0] == doctest::Approx(-1.0));
    CHECK(std::abs(pv[1]) < 1e-12);
    CHECK(pv[2] == doctest::Approx(1.0));

    const Eigen::MatrixXd im = laplacian(path(3), 0.0, LaplacianForm::IdentityMinus).to_dense();
    CHECK(max_abs_diff(im, Eigen::MatrixXd::Identity(3, 3) - p3.to_dense()) < 1e-15);

    const Graph g = random_graph(40, 0.2, 5);
    const Eigen::MatrixXd a = laplacian(g, 1.0).to_dense(), b = laplacian(g, 100.0).to_dense();
    CHECK((b.array() <= a.array()).all());
    CHECK(b.maxCoeff() < a.maxCoeff());
    CHECK_THROWS_AS(laplacian(Graph::from_edges(3, {{0, 1}}), 0.0), InvalidArgument);
    CHECK_NOTHROW(laplacian(Graph::from_edges(3, {{0, 1}}), 0.5));
  }

  TEST_CASE("eigensolver: diagonal and star") {
    const EigenSystem d = eigs_topk(SymMatrix::sparse(3, {{0, 0, 3}, {1, 1, 2}, {2, 2, 1}}), 3);
    CHECK(d.values[0] == doctest::Approx(3));
    CHECK(d.values[1] == doctest::Approx(2));
    CHECK(d.values[2] == doctest::Approx(1));
    CHECK(max_abs_diff(d.vectors, Eigen::MatrixXd::Identity(3, 3)) < 1e-12);

    const EigenSystem s = eigs_topk(normalized_adjacency(star(4)), 2);
    CHECK(s.values[0] == doctest::Approx(0.5));
    CHECK(s.values[1] == doctest::Approx(-0.5));
    const EigenSystem sl = lanczos_topk(normalized_adjacency(star(4)), 2);
    CHECK(sl.values[0] == doctest::Approx(0.5));
    CHECK(sl.values[1] == doctest::Approx(-0.5));
  }

  TEST_CASE("eigensolver: Lanczos matches an independent dense solver") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const Index n = 60 + 20 * static_cast<Index>(seed);
      const SymMatrix m = seed % 2 ? random_sparse(n, 0.05, seed) : normalized_adjacency(random_graph(n, 0.08, seed));
      const auto [ov, ox] = oracle(m.to_dense());
      Index k = 6;
      while (k < n - 1 && std::abs(ov[k - 1]) - std::abs(ov[k]) < 1e-4) ++k;
      const EigenSystem es = lanczos_topk(m, k);
      REQUIRE(es.size() == k);
      for (Index i = 0; i < k; ++i) CHECK(std::abs(es.values[i] - ov[i]) <= 1e-8);
      CHECK(subspace_sin(es.vectors, ox.leftCols(k)) <= 1e-6);
      const Eigen::MatrixXd gram = es.vectors.transpose() * es.vectors;
      CHECK(max_abs_diff(gram, Eigen::MatrixXd::Identity(k, k)) <= 1e-8);
      for (Index i = 0; i < k; ++i) {
        CHECK(es.residuals[i] <= 1e-10 * std::max(1.0, std::abs(es.values[0])) * 10);
        Index arg;
        es.vectors.col(i).cwiseAbs().maxCoeff(&arg);
        CHECK(es.vectors(arg, i) > 0.0);
      }
      const EigenSystem dn = dense_spectrum(m.to_dense());
      for (Index i = 0; i < n; ++i) CHECK(std::abs(dn.values[i] - ov[i]) <= 1e-10);
    }
  }

  TEST_CASE("eigensolver: Lanczos on a larger sparse matrix") {
    const SymMatrix m = normalized_adjacency(sample_graph(eppm_params(1500), 3));
    const EigenSystem es = eigs_topk(m, 4);
    for (Index i = 0; i < 4; ++i) {
      const Eigen::VectorXd r = m * Eigen::VectorXd(es.vectors.col(i)) - es.values[i] * es.vectors.col(i);
      CHECK(r.norm() <= 1e-9);
    }
    CHECK(std::abs(es.values[0]) >= std::abs(es.values[1]));
  }

  TEST_CASE("sign convention") {
    Eigen::VectorXd v(3);
    v << 0.1, -0.9, 0.3;
    fix_sign(v);
    CHECK(v[1] == doctest::Approx(0.9));
    Eigen::VectorXd t(2);
    t << -0.5, 0.5;
    fix_sign(t);
    CHECK(t[0] == 0.5);
  }

  TEST_CASE("spectral radius") {
    CHECK(spectral_radius(SymMatrix::sparse(4, {})) == 0.0);
    CHECK(spectral_radius(SymMatrix::sparse(2, {{0, 1, 1.0}})) == doctest::Approx(1.0));
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0, 0.3);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const SymMatrix x = random_sparse(80, 0.1, 100 + s);
      std::vector<Triplet> t = abs(x).upper_triplets();
      for (auto& e : t) e.value += u(rng);
      const SymMatrix y = SymMatrix::sparse(80, t);
      CHECK(spectral_radius(x) <= spectral_radius(y) + 1e-9);
    }
  }

  TEST_CASE("eigen gap") {
    const std::vector<double> a{1, 1, 0};
    CHECK(eigen_gap(a).value() == 1.0);
    const std::vector<double> b{0.25, 0, 0, 0};
    CHECK(eigen_gap(b).value() == 0.25);
    const std::vector<double> c{2, 2};
    CHECK_FALSE(eigen_gap(c).has_value());
    const auto p = make_params(20, mat({{1.0}}), {1.0}, std::vector<double>(20, 1.0));
    const Eigen::VectorXd pv = dense_eigenvalues(population_matrix(p).to_dense());
    CHECK(population_gap(p) == doctest::Approx(pv.maxCoeff()));
  }

  TEST_CASE("population gap scales like one over D-bar") {
    std::vector<double> scaled;
    for (Index n : {300, 600, 1200}) {
      const auto p = eppm_params(n);
      scaled.push_back(population_gap(p) * aggregates(p).d_bar);
    }
    const double lo = *std::min_element(scaled.begin(), scaled.end());
    const double hi = *std::max_element(scaled.begin(), scaled.end());
    CHECK(lo > 0.0);
    CHECK(lo / hi > 0.5);
  }

  TEST_CASE("random-walk identities") {
    const Graph p3 = path(3);
    const auto r = random_walk_checks(p3);
    CHECK(r.identity_residual == 0.0);
    CHECK(r.lambda_max == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
    const auto s = random_walk_checks(star(7));
    CHECK(s.lambda_max == doctest::Approx(1.0 / std::sqrt(7.0)));
    CHECK(s.lower == doctest::Approx(1.0 / 7));
    const auto e = random_walk_checks(Graph::from_edges(5, {}));
    CHECK(e.identity_residual == 0.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto q = random_walk_checks(random_graph(120, 0.05, seed));
      CHECK(q.identity_residual <= 1e-12);
      CHECK(q.lower_ok);
      CHECK(q.upper_ok);
      CHECK(q.walk_product_error <= 1e-15);
    }
  }
}

TEST_SUITE("alignment") {
  TEST_CASE("zero perturbation") {
    const SymMatrix a = SymMatrix::dense(mat({{2, 1, 0}, {1, 2, 0}, {0, 0, 5}}));
    const auto r = alignment_report(a, SymMatrix::sparse(3, {}));
    for (const auto& e : r.entries) {
      CHECK(e.abs_diff <= 1e-14);
      CHECK(e.dot == doctest::Approx(1.0));
    }
  }

  TEST_CASE("two by two closed form") {
    const auto r = alignment_report(SymMatrix::dense(mat({{1, 0}, {0, 0}})), SymMatrix::dense(mat({{0, 0.1}, {0.1, 0}})));
    CHECK(std::abs(r.gap - 1.0) <= 1e-12);
    CHECK(std::abs(r.rho_delta - 0.1) <= 1e-12);
    CHECK(r.hypothesis);
    CHECK(std::abs(r.entries[0].lambda - 1.0099019513592784) <= 1e-12);
    CHECK(std::abs(r.entries[0].abs_diff - 0.0099019513592784) <= 1e-12);
    CHECK(std::abs(r.bound - 0.9797958971132712) <= 1e-12);
    CHECK(std::abs(r.entries[0].dot - 0.9951333266680701) <= 1e-12);
    CHECK(r.weyl_all());
    CHECK(r.dots_all());
    CHECK(r.dims_all());
  }

  TEST_CASE("random perturbations of the spectrum {2,1,0}") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
      const Eigen::MatrixXd q = random_orthogonal(3, rng);
      const Eigen::MatrixXd a = q * Eigen::Vector3d(2, 1, 0).asDiagonal() * q.transpose();
      Eigen::MatrixXd d = random_orthogonal(3, rng);
      d = (d + d.transpose()).eval();
      d *= 0.2 / dense_eigenvalues(d).cwiseAbs().maxCoeff();
      const auto r = alignment_report(SymMatrix::dense(a), SymMatrix::dense(d));
      CHECK(r.hypothesis);
      CHECK(r.weyl_all());
      CHECK(r.dims_all());
      CHECK(r.dots_all());
    }
  }

  TEST_CASE("repeated eigenvalues are matched against the whole eigenspace") {
    const SymMatrix a = SymMatrix::dense(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));
    const SymMatrix d = SymMatrix::dense(mat({{0, 0.01, 0}, {0.01, 0, 0}, {0, 0, 0}}));
    const auto r = alignment_report(a, d);
    CHECK(r.entries[0].dim_unperturbed == 2);
    CHECK(r.entries[0].dot == doctest::Approx(1.0));
  }
}
