#include "doctest.h"

#include <cmath>
#include <sstream>

#include "qmeix/charfun.hpp"
#include "qmeix/fock.hpp"
#include "qmeix/meixner.hpp"
#include "qmeix/oracle.hpp"

using namespace qmeix;

TEST_SUITE("oracle") {

TEST_CASE("zero hamiltonian gives f identically 1") {
  Matrix h = Matrix::Zero(6, 6);
  Vector vac = Vector::Zero(6);
  vac(0) = 1.0;
  for (Complex f : oracle::vacuum_cf_numeric(h, vac, {0.0, 0.5, 3.0}))
    CHECK(std::abs(f - Complex(1.0)) <= 1e-15);
}

TEST_CASE("input validation") {
  Matrix h(2, 2);
  h << 0.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 0.0;  // not hermitian
  Vector vac = Vector::Zero(2);
  vac(0) = 1.0;
  CHECK_THROWS_AS(oracle::vacuum_cf_numeric(h, vac, {0.0}), std::invalid_argument);
  Matrix ok = Matrix::Identity(2, 2);
  Vector bad = 2.0 * vac;
  CHECK_THROWS_AS(oracle::vacuum_cf_numeric(ok, bad, {0.0}), std::invalid_argument);
}

TEST_CASE("fermi oracle agreement over the full grid") {
  auto ops = fock::build_fermi_ops();
  Matrix h = fock::build_hamiltonian(fock::QuadraticHamiltonianSpec::fermi_two_mode(0.9, -1.7), ops);
  auto ts = cf::uniform_grid(0.0, 10.0, 400);
  auto brute = oracle::vacuum_cf_numeric(h, ops.vacuum, ts);
  for (std::size_t k = 0; k < ts.size(); ++k)
    CHECK(std::abs(brute[k] - cf::fermi_cf(0.9, -1.7, ts[k])) <= 1e-12);
}

TEST_CASE("bose oracle agreement at cutoff 64") {
  auto ops = fock::build_bose_ops(1, 64);
  Matrix h = fock::build_hamiltonian(fock::QuadraticHamiltonianSpec::bose_one_mode(1.0, 1.0), ops);
  auto ts = cf::uniform_grid(0.0, 2.0, 100);
  auto brute = oracle::vacuum_cf_numeric(h, ops.vacuum, ts);
  for (std::size_t k = 0; k < ts.size(); ++k)
    CHECK(std::abs(brute[k] - cf::bose_cf(1.0, 1.0, ts[k])) <= 1e-8);
}

TEST_CASE("n-mode diagonal oracle at desk scale") {
  // gentle per-mode squeezing keeps modest per-mode cutoffs converged
  {
    const std::vector<double> alphas{0.3, 0.2}, betas{1.0, 0.8};
    auto ops = fock::build_bose_ops(2, 24);
    Matrix A = Matrix::Zero(2, 2), C = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i) {
      A(i, i) = alphas[i];
      C(i, i) = betas[i];
    }
    Matrix h = fock::build_hamiltonian(fock::QuadraticHamiltonianSpec::bose_n_mode(A, C), ops);
    auto ts = cf::uniform_grid(0.0, 2.0, 40);
    auto brute = oracle::vacuum_cf_numeric(h, ops.vacuum, ts);
    for (std::size_t k = 0; k < ts.size(); ++k)
      CHECK(std::abs(brute[k] - cf::commuting_cf(alphas, betas, ts[k])) <= 1e-8);
  }
  {
    const std::vector<double> alphas{0.15, 0.1, 0.12}, betas{1.0, 0.8, 0.9};
    auto ops = fock::build_bose_ops(3, 10);
    Matrix A = Matrix::Zero(3, 3), C = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      A(i, i) = alphas[i];
      C(i, i) = betas[i];
    }
    Matrix h = fock::build_hamiltonian(fock::QuadraticHamiltonianSpec::bose_n_mode(A, C), ops);
    auto ts = cf::uniform_grid(0.0, 2.0, 20);
    auto brute = oracle::vacuum_cf_numeric(h, ops.vacuum, ts);
    for (std::size_t k = 0; k < ts.size(); ++k)
      CHECK(std::abs(brute[k] - cf::commuting_cf(alphas, betas, ts[k])) <= 1e-8);
  }
}

TEST_CASE("gaussian self-test of the inversion") {
  // f = e^{-t^2/2} pairs with the standard normal density
  auto ts = cf::uniform_grid(0.0, 12.0, 2400);
  cf::CfGrid grid;
  grid.t_values = ts;
  for (double t : ts) grid.f_values.push_back(std::exp(-0.5 * t * t));
  auto inv = oracle::invert_cf_to_density(grid, {0.0, 0.5, -1.0});
  CHECK(inv.p[0] == doctest::Approx(0.3989422804014327).epsilon(1e-6));
  CHECK(inv.p[1] == doctest::Approx(0.3520653267642995).epsilon(1e-6));
  CHECK(inv.p[2] == doctest::Approx(0.24197072451914337).epsilon(1e-6));
}

TEST_CASE("inverted meixner cf matches the analytic density") {
  auto res = meix::classify_bose(1.0, 0.6);
  auto ts = cf::uniform_grid(0.0, 60.0, 6000);
  auto grid = cf::bose_cf_grid(1.0, 0.6, ts);
  const std::vector<double> xs{-1.0, -0.5, 0.0, 0.5, 1.0};
  auto inv = oracle::invert_cf_to_density(grid, xs);
  for (std::size_t k = 0; k < xs.size(); ++k)
    CHECK(inv.p[k] == doctest::Approx(meix::density(res.dist, xs[k])).epsilon(1e-6));
}

TEST_CASE("inverted gamma cf matches the analytic density away from the endpoint") {
  auto res = meix::classify_bose(1.0, 1.0);  // Gamma(1/2, 1, 1/2), support [-1/2, inf)
  auto ts = cf::uniform_grid(0.0, 4000.0, 800000);
  cf::CfGrid grid;
  grid.t_values = ts;
  grid.f_values.reserve(ts.size());
  for (double t : ts) grid.f_values.push_back(meix::dist_cf(res.dist, t));
  const std::vector<double> xs{0.0, 0.5, 1.0, 1.5, 2.0};
  auto inv = oracle::invert_cf_to_density(grid, xs);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double expect = meix::density(res.dist, xs[k]);
    CHECK(std::abs(inv.p[k] - expect) <= 1e-6);
  }
  // near the integrable x^{-1/2} endpoint the reconstruction degrades
  auto edge = oracle::invert_cf_to_density(grid, {-0.4999});
  CHECK(std::abs(edge.p[0] - meix::density(res.dist, -0.4999)) > 1e-4);
}

TEST_CASE("inversion refuses an atomic law") {
  auto ts = cf::uniform_grid(0.0, 60.0, 6000);
  auto res = meix::classify_bose(0.6, 1.0);  // NB: |f| does not decay
  cf::CfGrid grid;
  grid.t_values = ts;
  for (double t : ts) grid.f_values.push_back(meix::dist_cf(res.dist, t));
  CHECK_THROWS_AS(oracle::invert_cf_to_density(grid, {0.0}), numerical_error);
}

TEST_CASE("extract_atom recovers two-atom weights") {
  auto res = meix::classify_fermi(3.0, 4.0);
  auto f = [&](double t) { return meix::dist_cf(res.dist, t); };
  CHECK(std::abs(oracle::extract_atom(f, 8.0, 200.0) - 0.2) <= 0.01);
  CHECK(std::abs(oracle::extract_atom(f, -2.0, 200.0) - 0.8) <= 0.01);
  CHECK(std::abs(oracle::extract_atom(f, 3.0, 200.0)) <= 0.01);  // between atoms
}

TEST_CASE("extract_atom recovers the first negative binomial weights") {
  auto res = meix::classify_bose(0.6, 1.0);
  auto f = [&](double t) { return meix::dist_cf(res.dist, t); };
  auto expected = meix::atoms(res.dist);
  for (int k = 0; k < 5; ++k)
    CHECK(std::abs(oracle::extract_atom(f, expected[k].first, 500.0) - expected[k].second) <= 1e-2);
}

TEST_CASE("convergence study is monotone and flags the eigenvector case") {
  auto reports = oracle::convergence_study(1.0, 1.0, {16, 32, 64}, 2.0, 81);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].max_abs_error > reports[1].max_abs_error);
  CHECK(reports[1].max_abs_error > reports[2].max_abs_error);
  CHECK(reports[1].converged);
  CHECK(reports[2].converged);

  auto eigen = oracle::convergence_study(0.0, 1.0, {8, 16}, 2.0, 41);
  for (const auto& r : eigen) {
    CHECK(r.max_abs_error <= 1e-13);
    CHECK(r.converged);
  }

  auto strong = oracle::convergence_study(0.5, 1.0, {16, 32, 64, 128}, 2.0, 81);
  CHECK(strong.back().max_abs_error <= 1e-8);

  CHECK_THROWS_AS(oracle::convergence_study(1.0, 1.0, {16}, 2.0, 11), std::invalid_argument);
}

TEST_CASE("oracle report recomputes its error and serializes") {
  std::vector<double> ts{0.0, 1.0};
  std::vector<Complex> a{Complex(1.0), Complex(0.5, 0.0)};
  std::vector<Complex> b{Complex(1.0), Complex(0.5, 0.25)};
  oracle::OracleReport rep(ts, a, b, 32);
  CHECK(rep.max_abs_error == doctest::Approx(0.25).epsilon(1e-14));
  auto j = rep.to_json();
  CHECK(j["cutoff"] == 32);
  CHECK(j["closed_form"].size() == 2);
  std::ostringstream os;
  rep.write_csv(os);
  CHECK(os.str().rfind("t,re_closed,im_closed,re_brute,im_brute,abs_err\n", 0) == 0);
}

}  // TEST_SUITE
