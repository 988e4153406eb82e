#pragma once

#include <string>
#include <vector>

#include "qmeix/types.hpp"

namespace qmeix::fock {

// Creation/annihilation operators as dense matrices on an exact (Fermi) or
// per-mode truncated (Bose) Fock space. Basis vectors are occupation-number
// states enumerated lexicographically with mode 1 as the slowest index, so
// the vacuum |0...0> is always the first basis vector.
struct OperatorSet {
  Family family;
  int n_modes = 0;
  int cutoff = 0;  // Bose only: per-mode occupation runs over 0..cutoff-1
  int dim = 0;
  std::vector<Matrix> annihilators;
  std::vector<Matrix> creators;
  Vector vacuum;

  std::vector<int> occupation(int basis_index) const;
  std::string basis_order_description() const;
};

inline constexpr long kDefaultDimGuard = 10000;

OperatorSet build_bose_ops(int n_modes, int cutoff, long dim_guard = kDefaultDimGuard);
OperatorSet build_fermi_ops(int n_modes = 2);

enum class HamiltonianFamily { BoseOneMode, FermiTwoMode, BoseNMode };

// The 1-mode families carry (alpha, beta); the n-mode Bose family carries
// (A symmetric, C Hermitian). alpha is gauge-reduced to be >= 0 for Bose.
struct QuadraticHamiltonianSpec {
  HamiltonianFamily family;
  double alpha = 0.0;
  double beta = 0.0;
  Matrix A;
  Matrix C;

  static QuadraticHamiltonianSpec bose_one_mode(double alpha, double beta);
  static QuadraticHamiltonianSpec fermi_two_mode(double alpha, double beta);
  static QuadraticHamiltonianSpec bose_n_mode(Matrix A, Matrix C);

  int n_modes() const;
  // alpha^2 - beta^2; defined for the 1-mode families.
  double det_h() const;
  // Fermi: sqrt(alpha^2+beta^2) > 0. Bose: the root of beta^2-alpha^2,
  // taken as -i|omega| when beta^2-alpha^2 < 0.
  Complex omega() const;
  Eigen::Matrix2cd h_matrix() const;
};

inline constexpr double kHermitianTol = 1e-12;

// Normal-ordered Hamiltonian matrix for the given operator set. Constant
// terms are dropped, so <vacuum, H vacuum> = 0.
Matrix build_hamiltonian(const QuadraticHamiltonianSpec& spec, const OperatorSet& ops);

}  // namespace qmeix::fock
