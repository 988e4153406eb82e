#pragma once

#include <vector>

#include "qmeix/types.hpp"

namespace qmeix::heis {

// Closed-form evolution of (a1, a2, a1+, a2+)^T for the 2-mode quadratic
// Fermi Hamiltonian: u4 = exp(it J) with J the 4x4 coefficient matrix.
struct FermiEvolution {
  double t = 0.0;
  Eigen::Matrix4cd u4;
};

Eigen::Matrix4d fermi_j_matrix(double alpha, double beta);
FermiEvolution fermi_evolution(double alpha, double beta, double t);

// Bogoliubov coefficients of the 1-mode Bose evolution:
// a(t) = c_a * a + c_adag * a+, and a+(t) is the adjoint.
struct BoseEvolution {
  double t = 0.0;
  Complex c_a{1.0, 0.0};
  Complex c_adag{0.0, 0.0};
};

BoseEvolution bose_evolution(double alpha, double beta, double t);

// Blocks of the 2n x 2n evolution exponential:
//   [[Phi, Psi], [conj Psi, conj Phi]](t) = exp(it [[-C, -A], [conj A, conj C]])
// so that a_i(t) = sum_j Phi_ij a_j + Psi_ij a_j+. Phi(0) = I, Psi(0) = 0,
// and dPhi/dt(0) = -iC.
struct NModeEvolution {
  double t = 0.0;
  Matrix phi;
  Matrix psi;
};

inline constexpr int kNModeGuard = 64;

Matrix nmode_generator(const Matrix& A, const Matrix& C);
NModeEvolution nmode_block_exponential(const Matrix& A, const Matrix& C, double t,
                                       int n_guard = kNModeGuard);

// exp(i t G): Hermitian eigendecomposition when G is Hermitian, otherwise
// scaling-and-squaring Pade.
Matrix expm_it(const Matrix& g, double t);

struct OdeResidualReport {
  double max_residual = 0.0;   // interior points, centered differences
  double phi0_error = 0.0;     // |Phi(0) - I|_max, when the grid starts at 0
  double phi_dot0_error = 0.0; // |dPhi/dt(0) + iC|_max, one-sided O(h^2)
  double a_condition = 0.0;    // 1-norm condition estimate of A
};

// Residual of the second-order matrix ODE satisfied by Phi:
//   A^-1 Phi'' - i (conj(C) A^-1 - A^-1 C) Phi' + (conj(C) A^-1 C - conj(A)) Phi = 0,
// which reduces to A^-1 Phi'' - i[C, A^-1] Phi' + (C A^-1 C - A) Phi for
// real A, C. Requires an invertible A and a uniform grid of >= 5 points.
OdeResidualReport ode_residual(const Matrix& A, const Matrix& C,
                               const std::vector<double>& t_grid,
                               const std::vector<NModeEvolution>& phi_path);

}  // namespace qmeix::heis
