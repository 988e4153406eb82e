#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "qmeix/types.hpp"

namespace qmeix::cf {

// Sampled characteristic-function values on a time grid. branch_continuous
// records that the square-root branch was tracked continuously from f(0)=1.
struct CfGrid {
  std::vector<double> t_values;
  std::vector<Complex> f_values;
  bool branch_continuous = true;

  // |f| <= 1 + tol, f(0) = 1 when 0 is on the grid, f(-t) = conj f(t) when
  // both points are present. Throws numerical_error on violation.
  void validate(double tol = 1e-10) const;
  // columns: t, re_f, im_f, abs_f (header row mandatory)
  void write_csv(std::ostream& os) const;
};

std::vector<double> uniform_grid(double t0, double t1, int steps);

// Vacuum cf of the 2-mode quadratic Fermi Hamiltonian,
// f(t) = (cos wt - (i alpha/w) sin wt) e^{i alpha t}, w = sqrt(a^2+b^2).
// The degenerate w = 0 case is the Dirac mass at 0: f == 1.
Complex fermi_cf(double alpha, double beta, double t);
bool fermi_cf_degenerate(double alpha, double beta);

// Vacuum cf of the 1-mode quadratic Bose Hamiltonian on the branch that is
// continuous in t with f(0) = 1. alpha >= 0 (gauge), alpha^2 + beta^2 > 0.
Complex bose_cf(double alpha, double beta, double t);

// Product cf for commuting diagonal data: prod_j bose_cf(alpha_j, beta_j, t).
Complex commuting_cf(std::span<const double> alphas, std::span<const double> betas, double t);

CfGrid fermi_cf_grid(double alpha, double beta, const std::vector<double>& ts);

// Grid evaluation of the 1-mode Bose cf by explicit branch tracking of
// w(t) = e^{-i beta t} / (cos wt - (i beta/w) sin wt), refined adaptively so
// the phase of w steps by < pi/2 between samples. Agrees with bose_cf.
CfGrid bose_cf_grid(double alpha, double beta, const std::vector<double>& ts);

// n-mode cf f(t) = det(Phi(t) e^{iCt})^{-1/2} with the -1/2 power tracked
// continuously from f(0)=1; the grid is refined adaptively until the phase
// of the determinant steps by < pi/2, else branch_tracking_error.
CfGrid nmode_cf(const Matrix& A, const Matrix& C, const std::vector<double>& ts);

// Max centered-difference residual of the first-order ODE satisfied by the
// closed-form cf, evaluated on a uniform grid.
double fermi_cf_ode_residual(double alpha, double beta, const std::vector<double>& ts);
double bose_cf_ode_residual(double alpha, double beta, const std::vector<double>& ts);

// Generic tracked evaluation of w(t)^{-1/2} along a grid; used by the grid
// routines above. w must be continuous, nonvanishing, with w(t0) near 1.
std::vector<Complex> tracked_inverse_sqrt(const std::function<Complex(double)>& w,
                                          const std::vector<double>& ts,
                                          int max_refine_depth = 24);

}  // namespace qmeix::cf
