#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "qmeix/charfun.hpp"
#include "qmeix/types.hpp"

#include "json.hpp"

namespace qmeix::oracle {

// One Hermitian eigendecomposition, then f(t) = sum_k w_k e^{it l_k} with
// w_k = |<v_k, vacuum>|^2; O(dim^3) once, O(dim) per t.
struct SpectralCf {
  RealVector eigenvalues;
  RealVector weights;
  Complex operator()(double t) const;
};

SpectralCf vacuum_cf_factorize(const Matrix& h, const Vector& vacuum);
std::vector<Complex> vacuum_cf_numeric(const Matrix& h, const Vector& vacuum,
                                       const std::vector<double>& ts);

struct OracleReport {
  std::vector<double> t_grid;
  std::vector<Complex> closed_form;
  std::vector<Complex> brute_force;
  double max_abs_error = 0.0;  // recomputed on construction
  int cutoff = 0;
  bool converged = false;

  OracleReport(std::vector<double> ts, std::vector<Complex> closed, std::vector<Complex> brute,
               int cutoff_in);
  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const;
};

struct InversionResult {
  std::vector<double> x;
  std::vector<double> p;
  double error_estimate = 0.0;  // tail-correction remainder + quadrature bound
};

// Gil-Pelaez-style inversion p(x) = (1/pi) Int_0^T Re[e^{-itx} f(t)] dt by
// composite Simpson on the supplied grid, plus a two-term integration-by-
// parts correction for the truncated tail. Refuses (numerical_error) when
// |f(T)| >= 1e-3 and the |f| envelope near the grid end is not decaying —
// the signature of an atomic law.
InversionResult invert_cf_to_density(const cf::CfGrid& grid, const std::vector<double>& x_grid);

// Atom weight at x0: (1/2T) Int_{-T}^{T} f(t) e^{-it x0} dt, error O(1/T)
// for well-separated atoms.
double extract_atom(const std::function<Complex(double)>& f, double x0, double T,
                    double step = 0.005);

// Truncated-oracle error of the 1-mode Bose closed form per cutoff;
// converged = errors monotone decreasing across the provided cutoffs
// (within the noise floor).
std::vector<OracleReport> convergence_study(double alpha, double beta,
                                            const std::vector<int>& cutoffs, double t_max,
                                            int grid_points = 201);

}  // namespace qmeix::oracle
