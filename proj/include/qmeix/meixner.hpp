#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmeix/types.hpp"

namespace qmeix::meix {

// All distributions are stored together with their characteristic function
// under the fixed convention phi_X(t) = E[exp(itX)]; supports and atom
// locations are derived from the cf, not from the literature's (mixed)
// Fourier sign conventions.

struct MeixnerV {
  double a, b, delta, mu;
  MeixnerV(double a, double b, double delta, double mu);
};

// cf e^{-i mu t} (1 - i theta t)^{-a}: the law of  sign(theta)*Gamma(a,|theta|) - mu.
struct GammaDist {
  double a, theta, mu;
  GammaDist(double a, double theta, double mu);
};

// cf p^r e^{-i mu t} (1 - (1-p) e^{-i d t})^{-r}: atoms at -mu - n d with
// weights binom(r, n) p^r (1-p)^n, binom the rising-factorial coefficient.
struct NegBinomial {
  double r, p, mu, d;
  NegBinomial(double r, double p, double mu, double d);
};

struct TwoAtom {
  double x1, p1, x2, p2;
  TwoAtom(double x1, double p1, double x2, double p2);
};

struct DiracDelta {
  double x0;
  explicit DiracDelta(double x0) : x0(x0) {}
};

using DistributionSpec = std::variant<MeixnerV, GammaDist, NegBinomial, TwoAtom, DiracDelta>;

enum class ClassLabel { MeixnerV, Gamma, NegativeBinomial, Bernoulli, Dirac };

std::string class_label_name(ClassLabel label);

struct ClassificationResult {
  ClassLabel label = ClassLabel::Dirac;
  DistributionSpec dist = DiracDelta(0.0);
  double det_h = 0.0;  // alpha^2 - beta^2
  Complex omega{0.0, 0.0};
  std::vector<std::pair<std::string, std::string>> metadata;
};

// Vacuum law of the 1-mode Bose Hamiltonian, by the sign of det h:
//   > 0: MeixnerV  a = 2|omega|, b = 2 atan2(beta, |omega|), delta = 1/4, mu = -beta/2
//   = 0: Gamma     a = 1/2, theta = beta, mu = beta/2
//   < 0: NegBinomial  r = 1/2, p = 2w/(w+|beta|), mu = (beta - s w)/2, d = -2 s w,
//        with w = sqrt(beta^2-alpha^2) and s = sign(beta).
ClassificationResult classify_bose(double alpha, double beta);

// Vacuum law of the 2-mode Fermi Hamiltonian: atoms at alpha +- omega with
// weights (1 -+ alpha/omega)/2; the Dirac mass at 0 when beta = 0.
ClassificationResult classify_fermi(double alpha, double beta);

// phi_out(t) = e^{i outer t} * ( e^{i inner t} * f(rescale * t) )^power
struct TransformRecipe {
  double outer_shift = 0.0;
  double inner_shift = 0.0;
  double power = 1.0;
  double rescale = 1.0;
};

struct HamiltonianRecovery {
  double alpha = 0.0;
  double beta = 0.0;
  TransformRecipe recipe;  // rebuilds the target cf from the vacuum cf
};

HamiltonianRecovery hamiltonian_from_meixner(double a, double b, double delta, double mu);
HamiltonianRecovery hamiltonian_from_negbin(double p, double r, double mu, double d);

Complex dist_cf(const DistributionSpec& spec, double t);

bool is_atomic(const DistributionSpec& spec);

// Density of the continuous families (MeixnerV, Gamma). Gamma evaluated
// outside its support returns 0. Atomic families throw invalid_argument.
double density(const DistributionSpec& spec, double x);

// (location, weight) pairs of the atomic families, heaviest-first order for
// NegBinomial (n = 0, 1, ...); continuous families throw invalid_argument.
std::vector<std::pair<double, double>> atoms(const DistributionSpec& spec,
                                             double weight_tail = 1e-12,
                                             int max_atoms = 10000);

// Raw moments E[X^k], k = 1..order, order <= 4. Closed forms except for
// MeixnerV, which uses central finite differences of the cf at 0
// (step 1e-3, Richardson-extrapolated).
std::vector<double> moments(const DistributionSpec& spec, int order);

using CfFunction = std::function<Complex(double)>;

// Simple transformations of a characteristic function: time shift by m,
// independent copying to the power q > 0, time rescaling by k != 0. For
// non-integer q the power is tracked continuously from t = 0.
CfFunction simple_transform(CfFunction f, double m, double q, double k);

CfFunction apply_recipe(CfFunction vacuum_cf, const TransformRecipe& recipe);

// Reduce b into (-pi, pi] modulo 2 pi (the MeixnerV cf is 2 pi-periodic in b).
double canonical_b(double b);

}  // namespace qmeix::meix
