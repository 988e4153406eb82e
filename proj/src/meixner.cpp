#include "qmeix/meixner.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "qmeix/branch.hpp"
#include "qmeix/gammafn.hpp"

namespace qmeix::meix {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// rising-factorial binomial: r(r+1)...(r+k-1)/k!
double rising_binom(double r, int k) {
  double v = 1.0;
  for (int j = 0; j < k; ++j) v *= (r + j) / double(j + 1);
  return v;
}

double binom_int(int n, int k) {
  double v = 1.0;
  for (int j = 0; j < k; ++j) v = v * double(n - j) / double(j + 1);
  return v;
}

}  // namespace

MeixnerV::MeixnerV(double a, double b, double delta, double mu)
    : a(a), b(b), delta(delta), mu(mu) {
  require(a > 0.0, "MeixnerV: a must be > 0");
  require(b > -kPi && b < kPi, "MeixnerV: b must lie in (-pi, pi)");
  require(delta > 0.0, "MeixnerV: delta must be > 0");
}

GammaDist::GammaDist(double a, double theta, double mu) : a(a), theta(theta), mu(mu) {
  require(a > 0.0, "Gamma: a must be > 0");
  require(theta != 0.0, "Gamma: theta must be nonzero (the theta = 0 limit is DiracDelta)");
}

NegBinomial::NegBinomial(double r, double p, double mu, double d) : r(r), p(p), mu(mu), d(d) {
  require(r != 0.0, "NegBinomial: r must be nonzero");
  require(p > 0.0 && p < 1.0, "NegBinomial: p must lie in (0, 1)");
  require(d != 0.0, "NegBinomial: d must be nonzero");
}

TwoAtom::TwoAtom(double x1, double p1, double x2, double p2) : x1(x1), p1(p1), x2(x2), p2(p2) {
  require(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0, "TwoAtom: weights must lie in [0, 1]");
  require(std::abs(p1 + p2 - 1.0) <= 1e-12, "TwoAtom: weights must sum to 1");
}

std::string class_label_name(ClassLabel label) {
  switch (label) {
    case ClassLabel::MeixnerV: return "MeixnerV";
    case ClassLabel::Gamma: return "Gamma";
    case ClassLabel::NegativeBinomial: return "NegativeBinomial";
    case ClassLabel::Bernoulli: return "Bernoulli";
    case ClassLabel::Dirac: return "Dirac";
  }
  return "?";
}

double canonical_b(double b) {
  while (b > kPi) b -= 2.0 * kPi;
  while (b <= -kPi) b += 2.0 * kPi;
  return b;
}

ClassificationResult classify_bose(double alpha, double beta) {
  require(alpha >= 0.0, "classify_bose: alpha must be >= 0 (gauge-reduced form)");
  require(alpha * alpha + beta * beta > 0.0, "classify_bose: alpha^2 + beta^2 must be > 0");
  const double det_h = alpha * alpha - beta * beta;
  ClassificationResult res;
  res.det_h = det_h;
  if (det_h > 0.0) {
    const double w = std::sqrt(det_h);  // |omega|; omega = -i w
    res.omega = Complex(0.0, -w);
    const double b = 2.0 * std::atan2(beta, w);
    res.label = ClassLabel::MeixnerV;
    res.dist = MeixnerV(2.0 * w, b, 0.25, -0.5 * beta);
  } else if (det_h == 0.0) {
    res.omega = Complex(0.0, 0.0);
    res.label = ClassLabel::Gamma;
    res.dist = GammaDist(0.5, beta, 0.5 * beta);
  } else {
    const double w = std::sqrt(-det_h);
    res.omega = Complex(w, 0.0);
    const double s = beta >= 0.0 ? 1.0 : -1.0;
    res.label = ClassLabel::NegativeBinomial;
    res.dist = NegBinomial(0.5, 2.0 * w / (w + std::abs(beta)), 0.5 * (beta - s * w), -2.0 * s * w);
  }
  return res;
}

ClassificationResult classify_fermi(double alpha, double beta) {
  const double w = std::hypot(alpha, beta);
  ClassificationResult res;
  res.det_h = alpha * alpha - beta * beta;
  res.omega = Complex(w, 0.0);
  res.metadata.emplace_back("fermionic_class_by_definition",
                            alpha == beta ? "2nd (alpha == beta)" : "1st (alpha != beta)");
  res.metadata.emplace_back("fermionic_class_by_limit",
                            w == 0.0 ? "2nd (omega == 0)" : "1st (omega > 0)");
  if (w == 0.0) {
    res.label = ClassLabel::Dirac;
    res.dist = DiracDelta(0.0);
    res.metadata.emplace_back("degenerate", "omega == 0: Dirac mass at 0");
    return res;
  }
  if (beta == 0.0) {
    // one of the two weights vanishes and the surviving atom sits at 0
    res.label = ClassLabel::Dirac;
    res.dist = DiracDelta(0.0);
    res.metadata.emplace_back("degenerate", "beta == 0: vacuum is an eigenvector");
    return res;
  }
  res.label = ClassLabel::Bernoulli;
  res.dist = TwoAtom(alpha + w, 0.5 * (1.0 - alpha / w), alpha - w, 0.5 * (1.0 + alpha / w));
  return res;
}

HamiltonianRecovery hamiltonian_from_meixner(double a, double b, double delta, double mu) {
  MeixnerV target(a, b, delta, mu);  // domain checks
  const double c = std::cos(0.5 * b);
  require(c != 0.0, "hamiltonian_from_meixner: cos(b/2) must be nonzero");
  const double alpha = 0.5 * a / c;
  const double beta = 0.5 * a * std::tan(0.5 * b);
  // vacuum law has parameters (a, b, 1/4, -beta/2); strip its shift, raise to
  // 4 delta copies, then apply the target's shift.
  HamiltonianRecovery h;
  h.alpha = alpha;
  h.beta = beta;
  h.recipe = {mu, 0.5 * beta, 4.0 * delta, 1.0};
  return h;
}

HamiltonianRecovery hamiltonian_from_negbin(double p, double r, double mu, double d) {
  require(p > 0.0 && p < 1.0, "hamiltonian_from_negbin: p must lie in (0, 1)");
  require(r != 0.0 && d != 0.0, "hamiltonian_from_negbin: r and d must be nonzero");
  const double ratio = p / (2.0 - p);  // = omega for beta = 1
  const double alpha = std::sqrt(1.0 - ratio * ratio);
  const double beta = 1.0;
  const double w = ratio;
  const double mu_vac = 0.5 * (beta - w);
  const double d_vac = -2.0 * w;
  const double lambda = d / d_vac;
  HamiltonianRecovery h;
  h.alpha = alpha;
  h.beta = beta;
  h.recipe = {-mu, mu_vac * lambda, 2.0 * r, lambda};
  return h;
}

Complex dist_cf(const DistributionSpec& spec, double t) {
  return std::visit(
      [t](const auto& d) -> Complex {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MeixnerV>) {
          const Complex z = Complex(d.a * t, -d.b) * 0.5;
          return std::pow(std::cos(0.5 * d.b) / std::cosh(z), 2.0 * d.delta) *
                 std::exp(kI * d.mu * t);
        } else if constexpr (std::is_same_v<T, GammaDist>) {
          return std::exp(-kI * d.mu * t) * std::pow(Complex(1.0, -d.theta * t), -d.a);
        } else if constexpr (std::is_same_v<T, NegBinomial>) {
          return std::pow(d.p, d.r) * std::exp(-kI * d.mu * t) *
                 std::pow(1.0 - (1.0 - d.p) * std::exp(-kI * d.d * t), -d.r);
        } else if constexpr (std::is_same_v<T, TwoAtom>) {
          return d.p1 * std::exp(kI * d.x1 * t) + d.p2 * std::exp(kI * d.x2 * t);
        } else {
          return std::exp(kI * d.x0 * t);
        }
      },
      spec);
}

bool is_atomic(const DistributionSpec& spec) {
  return std::holds_alternative<NegBinomial>(spec) || std::holds_alternative<TwoAtom>(spec) ||
         std::holds_alternative<DiracDelta>(spec);
}

double density(const DistributionSpec& spec, double x) {
  if (const auto* m = std::get_if<MeixnerV>(&spec)) {
    const double y = (x - m->mu) / m->a;
    const double norm =
        std::pow(2.0 * std::cos(0.5 * m->b), 2.0 * m->delta) /
        (2.0 * m->a * kPi * std::tgamma(2.0 * m->delta));
    return norm * std::exp(m->b * y) * special::abs_gamma_sq(Complex(m->delta, y));
  }
  if (const auto* g = std::get_if<GammaDist>(&spec)) {
    // law of sign(theta) * Gamma(a, |theta|) - mu
    const double th = std::abs(g->theta);
    const double u = g->theta > 0.0 ? x + g->mu : -(x + g->mu);
    if (u < 0.0) return 0.0;
    return std::pow(u, g->a - 1.0) * std::exp(-u / th) /
           (std::tgamma(g->a) * std::pow(th, g->a));
  }
  throw std::invalid_argument("density: atomic law; use atoms()");
}

std::vector<std::pair<double, double>> atoms(const DistributionSpec& spec, double weight_tail,
                                             int max_atoms) {
  if (const auto* n = std::get_if<NegBinomial>(&spec)) {
    require(n->r > 0.0, "atoms: NegBinomial weights need r > 0");
    std::vector<std::pair<double, double>> out;
    const double pr = std::pow(n->p, n->r);
    double cum = 0.0;
    for (int k = 0; k < max_atoms && 1.0 - cum > weight_tail; ++k) {
      const double wgt = rising_binom(n->r, k) * pr * std::pow(1.0 - n->p, k);
      out.emplace_back(-n->mu - k * n->d, wgt);
      cum += wgt;
    }
    return out;
  }
  if (const auto* t = std::get_if<TwoAtom>(&spec))
    return {{t->x1, t->p1}, {t->x2, t->p2}};
  if (const auto* d = std::get_if<DiracDelta>(&spec))
    return {{d->x0, 1.0}};
  throw std::invalid_argument("atoms: continuous law; use density()");
}

namespace {

// raw moments from cf derivatives at 0 by central differences of orders
// (6,6,4,4) on a 7-point stencil, Richardson-extrapolated once.
std::vector<double> moments_by_differentiation(const DistributionSpec& spec, int order) {
  auto derivatives = [&](double h) {
    std::array<Complex, 9> f{};
    for (int k = -4; k <= 4; ++k) f[k + 4] = dist_cf(spec, k * h);
    std::array<Complex, 5> d{};
    d[1] = (-f[1] / 60.0 + 3.0 * f[2] / 20.0 - 3.0 * f[3] / 4.0 + 3.0 * f[5] / 4.0 -
            3.0 * f[6] / 20.0 + f[7] / 60.0) / h;
    d[2] = (f[1] / 90.0 - 3.0 * f[2] / 20.0 + 3.0 * f[3] / 2.0 - 49.0 * f[4] / 18.0 +
            3.0 * f[5] / 2.0 - 3.0 * f[6] / 20.0 + f[7] / 90.0) / (h * h);
    d[3] = (0.125 * (f[1] - f[7]) + (f[6] - f[2]) + 1.625 * (f[3] - f[5])) / (h * h * h);
    d[4] = (-f[1] / 6.0 + 2.0 * f[2] - 13.0 * f[3] / 2.0 + 28.0 * f[4] / 3.0 -
            13.0 * f[5] / 2.0 + 2.0 * f[6] - f[7] / 6.0) / (h * h * h * h);
    return d;
  };
  const double h = 1e-3;
  const auto dh = derivatives(h);
  const auto dh2 = derivatives(0.5 * h);
  const int stencil_order[5] = {0, 6, 6, 4, 4};
  std::vector<double> out;
  for (int k = 1; k <= order; ++k) {
    const double w = std::pow(2.0, stencil_order[k]);
    const Complex extrap = (w * dh2[k] - dh[k]) / (w - 1.0);
    out.push_back((std::pow(-kI, k) * extrap).real());
  }
  return out;
}

// raw moments of an integer-lattice variable X = -mu - d N from the
// factorial moments of N, E[N(N-1)...(N-k+1)] = (r)_k ((1-p)/p)^k.
std::vector<double> negbin_moments(const NegBinomial& nb, int order) {
  const double q = (1.0 - nb.p) / nb.p;
  double fact[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  for (int k = 1; k <= 4; ++k) {
    double v = 1.0;
    for (int j = 0; j < k; ++j) v *= (nb.r + j) * q;
    fact[k] = v;
  }
  // convert factorial to raw moments of N (Stirling numbers of the 2nd kind)
  const double mN1 = fact[1];
  const double mN2 = fact[2] + fact[1];
  const double mN3 = fact[3] + 3.0 * fact[2] + fact[1];
  const double mN4 = fact[4] + 6.0 * fact[3] + 7.0 * fact[2] + fact[1];
  const double mN[5] = {1.0, mN1, mN2, mN3, mN4};
  std::vector<double> out;
  for (int k = 1; k <= order; ++k) {
    double mk = 0.0;  // E[(-mu - d N)^k] by binomial expansion
    for (int j = 0; j <= k; ++j)
      mk += binom_int(k, j) * std::pow(-nb.mu, k - j) * std::pow(-nb.d, j) * mN[j];
    out.push_back(mk);
  }
  return out;
}

}  // namespace

std::vector<double> moments(const DistributionSpec& spec, int order) {
  require(order >= 1 && order <= 4, "moments: unsupported order (must be 1..4)");
  if (const auto* t = std::get_if<TwoAtom>(&spec)) {
    std::vector<double> out;
    for (int k = 1; k <= order; ++k)
      out.push_back(t->p1 * std::pow(t->x1, k) + t->p2 * std::pow(t->x2, k));
    return out;
  }
  if (const auto* d = std::get_if<DiracDelta>(&spec)) {
    std::vector<double> out;
    for (int k = 1; k <= order; ++k) out.push_back(std::pow(d->x0, k));
    return out;
  }
  if (const auto* g = std::get_if<GammaDist>(&spec)) {
    // X = s G - mu, G ~ Gamma(a, |theta|), s = sign(theta);
    // E[G^j] = |theta|^j a(a+1)...(a+j-1)
    const double s = g->theta > 0.0 ? 1.0 : -1.0;
    double mG[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
    for (int j = 1; j <= 4; ++j) {
      double v = 1.0;
      for (int i = 0; i < j; ++i) v *= (g->a + i) * std::abs(g->theta);
      mG[j] = v;
    }
    std::vector<double> out;
    for (int k = 1; k <= order; ++k) {
      double mk = 0.0;
      for (int j = 0; j <= k; ++j)
        mk += binom_int(k, j) * std::pow(-g->mu, k - j) * std::pow(s, j) * mG[j];
      out.push_back(mk);
    }
    return out;
  }
  if (const auto* n = std::get_if<NegBinomial>(&spec)) return negbin_moments(*n, order);
  return moments_by_differentiation(spec, order);
}

CfFunction simple_transform(CfFunction f, double m, double q, double k) {
  require(q > 0.0, "simple_transform: q must be > 0");
  require(k != 0.0, "simple_transform: k must be nonzero");
  const bool integer_power = std::abs(q - std::round(q)) < 1e-12;
  if (integer_power) {
    const int qi = int(std::round(q));
    return [f, m, qi, k](double t) -> Complex {
      Complex v{1.0, 0.0};
      const Complex base = f(k * t);
      for (int j = 0; j < qi; ++j) v *= base;
      return std::exp(kI * m * t) * v;
    };
  }
  // Non-integer power: track arg(f(k s)) continuously along s in [0, t].
  return [f, m, q, k](double t) -> Complex {
    if (t == 0.0) return {1.0, 0.0};
    int steps = std::max(16, int(std::ceil(std::abs(k * t) * 8.0)));
    for (int attempt = 0; attempt < 20; ++attempt) {
      double arg_acc = 0.0;
      bool ok = true;
      Complex prev = f(0.0);
      for (int j = 1; j <= steps; ++j) {
        const Complex cur = f(k * t * double(j) / steps);
        if (std::abs(cur) == 0.0) {
          throw numerical_error("simple_transform: cf vanishes on the path; "
                                "non-integer power undefined");
        }
        const double step = std::arg(cur / prev);
        if (std::abs(step) >= 0.5 * kPi) { ok = false; break; }
        arg_acc += step;
        prev = cur;
      }
      if (ok) {
        const Complex end = prev;
        const double mod = std::pow(std::abs(end), q);
        const double arg0 = std::arg(f(0.0));  // 0 for a cf, kept for generality
        return std::exp(kI * m * t) * mod * std::exp(kI * q * (arg0 + arg_acc));
      }
      steps *= 2;
    }
    throw branch_tracking_error("simple_transform: power tracking failed", t);
  };
}

CfFunction apply_recipe(CfFunction vacuum_cf, const TransformRecipe& recipe) {
  // e^{i outer t} ( e^{i inner t} f(k t) )^q  with  e^{i inner t} f(k t) = h(k t),
  // h(s) = e^{i (inner/k) s} f(s)
  CfFunction h = simple_transform(std::move(vacuum_cf), recipe.inner_shift / recipe.rescale,
                                  1.0, 1.0);
  return simple_transform(std::move(h), recipe.outer_shift, recipe.power, recipe.rescale);
}

}  // namespace qmeix::meix
