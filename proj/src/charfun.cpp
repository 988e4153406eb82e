#include "qmeix/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qmeix/branch.hpp"
#include "qmeix/heisenberg.hpp"

namespace qmeix::cf {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// omega for the Bose family: positive root of beta^2 - alpha^2, or -i|omega|.
Complex bose_omega(double alpha, double beta) {
  const double w2 = beta * beta - alpha * alpha;
  return w2 >= 0.0 ? Complex(std::sqrt(w2), 0.0) : Complex(0.0, -std::sqrt(-w2));
}

double uniform_step(const std::vector<double>& ts) {
  require(ts.size() >= 3, "ode residual: need >= 3 grid points");
  const double h = ts[1] - ts[0];
  for (std::size_t k = 1; k < ts.size(); ++k)
    require(std::abs(ts[k] - ts[k - 1] - h) <= 1e-9 * std::max(1.0, std::abs(h)),
            "ode residual: grid must be uniform");
  return h;
}

}  // namespace

void CfGrid::validate(double tol) const {
  if (t_values.size() != f_values.size())
    throw numerical_error("CfGrid: size mismatch");
  for (std::size_t k = 0; k < t_values.size(); ++k) {
    if (std::abs(f_values[k]) > 1.0 + tol)
      throw numerical_error("CfGrid: |f| exceeds 1");
    if (t_values[k] == 0.0 && f_values[k] != Complex(1.0, 0.0))
      throw numerical_error("CfGrid: f(0) != 1");
  }
  for (std::size_t k = 0; k < t_values.size(); ++k) {
    if (t_values[k] >= 0.0) continue;
    for (std::size_t j = k; j < t_values.size(); ++j) {
      if (t_values[j] == -t_values[k]) {
        if (std::abs(f_values[j] - std::conj(f_values[k])) > tol)
          throw numerical_error("CfGrid: Hermitian symmetry f(-t) = conj f(t) violated");
        break;
      }
    }
  }
}

void CfGrid::write_csv(std::ostream& os) const {
  os << "t,re_f,im_f,abs_f\n";
  os << std::setprecision(17);
  for (std::size_t k = 0; k < t_values.size(); ++k)
    os << t_values[k] << ',' << f_values[k].real() << ',' << f_values[k].imag() << ','
       << std::abs(f_values[k]) << '\n';
}

std::vector<double> uniform_grid(double t0, double t1, int steps) {
  require(steps >= 1, "uniform_grid: steps must be >= 1");
  std::vector<double> ts(steps + 1);
  const double h = (t1 - t0) / steps;
  for (int k = 0; k <= steps; ++k) ts[k] = t0 + k * h;
  return ts;
}

bool fermi_cf_degenerate(double alpha, double beta) {
  return alpha == 0.0 && beta == 0.0;
}

Complex fermi_cf(double alpha, double beta, double t) {
  const double w = std::hypot(alpha, beta);
  if (w == 0.0) return {1.0, 0.0};  // Dirac mass at 0
  return (std::cos(w * t) - kI * (alpha / w) * std::sin(w * t)) * std::exp(kI * alpha * t);
}

Complex bose_cf(double alpha, double beta, double t) {
  require(alpha >= 0.0, "bose_cf: alpha must be >= 0 (gauge-reduced form)");
  require(alpha * alpha + beta * beta > 0.0, "bose_cf: alpha^2 + beta^2 must be > 0");
  const double det_h = alpha * alpha - beta * beta;
  if (t == 0.0) return {1.0, 0.0};
  if (det_h == 0.0) {
    // omega = 0: f = e^{-i beta t/2} (1 - i beta t)^{-1/2}; the argument of
    // the root stays in the right half plane, principal branch continuous.
    return std::exp(Complex(0.0, -0.5 * beta * t)) / std::sqrt(Complex(1.0, -beta * t));
  }
  if (det_h > 0.0) {
    // omega = -i|omega|: cos wt - (i beta/w) sin wt = cosh|w|t - i(beta/|w|) sinh|w|t
    // has positive real part, so the principal root is the continuous branch.
    const double w = std::sqrt(det_h);
    const Complex g(std::cosh(w * t), -(beta / w) * std::sinh(w * t));
    return std::exp(Complex(0.0, -0.5 * beta * t)) / std::sqrt(g);
  }
  // Real omega: the denominator winds around 0, so factor out the rotation:
  //   cos wt - (i beta/w) sin wt = (1/p) e^{-i s w t} (1 - (1-p) e^{-i d t}),
  // s = sign(beta), p = 2w/(w+|beta|), d = -2sw. The remaining factor stays
  // in the right half plane and the principal root is continuous.
  const double w = std::sqrt(-det_h);
  const double s = beta >= 0.0 ? 1.0 : -1.0;
  const double p = 2.0 * w / (w + std::abs(beta));
  const double mu = 0.5 * (beta - s * w);
  const double d = -2.0 * s * w;
  return std::sqrt(p) * std::exp(Complex(0.0, -mu * t)) /
         std::sqrt(1.0 - (1.0 - p) * std::exp(Complex(0.0, -d * t)));
}

Complex commuting_cf(std::span<const double> alphas, std::span<const double> betas, double t) {
  require(alphas.size() == betas.size(), "commuting_cf: length mismatch");
  require(!alphas.empty(), "commuting_cf: empty parameter lists");
  Complex f{1.0, 0.0};
  for (std::size_t j = 0; j < alphas.size(); ++j) f *= bose_cf(alphas[j], betas[j], t);
  return f;
}

CfGrid fermi_cf_grid(double alpha, double beta, const std::vector<double>& ts) {
  CfGrid g;
  g.t_values = ts;
  g.f_values.reserve(ts.size());
  for (double t : ts) g.f_values.push_back(fermi_cf(alpha, beta, t));
  g.branch_continuous = true;  // single-valued closed form, no root taken
  g.validate();
  return g;
}

std::vector<Complex> tracked_inverse_sqrt(const std::function<Complex(double)>& w,
                                          const std::vector<double>& ts,
                                          int max_refine_depth) {
  for (std::size_t k = 1; k < ts.size(); ++k)
    require(ts[k] > ts[k - 1], "tracked_inverse_sqrt: grid must be strictly increasing");

  std::vector<Complex> out(ts.size());

  // The branch is anchored at t = 0, where w = 1 and the root is 1; the grid
  // is walked away from 0 in each direction separately.
  auto walk = [&](const std::vector<std::size_t>& order) {
    if (order.empty()) return;
    SqrtBranchTracker tracker;
    double t_prev = 0.0;
    Complex w_prev{1.0, 0.0};

    // advance to t, bisecting until each phase step is < pi/2
    std::function<void(double, Complex, double, int)> advance =
        [&](double ta, Complex wa, double tb, int depth) {
          const Complex wb = w(tb);
          if (std::abs(phase_step(wa, wb)) < 0.5 * kPi) {
            tracker.next(wb);
            return;
          }
          if (depth >= max_refine_depth)
            throw branch_tracking_error("branch tracking failed: phase step too large", tb);
          const double tm = 0.5 * (ta + tb);
          advance(ta, wa, tm, depth + 1);
          advance(tm, w(tm), tb, depth + 1);
        };

    for (std::size_t idx : order) {
      const double t = ts[idx];
      if (t == 0.0) {
        out[idx] = Complex(1.0, 0.0);
        continue;
      }
      advance(t_prev, w_prev, t, 0);
      t_prev = t;
      w_prev = w(t);
      out[idx] = 1.0 / tracker.current();
    }
  };

  std::vector<std::size_t> pos, neg;
  for (std::size_t k = 0; k < ts.size(); ++k)
    (ts[k] >= 0.0 ? pos : neg).push_back(k);
  std::reverse(neg.begin(), neg.end());  // walk negatives from 0 downward
  walk(pos);
  walk(neg);
  return out;
}

CfGrid bose_cf_grid(double alpha, double beta, const std::vector<double>& ts) {
  require(alpha >= 0.0, "bose_cf_grid: alpha must be >= 0");
  require(alpha * alpha + beta * beta > 0.0, "bose_cf_grid: alpha^2 + beta^2 must be > 0");
  const double w2 = beta * beta - alpha * alpha;
  const Complex w = bose_omega(alpha, beta);
  auto f2_inverse = [&](double t) -> Complex {  // 1/f(t)^2 = e^{i beta t} (cos wt - (i b/w) sin wt)
    Complex g;
    if (w2 == 0.0)
      g = Complex(1.0, -beta * t);
    else
      g = std::cos(w * t) - kI * (beta / w) * std::sin(w * t);
    return std::exp(kI * beta * t) * g;
  };
  CfGrid grid;
  grid.t_values = ts;
  // f = (1/f^2)^{-1/2} on the tracked branch
  grid.f_values = tracked_inverse_sqrt(f2_inverse, ts);
  grid.branch_continuous = true;
  grid.validate();
  return grid;
}

CfGrid nmode_cf(const Matrix& A, const Matrix& C, const std::vector<double>& ts) {
  require(!ts.empty(), "nmode_cf: empty grid");
  const Complex trace_c = C.trace();
  auto det_fn = [&](double t) -> Complex {
    const heis::NModeEvolution ev = heis::nmode_block_exponential(A, C, t);
    return ev.phi.determinant() * std::exp(kI * trace_c * t);
  };

  // The posterior phase-step rule alone can be aliased by a winding faster
  // than the sample spacing, so the evaluation grid is first refined to an
  // a-priori bound on the phase rate of det(Phi) e^{i tr(C) t}. The branch
  // anchor t = 0 is part of the walk and its legs need the same treatment.
  const double n = double(A.rows());
  const double rate_bound = std::abs(trace_c) + n * (A.norm() + C.norm());
  const double max_step = 0.25 * kPi / std::max(1.0, rate_bound);

  std::vector<double> base = ts;
  if (std::find(base.begin(), base.end(), 0.0) == base.end()) {
    base.push_back(0.0);
    std::sort(base.begin(), base.end());
  }
  std::vector<double> dense;
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (k > 0) {
      const double span = base[k] - base[k - 1];
      const double pieces = std::ceil(span / max_step);
      if (pieces > double(1 << 24))
        throw branch_tracking_error("nmode_cf: phase rate too high for this grid", base[k]);
      for (int j = 1; j < int(pieces); ++j)
        dense.push_back(base[k - 1] + span * j / pieces);
    }
    dense.push_back(base[k]);
  }

  const auto values = tracked_inverse_sqrt(det_fn, dense);
  CfGrid grid;
  grid.t_values = ts;
  grid.f_values.reserve(ts.size());
  std::size_t cursor = 0;
  for (double t : ts) {
    while (dense[cursor] != t) ++cursor;
    grid.f_values.push_back(values[cursor]);
  }
  grid.branch_continuous = true;
  grid.validate();
  return grid;
}

double fermi_cf_ode_residual(double alpha, double beta, const std::vector<double>& ts) {
  const double w = std::hypot(alpha, beta);
  require(w > 0.0, "fermi_cf_ode_residual: omega must be > 0");
  const double h = uniform_step(ts);
  std::vector<Complex> f(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) f[k] = fermi_cf(alpha, beta, ts[k]);
  double max_res = 0.0;
  for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
    const double t = ts[k];
    const double sn = std::sin(w * t), cs = std::cos(w * t);
    const Complex fp = (f[k + 1] - f[k - 1]) / (2.0 * h);
    const Complex res = (1.0 - (beta * beta) / (w * w) * sn * sn) * fp +
                        (beta * beta / w) * sn * (cs + kI * (alpha / w) * sn) * f[k];
    max_res = std::max(max_res, std::abs(res));
  }
  return max_res;
}

double bose_cf_ode_residual(double alpha, double beta, const std::vector<double>& ts) {
  require(alpha * alpha != beta * beta, "bose_cf_ode_residual: omega must be nonzero");
  const Complex w = bose_omega(alpha, beta);
  const double h = uniform_step(ts);
  std::vector<Complex> f(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) f[k] = bose_cf(alpha, beta, ts[k]);
  double max_res = 0.0;
  for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
    const double t = ts[k];
    const Complex sn = std::sin(w * t), cs = std::cos(w * t);
    const Complex fp = (f[k + 1] - f[k - 1]) / (2.0 * h);
    const Complex res = (1.0 + (alpha * alpha) / (w * w) * sn * sn) * fp +
                        (alpha * alpha / (2.0 * w)) * sn * (cs + kI * (beta / w) * sn) * f[k];
    max_res = std::max(max_res, std::abs(res));
  }
  return max_res;
}

}  // namespace qmeix::cf
