#include "qmeix/oracle.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "qmeix/fock.hpp"

namespace qmeix::oracle {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// composite Simpson over a uniform grid; a trailing trapezoid handles an odd
// interval count.
double simpson(const std::vector<double>& vals, double h) {
  double s = 0.0;
  std::size_t m = vals.size() - 1;  // interval count
  std::size_t k = 0;
  for (; k + 2 <= m; k += 2) s += (vals[k] + 4.0 * vals[k + 1] + vals[k + 2]) * h / 3.0;
  if (k < m) s += 0.5 * h * (vals[k] + vals[k + 1]);
  return s;
}

}  // namespace

Complex SpectralCf::operator()(double t) const {
  Complex f{0.0, 0.0};
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
    if (weights(k) != 0.0) f += weights(k) * std::exp(kI * eigenvalues(k) * t);
  return f;
}

SpectralCf vacuum_cf_factorize(const Matrix& h, const Vector& vacuum) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  require((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "vacuum_cf_numeric: H must be Hermitian to 1e-12");
  require(std::abs(vacuum.norm() - 1.0) <= 1e-12, "vacuum_cf_numeric: vacuum must be unit norm");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw numerical_error("vacuum_cf_numeric: eigendecomposition failed");
  SpectralCf out;
  out.eigenvalues = es.eigenvalues();
  out.weights.resize(out.eigenvalues.size());
  const Vector overlaps = es.eigenvectors().adjoint() * vacuum;
  for (Eigen::Index k = 0; k < overlaps.size(); ++k)
    out.weights(k) = std::norm(overlaps(k));
  return out;
}

std::vector<Complex> vacuum_cf_numeric(const Matrix& h, const Vector& vacuum,
                                       const std::vector<double>& ts) {
  const SpectralCf f = vacuum_cf_factorize(h, vacuum);
  std::vector<Complex> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(f(t));
  return out;
}

OracleReport::OracleReport(std::vector<double> ts, std::vector<Complex> closed,
                           std::vector<Complex> brute, int cutoff_in)
    : t_grid(std::move(ts)), closed_form(std::move(closed)), brute_force(std::move(brute)),
      cutoff(cutoff_in) {
  if (t_grid.size() != closed_form.size() || t_grid.size() != brute_force.size())
    throw std::invalid_argument("OracleReport: size mismatch");
  for (std::size_t k = 0; k < t_grid.size(); ++k)
    max_abs_error = std::max(max_abs_error, std::abs(closed_form[k] - brute_force[k]));
}

nlohmann::json OracleReport::to_json() const {
  nlohmann::json j;
  j["cutoff"] = cutoff;
  j["max_abs_error"] = max_abs_error;
  j["converged"] = converged;
  j["t_grid"] = t_grid;
  auto dump = [](const std::vector<Complex>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Complex& z : v) arr.push_back({{"re", z.real()}, {"im", z.imag()}});
    return arr;
  };
  j["closed_form"] = dump(closed_form);
  j["brute_force"] = dump(brute_force);
  return j;
}

void OracleReport::write_csv(std::ostream& os) const {
  os << "t,re_closed,im_closed,re_brute,im_brute,abs_err\n" << std::setprecision(17);
  for (std::size_t k = 0; k < t_grid.size(); ++k)
    os << t_grid[k] << ',' << closed_form[k].real() << ',' << closed_form[k].imag() << ','
       << brute_force[k].real() << ',' << brute_force[k].imag() << ','
       << std::abs(closed_form[k] - brute_force[k]) << '\n';
}

InversionResult invert_cf_to_density(const cf::CfGrid& grid, const std::vector<double>& x_grid) {
  const auto& ts = grid.t_values;
  const auto& fs = grid.f_values;
  require(ts.size() >= 9, "invert_cf_to_density: grid too short");
  require(ts.front() == 0.0, "invert_cf_to_density: grid must start at t = 0");
  const double h = ts[1] - ts[0];
  for (std::size_t k = 1; k < ts.size(); ++k)
    require(std::abs(ts[k] - ts[k - 1] - h) <= 1e-9 * h, "invert_cf_to_density: grid must be uniform");

  const double f_end = std::abs(fs.back());
  if (f_end >= 1e-3) {
    // non-decaying envelope near the end means an atomic law
    double m1 = 0.0, m2 = 0.0;
    const std::size_t n = ts.size();
    for (std::size_t k = n * 6 / 10; k < n * 8 / 10; ++k) m1 = std::max(m1, std::abs(fs[k]));
    for (std::size_t k = n * 8 / 10; k < n; ++k) m2 = std::max(m2, std::abs(fs[k]));
    if (m2 >= 0.95 * m1)
      throw numerical_error("invert_cf_to_density: cf does not decay over the grid "
                            "(atomic law suspected); inversion refused");
  }

  // log-derivatives of f at the grid end, for the tail correction
  const std::size_t n = ts.size();
  const Complex l0 = std::log(fs[n - 3]);
  // local continuous log via stepwise unwrap relative to l0
  auto local_log = [&](std::size_t k, const Complex& ref) {
    Complex l = std::log(fs[k]);
    double im = l.imag();
    while (im - ref.imag() > kPi) im -= 2.0 * kPi;
    while (im - ref.imag() < -kPi) im += 2.0 * kPi;
    return Complex(l.real(), im);
  };
  const Complex l1 = local_log(n - 2, l0);
  const Complex l2 = local_log(n - 1, l1);
  const Complex dlog = (3.0 * l2 - 4.0 * l1 + l0) / (2.0 * h);   // (log f)'(T)
  const Complex d2log = (l2 - 2.0 * l1 + l0) / (h * h);          // (log f)''(T)

  InversionResult out;
  out.x = x_grid;
  out.p.reserve(x_grid.size());
  const double T = ts.back();
  double tail_scale = 0.0;

  std::vector<double> integrand(n);
  for (double x : x_grid) {
    for (std::size_t k = 0; k < n; ++k)
      integrand[k] = (fs[k] * std::exp(-kI * x * ts[k])).real();
    double p = simpson(integrand, h) / kPi;
    // tail: Int_T^inf F dt ~= -F(T)/lambda (1 + kappa/lambda^2),
    // lambda = (log F)'(T), kappa = (log F)''(T)
    const Complex lambda = dlog - kI * x;
    if (std::abs(lambda) > 1e-6) {
      const Complex fT = fs.back() * std::exp(-kI * x * T);
      const Complex tail = -fT / lambda * (1.0 + d2log / (lambda * lambda));
      p += tail.real() / kPi;
      tail_scale = std::max(tail_scale, std::abs(fT / lambda) *
                                            std::abs(d2log / (lambda * lambda)));
    } else {
      tail_scale = std::max(tail_scale, f_end * T);
    }
    out.p.push_back(p);
  }
  out.error_estimate = tail_scale / kPi + std::pow(h, 4) / 180.0 * T;
  return out;
}

double extract_atom(const std::function<Complex(double)>& f, double x0, double T, double step) {
  require(T > 0.0 && step > 0.0, "extract_atom: T and step must be positive");
  const int n = std::max(8, int(std::ceil(T / step)) & ~1);  // even interval count
  const double h = T / n;
  std::vector<double> vals(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = k * h;
    vals[k] = (f(t) * std::exp(-kI * x0 * t)).real();
  }
  // (1/2T) Int_{-T}^{T} = (1/T) Int_0^T Re[...] by Hermitian symmetry
  return simpson(vals, h) / T;
}

std::vector<OracleReport> convergence_study(double alpha, double beta,
                                            const std::vector<int>& cutoffs, double t_max,
                                            int grid_points) {
  require(cutoffs.size() >= 2, "convergence_study: need at least 2 cutoffs");
  const std::vector<double> ts = cf::uniform_grid(0.0, t_max, grid_points - 1);
  std::vector<Complex> closed;
  closed.reserve(ts.size());
  for (double t : ts) closed.push_back(cf::bose_cf(alpha, beta, t));

  std::vector<OracleReport> reports;
  for (int cutoff : cutoffs) {
    const auto ops = fock::build_bose_ops(1, cutoff);
    const Matrix h = fock::build_hamiltonian(
        fock::QuadraticHamiltonianSpec::bose_one_mode(alpha, beta), ops);
    reports.emplace_back(ts, closed, vacuum_cf_numeric(h, ops.vacuum, ts), cutoff);
  }
  constexpr double kNoiseFloor = 1e-12;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (k == 0) {
      reports[k].converged = reports[k].max_abs_error <= kNoiseFloor;
      continue;
    }
    reports[k].converged = reports[k].max_abs_error <= reports[k - 1].max_abs_error + 1e-13 ||
                           reports[k].max_abs_error <= kNoiseFloor;
  }
  return reports;
}

}  // namespace qmeix::oracle
