#include "qmeix/heisenberg.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace qmeix::heis {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool is_hermitian(const Matrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace

Eigen::Matrix4d fermi_j_matrix(double alpha, double beta) {
  Eigen::Matrix4d j;
  j << -alpha, 0, 0, -beta,
       0, -alpha, beta, 0,
       0, beta, alpha, 0,
       -beta, 0, 0, alpha;
  return j;
}

FermiEvolution fermi_evolution(double alpha, double beta, double t) {
  const double w = std::hypot(alpha, beta);
  require(w > 0.0, "fermi_evolution: omega = sqrt(alpha^2+beta^2) must be > 0");
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);
  const Complex dm = c - kI * (alpha / w) * s;  // diagonal for a_1, a_2
  const Complex dp = c + kI * (alpha / w) * s;  // diagonal for a_1+, a_2+
  const Complex off = kI * (beta / w) * s;
  FermiEvolution ev;
  ev.t = t;
  ev.u4 << dm, 0, 0, -off,
           0, dm, off, 0,
           0, off, dp, 0,
           -off, 0, 0, dp;
  return ev;
}

BoseEvolution bose_evolution(double alpha, double beta, double t) {
  require(alpha >= 0.0, "bose_evolution: alpha must be >= 0 (gauge-reduced form)");
  require(alpha * alpha + beta * beta > 0.0, "bose_evolution: alpha^2 + beta^2 must be > 0");
  const double w2 = beta * beta - alpha * alpha;
  BoseEvolution ev;
  ev.t = t;
  if (w2 == 0.0) {
    ev.c_a = Complex(1.0, -beta * t);
    ev.c_adag = Complex(0.0, -alpha * t);
    return ev;
  }
  // omega = -i|omega| when omega^2 < 0; the result is invariant under
  // omega -> -omega, so only continuity of the branch matters.
  const Complex w = w2 > 0.0 ? Complex(std::sqrt(w2), 0.0) : Complex(0.0, -std::sqrt(-w2));
  const Complex cw = std::cos(w * t);
  const Complex sw = std::sin(w * t);
  ev.c_a = cw - kI * (beta / w) * sw;
  ev.c_adag = -kI * (alpha / w) * sw;
  return ev;
}

Matrix nmode_generator(const Matrix& A, const Matrix& C) {
  const Eigen::Index n = A.rows();
  Matrix g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = -C;
  g.topRightCorner(n, n) = -A;
  g.bottomLeftCorner(n, n) = A.conjugate();
  g.bottomRightCorner(n, n) = C.conjugate();
  return g;
}

Matrix expm_it(const Matrix& g, double t) {
  if (t == 0.0) return Matrix::Identity(g.rows(), g.cols());
  if (is_hermitian(g, 1e-13)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    const auto& u = es.eigenvectors();
    Vector phases(g.rows());
    for (Eigen::Index k = 0; k < g.rows(); ++k)
      phases(k) = std::exp(kI * t * es.eigenvalues()(k));
    return u * phases.asDiagonal() * u.adjoint();
  }
  return Matrix(kI * t * g).exp();
}

NModeEvolution nmode_block_exponential(const Matrix& A, const Matrix& C, double t, int n_guard) {
  const Eigen::Index n = A.rows();
  require(A.cols() == n && C.rows() == n && C.cols() == n, "nmode: A, C must be square of equal size");
  if (n > n_guard) throw resource_limit_error("nmode: n exceeds guard");
  const double sa = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double sc = std::max(1.0, C.cwiseAbs().maxCoeff());
  require((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * sa, "nmode: A must be symmetric");
  require((C - C.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * sc, "nmode: C must be Hermitian");

  const Matrix e = expm_it(nmode_generator(A, C), t);
  NModeEvolution ev;
  ev.t = t;
  ev.phi = e.topLeftCorner(n, n);
  ev.psi = e.topRightCorner(n, n);
  return ev;
}

OdeResidualReport ode_residual(const Matrix& A, const Matrix& C,
                               const std::vector<double>& t_grid,
                               const std::vector<NModeEvolution>& phi_path) {
  const Eigen::Index n = A.rows();
  require(t_grid.size() >= 5, "ode_residual: need at least 5 grid points");
  require(t_grid.size() == phi_path.size(), "ode_residual: grid/path size mismatch");
  const double h = t_grid[1] - t_grid[0];
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    require(std::abs((t_grid[k] - t_grid[k - 1]) - h) <= 1e-9 * std::max(1.0, std::abs(h)),
            "ode_residual: grid must be uniform");

  Eigen::FullPivLU<Matrix> lu(A);
  OdeResidualReport rep;
  if (!lu.isInvertible())
    throw singular_matrix_error("ode_residual: A is singular to working precision");
  const Matrix a_inv = lu.inverse();
  rep.a_condition = A.cwiseAbs().colwise().sum().maxCoeff() *
                    a_inv.cwiseAbs().colwise().sum().maxCoeff();

  const Matrix cc = C.conjugate();
  const Matrix k1 = kI * (cc * a_inv - a_inv * C);     // coefficient of Phi'
  const Matrix k0 = cc * a_inv * C - A.conjugate();    // coefficient of Phi

  for (std::size_t k = 1; k + 1 < phi_path.size(); ++k) {
    const Matrix& pm = phi_path[k - 1].phi;
    const Matrix& p0 = phi_path[k].phi;
    const Matrix& pp = phi_path[k + 1].phi;
    const Matrix d2 = (pp - 2.0 * p0 + pm) / (h * h);
    const Matrix d1 = (pp - pm) / (2.0 * h);
    const Matrix res = a_inv * d2 - k1 * d1 + k0 * p0;
    rep.max_residual = std::max(rep.max_residual, res.cwiseAbs().maxCoeff());
  }

  if (std::abs(t_grid.front()) <= 1e-15) {
    rep.phi0_error = (phi_path[0].phi - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    const Matrix d0 = (-3.0 * phi_path[0].phi + 4.0 * phi_path[1].phi - phi_path[2].phi) / (2.0 * h);
    rep.phi_dot0_error = (d0 + kI * C).cwiseAbs().maxCoeff();
  }
  return rep;
}

}  // namespace qmeix::heis
