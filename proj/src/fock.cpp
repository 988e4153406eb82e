#include "qmeix/fock.hpp"

#include <cmath>
#include <sstream>

namespace qmeix::fock {

namespace {

long checked_pow(long base, int exp, long guard) {
  long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > guard) {
      std::ostringstream msg;
      msg << "Fock dimension " << base << "^" << exp << " exceeds guard " << guard;
      throw resource_limit_error(msg.str());
    }
  }
  return v;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<int> OperatorSet::occupation(int basis_index) const {
  const int base = family == Family::Bose ? cutoff : 2;
  std::vector<int> occ(n_modes, 0);
  for (int k = n_modes - 1; k >= 0; --k) {  // mode 1 is the slowest index
    occ[k] = basis_index % base;
    basis_index /= base;
  }
  return occ;
}

std::string OperatorSet::basis_order_description() const {
  std::ostringstream os;
  os << "|n_1 ... n_" << n_modes << ">, n_k in 0.."
     << (family == Family::Bose ? cutoff - 1 : 1)
     << ", lexicographic with mode 1 slowest; index = sum_k n_k * base^(n_modes-k)";
  return os.str();
}

OperatorSet build_bose_ops(int n_modes, int cutoff, long dim_guard) {
  require(n_modes >= 1, "build_bose_ops: n_modes must be >= 1");
  require(cutoff >= 2, "build_bose_ops: cutoff must be >= 2");
  const long dim = checked_pow(cutoff, n_modes, dim_guard);

  // single-mode annihilator: a[m, m+1] = sqrt(m+1)
  Matrix a1 = Matrix::Zero(cutoff, cutoff);
  for (int m = 0; m + 1 < cutoff; ++m) a1(m, m + 1) = std::sqrt(double(m + 1));
  const Matrix id1 = Matrix::Identity(cutoff, cutoff);

  OperatorSet ops;
  ops.family = Family::Bose;
  ops.n_modes = n_modes;
  ops.cutoff = cutoff;
  ops.dim = static_cast<int>(dim);
  for (int k = 0; k < n_modes; ++k) {
    Matrix op = Matrix::Identity(1, 1);
    for (int j = 0; j < n_modes; ++j) op = kron(op, j == k ? a1 : id1);
    ops.annihilators.push_back(op);
    ops.creators.push_back(op.adjoint());
  }
  ops.vacuum = Vector::Zero(dim);
  ops.vacuum(0) = 1.0;
  return ops;
}

OperatorSet build_fermi_ops(int n_modes) {
  if (n_modes != 2)
    throw std::invalid_argument("build_fermi_ops: only n_modes = 2 is supported");

  // Jordan-Wigner with mode 1 the leftmost tensor factor:
  //   a_1 = s- (x) I,  a_2 = Z (x) s-.
  Matrix sminus = Matrix::Zero(2, 2);
  sminus(0, 1) = 1.0;
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const Matrix id2 = Matrix::Identity(2, 2);

  OperatorSet ops;
  ops.family = Family::Fermi;
  ops.n_modes = 2;
  ops.cutoff = 0;
  ops.dim = 4;
  ops.annihilators.push_back(kron(sminus, id2));
  ops.annihilators.push_back(kron(z, sminus));
  for (const Matrix& a : ops.annihilators) ops.creators.push_back(a.adjoint());
  ops.vacuum = Vector::Zero(4);
  ops.vacuum(0) = 1.0;
  return ops;
}

QuadraticHamiltonianSpec QuadraticHamiltonianSpec::bose_one_mode(double alpha, double beta) {
  require(alpha >= 0.0, "bose_one_mode: alpha must be >= 0 (gauge-reduced form)");
  require(alpha * alpha + beta * beta > 0.0, "bose_one_mode: alpha^2 + beta^2 must be > 0");
  QuadraticHamiltonianSpec s;
  s.family = HamiltonianFamily::BoseOneMode;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

QuadraticHamiltonianSpec QuadraticHamiltonianSpec::fermi_two_mode(double alpha, double beta) {
  require(alpha * alpha + beta * beta > 0.0, "fermi_two_mode: omega = sqrt(alpha^2+beta^2) must be > 0");
  QuadraticHamiltonianSpec s;
  s.family = HamiltonianFamily::FermiTwoMode;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

QuadraticHamiltonianSpec QuadraticHamiltonianSpec::bose_n_mode(Matrix A, Matrix C) {
  require(A.rows() == A.cols() && C.rows() == C.cols() && A.rows() == C.rows(),
          "bose_n_mode: A and C must be square of equal size");
  const double scale_a = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double scale_c = std::max(1.0, C.cwiseAbs().maxCoeff());
  if (((A - A.transpose()).cwiseAbs().maxCoeff()) > kHermitianTol * scale_a)
    throw std::invalid_argument("bose_n_mode: A is not symmetric within 1e-12");
  if (((C - C.adjoint()).cwiseAbs().maxCoeff()) > kHermitianTol * scale_c)
    throw std::invalid_argument("bose_n_mode: C is not Hermitian within 1e-12");
  QuadraticHamiltonianSpec s;
  s.family = HamiltonianFamily::BoseNMode;
  s.A = std::move(A);
  s.C = std::move(C);
  return s;
}

int QuadraticHamiltonianSpec::n_modes() const {
  switch (family) {
    case HamiltonianFamily::BoseOneMode: return 1;
    case HamiltonianFamily::FermiTwoMode: return 2;
    case HamiltonianFamily::BoseNMode: return static_cast<int>(A.rows());
  }
  return 0;
}

double QuadraticHamiltonianSpec::det_h() const {
  if (family == HamiltonianFamily::BoseNMode)
    throw std::logic_error("det_h is defined for the 1-mode families only");
  return alpha * alpha - beta * beta;
}

Complex QuadraticHamiltonianSpec::omega() const {
  if (family == HamiltonianFamily::FermiTwoMode)
    return std::sqrt(alpha * alpha + beta * beta);
  if (family == HamiltonianFamily::BoseOneMode) {
    const double w2 = beta * beta - alpha * alpha;
    // omega = -i|omega| when omega^2 < 0
    return w2 >= 0.0 ? Complex(std::sqrt(w2), 0.0) : Complex(0.0, -std::sqrt(-w2));
  }
  throw std::logic_error("omega is defined for the 1-mode families only");
}

Eigen::Matrix2cd QuadraticHamiltonianSpec::h_matrix() const {
  if (family == HamiltonianFamily::BoseNMode)
    throw std::logic_error("h_matrix is defined for the 1-mode families only");
  Eigen::Matrix2cd h;
  h << alpha, beta, beta, alpha;
  return h;
}

Matrix build_hamiltonian(const QuadraticHamiltonianSpec& spec, const OperatorSet& ops) {
  switch (spec.family) {
    case HamiltonianFamily::BoseOneMode: {
      require(ops.family == Family::Bose && ops.n_modes == 1,
              "build_hamiltonian: BoseOneMode spec needs 1-mode Bose operators");
      const Matrix& a = ops.annihilators[0];
      const Matrix& ad = ops.creators[0];
      return 0.5 * spec.alpha * (ad * ad + a * a).eval() + spec.beta * (ad * a).eval();
    }
    case HamiltonianFamily::FermiTwoMode: {
      require(ops.family == Family::Fermi && ops.n_modes == 2,
              "build_hamiltonian: FermiTwoMode spec needs 2-mode Fermi operators");
      const Matrix& a1 = ops.annihilators[0];
      const Matrix& a2 = ops.annihilators[1];
      const Matrix& c1 = ops.creators[0];
      const Matrix& c2 = ops.creators[1];
      return spec.alpha * (c1 * a1 + c2 * a2).eval() + spec.beta * (c1 * c2 + a2 * a1).eval();
    }
    case HamiltonianFamily::BoseNMode: {
      require(ops.family == Family::Bose && ops.n_modes == spec.n_modes(),
              "build_hamiltonian: BoseNMode spec incompatible with operator set");
      const int n = spec.n_modes();
      Matrix h = Matrix::Zero(ops.dim, ops.dim);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (spec.A(i, j) != Complex(0, 0)) {
            h += 0.5 * spec.A(i, j) * (ops.creators[i] * ops.creators[j]).eval();
            h += 0.5 * std::conj(spec.A(i, j)) * (ops.annihilators[i] * ops.annihilators[j]).eval();
          }
          if (spec.C(i, j) != Complex(0, 0))
            h += spec.C(i, j) * (ops.creators[i] * ops.annihilators[j]).eval();
        }
      return h;
    }
  }
  throw std::invalid_argument("build_hamiltonian: unknown family");
}

}  // namespace qmeix::fock
