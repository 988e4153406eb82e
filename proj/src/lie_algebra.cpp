#include "qmeix/lie_algebra.hpp"

#include <stdexcept>

namespace qmeix::lie {

namespace {

Matrix comm(const Matrix& x, const Matrix& y) { return x * y - y * x; }

// Max |entry| over columns whose basis occupation lies in the validity set.
double restricted_max(const Matrix& r, const fock::OperatorSet* ops, int max_occ) {
  if (ops == nullptr) return r.cwiseAbs().maxCoeff();
  double m = 0.0;
  for (int j = 0; j < r.cols(); ++j) {
    bool valid = true;
    for (int occ : ops->occupation(j))
      if (occ > max_occ) valid = false;
    if (!valid) continue;
    m = std::max(m, r.col(j).cwiseAbs().maxCoeff());
  }
  return m;
}

}  // namespace

GeneratorSet fermi_generators(const fock::OperatorSet& ops) {
  if (ops.family != Family::Fermi || ops.n_modes != 2)
    throw std::invalid_argument("fermi_generators: need the 2-mode Fermi operator set");
  const Matrix& a1 = ops.annihilators[0];
  const Matrix& a2 = ops.annihilators[1];
  GeneratorSet g;
  g.family = Family::Fermi;
  g.g2 = a1 * a2;           // F-
  g.g1 = g.g2.adjoint();    // F+ = a2+ a1+
  g.g3 = ops.creators[0] * a1 + ops.creators[1] * a2;  // N_F
  g.g0 = Matrix::Identity(ops.dim, ops.dim);
  g.m_f = g.g0 - g.g3;
  return g;
}

GeneratorSet bose_generators(const fock::OperatorSet& ops) {
  if (ops.family != Family::Bose || ops.n_modes != 1)
    throw std::invalid_argument("bose_generators: need the 1-mode Bose operator set");
  if (ops.cutoff < 4)
    throw std::invalid_argument("bose_generators: cutoff must be >= 4 (relations vacuous below)");
  const Matrix& a = ops.annihilators[0];
  const Matrix& ad = ops.creators[0];
  GeneratorSet g;
  g.family = Family::Bose;
  g.cutoff = ops.cutoff;
  g.g1 = 0.5 * (ad * ad).eval();
  g.g2 = 0.5 * (a * a).eval();
  g.g3 = (ad * a).eval() + 0.5 * Matrix::Identity(ops.dim, ops.dim);
  g.g0 = Matrix::Identity(ops.dim, ops.dim);
  return g;
}

std::vector<RelationResidual> check_relations(const GeneratorSet& gen) {
  std::vector<RelationResidual> out;
  const bool fermi = gen.family == Family::Fermi;
  const std::string sub = fermi ? "full space"
                                : "occupation <= cutoff-3";
  const int max_occ = fermi ? 1 : gen.cutoff - 3;

  // check_relations is also used on Bose sets built from multi-mode operator
  // sets in principle, but the constructors above only produce 1-mode sets;
  // the subspace restriction needs the occupation map, which we rebuild from
  // dimensions. For Fermi the restriction is trivial (full space).
  fock::OperatorSet occ_helper;
  const fock::OperatorSet* occ = nullptr;
  if (!fermi) {
    occ_helper.family = Family::Bose;
    occ_helper.n_modes = 1;
    occ_helper.cutoff = gen.cutoff;
    occ_helper.dim = static_cast<int>(gen.g1.rows());
    occ = &occ_helper;
  }

  auto push = [&](const std::string& name, const Matrix& residual) {
    out.push_back({name, sub, restricted_max(residual, occ, max_occ)});
  };

  if (fermi) {
    push("[F-,F+] - (1 - N_F)", comm(gen.g2, gen.g1) - gen.m_f);
    push("[N_F,F+] - 2 F+", comm(gen.g3, gen.g1) - 2.0 * gen.g1);
    // M_F = 1 - N_F flips the sign relative to the N_F relations
    push("[M_F,F+] + 2 F+", comm(gen.m_f, gen.g1) + 2.0 * gen.g1);
    push("[N_F,F-] + 2 F-", comm(gen.g3, gen.g2) + 2.0 * gen.g2);
    push("[M_F,F-] - 2 F-", comm(gen.m_f, gen.g2) - 2.0 * gen.g2);
    push("[F+,1]", comm(gen.g1, gen.g0));
    push("[F-,1]", comm(gen.g2, gen.g0));
    push("(F+)* - F-", Matrix(gen.g1.adjoint()) - gen.g2);
    push("(N_F)* - N_F", Matrix(gen.g3.adjoint()) - gen.g3);
  } else {
    push("[T2,T1] - T3", comm(gen.g2, gen.g1) - gen.g3);
    push("[T3,T1] - 2 T1", comm(gen.g3, gen.g1) - 2.0 * gen.g1);
    push("[T3,T2] + 2 T2", comm(gen.g3, gen.g2) + 2.0 * gen.g2);
    push("[T0,T1]", comm(gen.g0, gen.g1));
    push("(T1)* - T2", Matrix(gen.g1.adjoint()) - gen.g2);
    push("(T3)* - T3", Matrix(gen.g3.adjoint()) - gen.g3);
  }
  return out;
}

nlohmann::json residuals_to_json(const std::vector<RelationResidual>& residuals) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : residuals)
    arr.push_back({{"relation", r.relation},
                   {"subspace", r.subspace},
                   {"max_residual", r.max_residual}});
  return arr;
}

}  // namespace qmeix::lie
