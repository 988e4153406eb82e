#pragma once

#include <string>
#include <vector>

#include "qmeix/fock.hpp"
#include "qmeix/types.hpp"

#include "json.hpp"

namespace qmeix::lie {

// Concrete generators of the quadratic Fermi / Bose algebra.
//
// Fermi: g1 = F+ = a2+ a1+, g2 = F- = a1 a2, g3 = N_F = a1+ a1 + a2+ a2,
//        g0 = 1, plus m_f = 1 - N_F. The commutation relations
//        [g2,g1] = g0 - g3, [g3,g1] = 2 g1, [g3,g2] = -2 g2 hold exactly.
//
// Bose: g1 = a+^2 / 2, g2 = a^2 / 2, g3 = a+ a + 1/2. This is the scaling
//        for which [g2,g1] = g3, [g3,g1] = 2 g1, [g3,g2] = -2 g2 all hold
//        (the unscaled monomials a+^2, a^2, 4 a+ a + 2 satisfy only the
//        first relation). On a truncated space the relations are valid on
//        basis vectors with occupation <= cutoff - 3, since g1 raises the
//        occupation by 2.
struct GeneratorSet {
  Family family;
  int cutoff = 0;  // Bose bookkeeping for the validity subspace
  Matrix g1, g2, g3, g0;
  Matrix m_f;  // Fermi only
};

GeneratorSet fermi_generators(const fock::OperatorSet& ops);
GeneratorSet bose_generators(const fock::OperatorSet& ops);  // requires cutoff >= 4

struct RelationResidual {
  std::string relation;
  std::string subspace;
  double max_residual = 0.0;
};

// Max-norm residual of each defining relation, restricted to the validity
// subspace (full space for Fermi, occupation <= cutoff-3 for Bose).
std::vector<RelationResidual> check_relations(const GeneratorSet& gen);

nlohmann::json residuals_to_json(const std::vector<RelationResidual>& residuals);

}  // namespace qmeix::lie
