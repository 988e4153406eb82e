#pragma once

#include <string>

#include "qmeix/meixner.hpp"
#include "qmeix/types.hpp"

#include "json.hpp"

namespace qmeix::io {

// {"n": k, "A": [[{"re":..,"im":..}, ...], ...], "C": same}; A must be
// symmetric and C Hermitian within 1e-12, validated with entry-localized
// error messages.
struct MatrixFile {
  int n = 0;
  Matrix A;
  Matrix C;
};

MatrixFile parse_matrix_file(const nlohmann::json& j);
MatrixFile load_matrix_file(const std::string& path);

nlohmann::json dist_spec_to_json(const meix::DistributionSpec& spec);
meix::DistributionSpec dist_spec_from_json(const nlohmann::json& j);
meix::DistributionSpec load_dist_spec(const std::string& path);

nlohmann::json classification_to_json(const meix::ClassificationResult& res);

}  // namespace qmeix::io
