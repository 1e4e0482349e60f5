#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "engel/algebra.hpp"

namespace engel {

/// Parses the algebra input document
///   {"c": [[[...]]], "d1": [...], "d2": [...], "metric": [[...]],
///    "orient_M": 1, "orient_D": 1}
/// with row-major nesting c[i][j][k] and 0-based indices in the file.
/// Only "c" is mandatory; the distribution defaults to (e1, e2) with the
/// identity metric and +1 orientations. Shape or antisymmetry violations
/// raise IoError.
std::pair<BracketTable, DistributionData> load_algebra_json(std::istream& in);
std::pair<BracketTable, DistributionData> load_algebra_file(const std::string& path);

}  // namespace engel
