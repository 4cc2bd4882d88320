#pragma once

#include <string>

#include <json.hpp>

#include "rankbound/monodromy.hpp"

namespace rankbound {

/// Thrown when a witness file is malformed, inconsistent, or fails
/// revalidation.
class WitnessFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::ordered_json witness_to_json(const WitnessSet& ws);

/// Rebuilds a witness set, checking schema, shapes, finiteness, and profile
/// consistency, and re-evaluating every solution's residual; any residual
/// above residual_tol rejects the file with the offending index named.
WitnessSet witness_from_json(const nlohmann::ordered_json& j, double residual_tol = 1e-8);

/// Serialization is canonical: save followed by load reproduces every
/// coordinate bit-for-bit.
void save_witness(const WitnessSet& ws, const std::string& path);
WitnessSet load_witness(const std::string& path, double residual_tol = 1e-8);

}  // namespace rankbound
