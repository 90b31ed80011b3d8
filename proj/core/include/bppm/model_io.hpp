#pragma once

#include <iosfwd>
#include <string>

#include "bppm/generator.hpp"

namespace bppm {

inline constexpr int kModelSchemaVersion = 1;

// Model JSON: {"schema_version": 1, "K": K, "pi": [...],
//              "params": [[{"alpha":..,"beta":..,"lambda_inf":..}, ...], ...]}
// params[q][l] describes block pair (q, l).
[[nodiscard]] std::string model_to_json(const BlockHawkesModel& model, int indent = 2);
[[nodiscard]] BlockHawkesModel model_from_json(const std::string& text);
[[nodiscard]] BlockHawkesModel read_model(std::istream& in);

}  // namespace bppm
