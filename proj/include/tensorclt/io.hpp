#pragma once

#include <string>

#include <json.hpp>

#include "tensorclt/bounds.hpp"
#include "tensorclt/empirics.hpp"
#include "tensorclt/models.hpp"
#include "tensorclt/tensor.hpp"

namespace tensorclt::io {

using Json = nlohmann::json;

/// {"n": int, "d": int, "coefficients": {"<sorted,indices>": float}}.
/// Unknown keys are rejected.
SymmetricCoefficients coefficients_from_json(const Json& j);
Json coefficients_to_json(const SymmetricCoefficients& c);

/// {"n": int, "s": int, "values": nested row-major array} with depth 2s.
DoubleTensor double_tensor_from_json(const Json& j);
Json double_tensor_to_json(const DoubleTensor& z);

/// {"n": int, "s": int, "values": nested row-major array} with depth s.
DenseTensor dense_tensor_from_json(const Json& j);
Json dense_tensor_to_json(const DenseTensor& t);

/// {"kind": string, "n": int, "d": int, "payload": {...}}.
ModelSpec model_from_json(const Json& j);
Json model_to_json(const ModelSpec& m);

Json params_to_json(const TensorParams& p);
Json report_to_json(const BoundReport& r);
Json distribution_to_json(const EmpiricalDistribution& d);
std::string distribution_to_csv(const EmpiricalDistribution& d);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Deterministic serialization: object keys sorted, floats at 17 significant
/// digits, infinities as the string "inf". Same value, same bytes.
std::string render_json(const Json& j);

std::string format_double(double v);

}  // namespace tensorclt::io
