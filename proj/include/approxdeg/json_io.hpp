#pragma once

#include <string>

#include <json.hpp>

#include "approxdeg/certify.hpp"
#include "approxdeg/domain.hpp"
#include "approxdeg/poly.hpp"
#include "approxdeg/witness.hpp"

namespace approxdeg {

nlohmann::json descriptor_to_json(const FunctionDescriptor& d);
FunctionDescriptor descriptor_from_json(const nlohmann::json& j);

/// {"family", "n", "r", "points", "labels"} with points in lexicographic
/// order; the loader accepts any function in this shape as a custom function.
nlohmann::json function_to_json(const PromiseFunction& f);
PromiseFunction function_from_json(const nlohmann::json& j);

/// {"n", "r", "terms": [{"pairs": [[row, col], ...], "coeff": "p/q"}, ...]}
nlohmann::json poly_to_json(const SparsePolynomial& p);
SparsePolynomial poly_from_json(const nlohmann::json& j);

/// {"points": [...], "values": ["p/q", ...], "orth": int, "eps": "p/q"}
nlohmann::json witness_to_json(const DualWitness& w);
DualWitness witness_from_json(const nlohmann::json& j);

nlohmann::json bound_to_json(const CertifiedBound& b);
CertifiedBound bound_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace approxdeg
