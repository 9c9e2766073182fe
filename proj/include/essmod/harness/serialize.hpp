#pragma once
// JSON forms of every instance type. Complex doubles are [re, im] pairs;
// exact scalars are strings "p/q". All parse errors throw SchemaError.

#include <json.hpp>

#include "essmod/algebra/cstar.hpp"
#include "essmod/algebra/hilbert.hpp"
#include "essmod/fields/field.hpp"

namespace essmod::harness {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "essmod/1";

/// Throws SchemaError unless doc["schema"] == "essmod/1".
void require_schema(const Json& doc);

Json to_json(const algebra::AlgebraShape& shape);
algebra::AlgebraShape shape_from_json(const Json& j);

/// Blocks only: nested rows of [re, im].
Json blocks_to_json(const algebra::AlgebraElement& a);
algebra::AlgebraElement blocks_from_json(const algebra::AlgebraShape& shape, const Json& j);

Json to_json(const algebra::AlgebraElement& a);
algebra::AlgebraElement element_from_json(const Json& j);

Json to_json(const algebra::RightIdeal& ideal, const std::vector<algebra::AlgebraElement>& generators);
/// Uses "generators" when present and nonempty, else "support_projection".
algebra::RightIdeal ideal_from_json(const Json& j);
std::vector<algebra::AlgebraElement> ideal_generators_from_json(const Json& j);

Json to_json(const algebra::ModuleElement& m);
algebra::ModuleElement module_element_from_json(const Json& j);
Json to_json(const algebra::Submodule& n);
algebra::Submodule submodule_from_json(const Json& j);
Json to_json(const algebra::CompactOperator& t);
algebra::CompactOperator operator_from_json(const Json& j);

Json to_json(const fields::GaussianRational& z);
fields::Rational rational_from_json(const Json& j);
fields::GaussianRational gaussian_from_json(const Json& j);
Json to_json(const fields::Interval& iv);
Json to_json(const fields::SymbolicSubset& s);
fields::SymbolicSubset subset_from_json(const Json& j);
Json to_json(const fields::PiecewiseSection& s);
fields::PiecewiseSection section_from_json(std::size_t d, const Json& j);
Json to_json(const fields::FieldModuleSpec& spec);
fields::FieldModuleSpec field_spec_from_json(const Json& j);

}  // namespace essmod::harness
