#pragma once

#include <string>

#include "json.hpp"

#include "bellforge/bell_expression.hpp"
#include "bellforge/bounds.hpp"
#include "bellforge/facet_classifier.hpp"
#include "bellforge/quantum_value.hpp"
#include "bellforge/selftest.hpp"

namespace bellforge {

using Json = nlohmann::ordered_json;

// expressions round-trip; the report types serialize one way
Json expression_to_json(const BellExpression& e);
BellExpression expression_from_json(const Json& j);

Json sign_table_to_json(const SignTable& t);
SignTable sign_table_from_json(const Json& j);

Json bound_report_to_json(const BoundReport& r);
Json descriptor_to_json(const GhzDescriptor& d);
Json quantum_value_to_json(const QuantumValueResult& r);
Json selftest_report_to_json(const SelftestReport& r);
Json classification_to_json(const Classification& c);

}  // namespace bellforge
