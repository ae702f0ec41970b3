#include "bellforge/serialize.hpp"

#include <stdexcept>

namespace bellforge {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Json expression_to_json(const BellExpression& e) {
  Json coeffs = Json::object();
  for (std::uint32_t k = 0; k < e.key_count(); ++k) {
    if (e.coeff(k).is_zero()) continue;
    coeffs[index_bits(k, e.n())] = e.coeff(k).to_string();
  }
  return Json{{"n", e.n()}, {"coefficients", std::move(coeffs)}};
}

BellExpression expression_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j["n"].is_number_integer(),
          "expression: object with integer n required");
  const int n = j["n"].get<int>();
  require(n >= 1 && n <= kMaxParties, "expression: party count out of range");
  BellExpression e(n);
  require(j.contains("coefficients") && j["coefficients"].is_object(),
          "expression: coefficients object required");
  for (const auto& [key, value] : j["coefficients"].items()) {
    require(static_cast<int>(key.size()) == n, "expression: key length must equal n");
    const std::uint32_t k = parse_index_bits(key);
    require(value.is_string(), "expression: coefficients must be dyadic strings");
    e.set_coeff(k, Dyadic::parse(value.get<std::string>()));
  }
  return e;
}

Json sign_table_to_json(const SignTable& t) {
  return Json{{"n", t.n}, {"bits", t.bits_string()}};
}

SignTable sign_table_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j["n"].is_number_integer() && j.contains("bits") &&
              j["bits"].is_string(),
          "sign table: object with integer n and bits string required");
  return SignTable::from_bits(j["n"].get<int>(), j["bits"].get<std::string>());
}

Json bound_report_to_json(const BoundReport& r) {
  Json out = Json::object();
  if (r.local) {
    out["local"] = r.local->to_string();
    if (r.achieving_count > 0) out["achieving_count"] = r.achieving_count;
    if (!r.strategies.empty()) {
      Json strategies = Json::array();
      for (const Strategy& s : r.strategies) {
        Json rows = Json::array();
        for (const auto& pa : s.party_assignments) rows.push_back(Json::array({pa[0], pa[1]}));
        strategies.push_back(Json{{"party_assignments", std::move(rows)}});
      }
      out["strategies"] = std::move(strategies);
    }
  }
  if (r.biseparable) out["biseparable"] = r.biseparable->to_string();
  if (r.quantum) out["quantum"] = r.quantum->to_string();
  return out;
}

Json descriptor_to_json(const GhzDescriptor& d) {
  return Json{{"b", d.b_string()},
              {"phase", d.phase},
              {"amplitudes", Json::array({d.amplitude0, d.amplitude1})}};
}

Json quantum_value_to_json(const QuantumValueResult& r) {
  Json out{{"value", r.value}, {"thetas", r.angles}, {"method", r.method}};
  if (r.maximizer) out["maximizer"] = descriptor_to_json(*r.maximizer);
  Json diag{{"grid_points", r.diagnostics.grid_points},
            {"starts", r.diagnostics.starts},
            {"sweeps", r.diagnostics.sweeps},
            {"best_start", r.diagnostics.best_start},
            {"converged", r.diagnostics.converged}};
  if (r.method == "phi-scan") diag["phi"] = r.diagnostics.phi;
  if (!r.diagnostics.sweep_values.empty()) diag["sweep_values"] = r.diagnostics.sweep_values;
  out["diagnostics"] = std::move(diag);
  return out;
}

Json selftest_report_to_json(const SelftestReport& r) {
  Json maximizers = Json::array();
  for (const GhzDescriptor& d : r.maximizers) maximizers.push_back(descriptor_to_json(d));
  return Json{{"quantum_value", r.quantum_value},
              {"local_value", r.local_value},
              {"fidelity", r.fidelity},
              {"residuals", r.residuals},
              {"maximizers", std::move(maximizers)},
              {"optimal_angle_sets", r.optimal_angle_sets},
              {"constraints_detected", r.constraints_detected},
              {"involved_parties", r.involved_parties},
              {"free_parties", r.free_parties},
              {"distinct_configs", r.distinct_configs},
              {"verdict", r.verdict}};
}

Json classification_to_json(const Classification& c) {
  Json classes = Json::array();
  for (const FacetClass& fc : c.classes) {
    classes.push_back(Json{{"label", fc.label},
                           {"orbit_size", fc.members.size()},
                           {"local_bound", fc.local.to_string()},
                           {"quantum_value_fastpath", fc.value_fast},
                           {"quantum_value_oracle", fc.value_oracle},
                           {"residuals", fc.residuals},
                           {"verdict", fc.verdict},
                           {"representative", expression_to_json(fc.representative)}});
  }
  return Json{{"n", c.n}, {"classes", std::move(classes)}};
}

}  // namespace bellforge
