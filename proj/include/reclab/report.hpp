#pragma once

#include <json.hpp>

#include "reclab/lubin_tate.hpp"
#include "reclab/symbol.hpp"
#include "reclab/tower_io.hpp"

namespace reclab {

inline nlohmann::json to_json(const SymbolResult& r) {
  return {{"gamma", r.gamma}, {"method", method_name(r.method)}, {"precision_used", r.precision_used},
          {"stable", r.stable}};
}

inline nlohmann::json to_json(const CompareReport& rep) {
  nlohmann::json routes = nlohmann::json::array();
  for (const auto& r : rep.routes) {
    nlohmann::json j = {{"method", method_name(r.method)}};
    if (r.result) j["result"] = to_json(*r.result);
    if (r.error) {
      j["error"] = std::string(errc_name(*r.error));
      j["message"] = r.message;
    }
    routes.push_back(j);
  }
  return {{"k", rep.k}, {"routes", routes}, {"verdict", verdict_name(rep.verdict)}, {"exit_code", rep.exit_code()}};
}

inline nlohmann::json to_json(const GeneratorSystem& g) {
  nlohmann::json thetas = nlohmann::json::array();
  for (const auto& t : g.thetas) thetas.push_back(to_json(t));
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : g.checks)
    checks.push_back({{"name", c.name}, {"status", c.pass ? "PASS" : "FAIL"}, {"detail", c.detail}});
  const TowerElement rel = f_sub(f_sub(apply_sigma(g.omega, 1), g.omega), f_int_mult(static_cast<i64>(g.params->p), g.xi));
  return {{"p", g.params->p},
          {"m", g.params->m},
          {"N", g.params->N},
          {"chi", to_json(g.chi)},
          {"xi", to_json(g.xi)},
          {"omega", to_json(g.omega)},
          {"thetas", thetas},
          {"zeta", to_json(g.zeta)},
          {"big_omega", to_json(g.big_omega)},
          {"relation_residual", to_string(rel)},
          {"checks", checks}};
}

inline nlohmann::json to_json(const AxiomReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.results)
    rows.push_back({{"name", r.name}, {"first_failure", r.first_failure}, {"status", r.pass ? "PASS" : "FAIL"}});
  return {{"D", rep.D}, {"max_failing_degree", rep.max_failing_degree()}, {"results", rows}};
}

}  // namespace reclab
