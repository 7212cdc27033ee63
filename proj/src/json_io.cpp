#include "twistcalc/json_io.hpp"

#include "twistcalc/errors.hpp"
#include "twistcalc/parse.hpp"

namespace twistcalc {

namespace {

template <typename Map>
Json terms_to_json(const Map& terms, const char* value_key) {
  Json arr = Json::array();
  for (const auto& [k, c] : terms) {
    Json t;
    t["k"] = exponent_to_json(k);
    t[value_key] = to_string(c);
    arr.push_back(std::move(t));
  }
  return arr;
}

Json optional_scalar(const std::optional<Scalar>& v) {
  return v ? Json(to_string(*v)) : Json(nullptr);
}

}  // namespace

Json exponent_to_json(const Exponent& k) {
  Json arr = Json::array();
  for (unsigned v : k) arr.push_back(v);
  return arr;
}

Json jet_to_json(const Jet& jet) {
  Json j;
  j["order"] = jet.order;
  j["terms"] = terms_to_json(jet.coefficients, "coeff");
  return j;
}

Jet jet_from_json(const Json& j, const SpecPtr& spec) {
  try {
    Jet jet;
    jet.spec = spec;
    jet.order = j.at("order").get<unsigned>();
    for (const auto& t : j.at("terms")) {
      Exponent k = t.at("k").get<Exponent>();
      if (k.size() != spec->dim()) throw ConfigError("jet index has the wrong length");
      if (total_degree(k) > jet.order) throw ConfigError("jet index exceeds the order");
      jet.add(k, parse_poly(t.at("coeff").get<std::string>(), spec->dim()));
    }
    return jet;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed jet JSON: ") + e.what());
  }
}

Json bijet_to_json(const BiJet& b) {
  Json j;
  j["left_order"] = b.left_order;
  j["right_order"] = b.right_order;
  Json arr = Json::array();
  for (const auto& [key, c] : b.coefficients) {
    Json t;
    t["k"] = exponent_to_json(key.first);
    t["k_prime"] = exponent_to_json(key.second);
    t["coeff"] = to_string(c);
    arr.push_back(std::move(t));
  }
  j["terms"] = arr;
  return j;
}

Json operator_to_json(const TwistedOperator& op) {
  Json j;
  j["text"] = to_string(op);
  j["terms"] = terms_to_json(op.terms(), "coeff");
  return j;
}

Json norm_value_to_json(const NormValue& v) { return v.to_string(); }

Json radius_to_json(const RadiusReport& r) {
  Json j;
  j["D"] = r.truncation;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json o;
    o["deg"] = row.degree;
    o["min_valuation"] = row.min_valuation.to_string();
    o["evidence"] = optional_scalar(row.evidence);
    rows.push_back(std::move(o));
  }
  j["rows"] = rows;
  j["lower_bound_log_radius"] =
      r.lower_bound_log_radius ? to_string(*r.lower_bound_log_radius) : std::string("-inf");
  j["exhausted"] = r.exhausted;
  return j;
}

Json convergence_to_json(const ConvergenceReport& r) {
  Json j;
  j["convergent"] = r.convergent;
  Json rows = Json::array();
  for (const auto& row : r.table) {
    Json o;
    o["deg"] = row.degree;
    o["value"] = row.value.to_string();
    rows.push_back(std::move(o));
  }
  j["table"] = rows;
  return j;
}

Json sweep_row_to_json(const SweepRow& row) {
  Json j;
  j["q"] = to_string(row.q);
  j["coefficients"] = terms_to_json(row.classical.terms(), "poly");
  j["eta_norm_valuation"] = row.eta_norm_valuation.to_string();
  j["exact"] = row.exact;
  return j;
}

Json coordinate_report_to_json(const CoordinateReport& r) {
  auto witness = [](const std::optional<CoordinateWitness>& w) {
    if (!w) return Json(nullptr);
    Json o;
    o["i"] = w->var + 1;
    o["n"] = w->n;
    o["k"] = w->k;
    return o;
  };
  Json j;
  j["bound"] = r.bound;
  Json vars = Json::array();
  for (std::size_t i = 0; i < r.vars.size(); ++i) {
    const auto& v = r.vars[i];
    Json o;
    o["var"] = i + 1;
    o["kind"] = v.kind;
    o["strong"] = v.strong;
    o["leibniz"] = v.leibniz;
    o["classical_checked_to_degree"] = v.classical_checked_to_degree;
    o["classicality_asserted"] = v.classicality_asserted;
    o["kind_witness"] = witness(v.kind_witness);
    o["strong_witness"] = witness(v.strong_witness);
    if (v.leibniz_witness) {
      o["leibniz_witness"] = Json::array({exponent_to_json(v.leibniz_witness->first),
                                          exponent_to_json(v.leibniz_witness->second)});
    } else {
      o["leibniz_witness"] = nullptr;
    }
    vars.push_back(std::move(o));
  }
  j["vars"] = vars;
  return j;
}

Json contractivity_to_json(const ContractivityReport& r) {
  Json j;
  j["contractive"] = r.contractive;
  j["witness_var"] = r.witness_var ? Json(*r.witness_var + 1) : Json(nullptr);
  j["witness_monomial"] = r.witness_monomial ? exponent_to_json(*r.witness_monomial) : Json(nullptr);
  return j;
}

Json integrability_to_json(const IntegrabilityReport& r) {
  Json j;
  j["integrable"] = r.integrable;
  j["degree_bound"] = r.degree_bound;
  if (r.witness) {
    Json w;
    w["i"] = r.witness->var_i + 1;
    w["j"] = r.witness->var_j + 1;
    w["basis"] = r.witness->basis + 1;
    w["monomial"] = exponent_to_json(r.witness->monomial);
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json de_rham_to_json(const DeRhamReport& r) {
  Json j;
  j["truncation"] = r.truncation;
  j["nabla_squared_zero"] = r.nabla_squared_zero;
  Json rows = Json::array();
  for (const auto& d : r.degrees) {
    Json o;
    o["degree"] = d.degree;
    o["coefficient_degree_bound"] = d.truncation;
    o["dim"] = d.domain_dim;
    o["kernel"] = d.kernel;
    o["image_rank"] = d.image_rank;
    o["cohomology"] = d.cohomology;
    rows.push_back(std::move(o));
  }
  j["degrees"] = rows;
  return j;
}

Json symmetry_to_json(const SymmetryReport& r) {
  Json j;
  j["symmetric"] = r.symmetric;
  j["n"] = r.left_order;
  j["m"] = r.right_order;
  if (r.differing_index) {
    j["differing_index"] = Json::array(
        {exponent_to_json(r.differing_index->first), exponent_to_json(r.differing_index->second)});
  } else {
    j["differing_index"] = nullptr;
  }
  return j;
}

Json confluence_pair_to_json(const ConfluencePair& p) {
  Json j;
  j["N"] = p.order_bound;
  j["D"] = p.degree_bound;
  j["exact"] = p.exact;
  j["source"] = operator_to_json(p.source);
  j["target"] = operator_to_json(p.target);
  return j;
}

Json isometry_to_json(const IsometryReport& r) {
  Json j;
  j["source_norm_valuation"] = r.source_norm.to_string();
  j["target_norm_valuation"] = r.target_norm.to_string();
  j["agree"] = r.agree;
  j["caveat"] = r.caveat;
  return j;
}

}  // namespace twistcalc
