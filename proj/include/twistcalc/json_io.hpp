#pragma once

#include <json.hpp>

#include "twistcalc/banach.hpp"
#include "twistcalc/confluence.hpp"
#include "twistcalc/connection.hpp"
#include "twistcalc/operators.hpp"
#include "twistcalc/principal_parts.hpp"

namespace twistcalc {

// Key order is fixed by insertion so output is byte-stable.
using Json = nlohmann::ordered_json;

Json exponent_to_json(const Exponent& k);

/// {"order": n, "terms": [{"k": [..], "coeff": "<poly>"}]}
Json jet_to_json(const Jet& jet);
/// Inverse of jet_to_json; coefficients are parsed in spec's dimension.
Jet jet_from_json(const Json& j, const SpecPtr& spec);

Json bijet_to_json(const BiJet& b);
/// {"text": "...", "terms": [{"k": [..], "coeff": "<poly>"}]}
Json operator_to_json(const TwistedOperator& op);
Json norm_value_to_json(const NormValue& v);

/// {"D": int, "rows": [{"deg", "min_valuation", "evidence"}], "lower_bound_log_radius"}
Json radius_to_json(const RadiusReport& r);
Json convergence_to_json(const ConvergenceReport& r);
/// {"q": "rational", "coefficients": [{"k": [..], "poly": "..."}], "eta_norm_valuation"}
Json sweep_row_to_json(const SweepRow& row);
Json coordinate_report_to_json(const CoordinateReport& r);
Json contractivity_to_json(const ContractivityReport& r);
Json integrability_to_json(const IntegrabilityReport& r);
Json de_rham_to_json(const DeRhamReport& r);
Json symmetry_to_json(const SymmetryReport& r);
Json confluence_pair_to_json(const ConfluencePair& p);
Json isometry_to_json(const IsometryReport& r);

}  // namespace twistcalc
