#include "twistcalc/confluence.hpp"

#include "twistcalc/errors.hpp"

namespace twistcalc {

namespace {

bool actions_agree(const TwistedOperator& a, const TwistedOperator& b, unsigned max_degree) {
  for (const auto& e : monomials_up_to(a.spec()->dim(), max_degree)) {
    Poly m = Poly::monomial(e);
    if (!(apply(a, m) == apply(b, m))) return false;
  }
  return true;
}

ConfluencePair transport(const TwistedOperator& op, const SpecPtr& target_spec,
                         unsigned order_bound, unsigned degree_bound) {
  if (op.spec()->dim() != target_spec->dim()) {
    throw DimensionMismatchError("source and target dimensions differ");
  }
  ConfluencePair pair;
  pair.source = op;
  pair.order_bound = order_bound;
  pair.degree_bound = degree_bound;
  pair.target = recover_from_action(
      target_spec, [&](const Poly& f) { return apply(op, f); }, order_bound, degree_bound,
      RecoveryMode::kTruncate);
  pair.exact = actions_agree(op, pair.target, order_bound + degree_bound);
  return pair;
}

}  // namespace

SpecPtr classical_spec(const TwistSpec& spec) {
  return make_spec(TwistSpec::identity(spec.dim(), spec.norm()));
}

ConfluencePair to_classical(const TwistedOperator& op, unsigned order_bound,
                            unsigned degree_bound) {
  return transport(op, classical_spec(*op.spec()), order_bound, degree_bound);
}

ConfluencePair from_classical(const TwistedOperator& classical, const SpecPtr& spec,
                              unsigned order_bound, unsigned degree_bound) {
  if (!classical.spec()->is_identity()) {
    throw InvalidTwistError("from_classical expects an operator for the identity twist");
  }
  ConfluencePair pair = transport(classical, spec, order_bound, degree_bound);
  // Keep the twisted side as source so pairs read the same in both directions.
  std::swap(pair.source, pair.target);
  return pair;
}

std::vector<SweepRow> confluence_sweep(const OperatorFamily& family,
                                       const std::vector<Scalar>& qs, unsigned order_bound,
                                       unsigned degree_bound, const Scalar& ell) {
  std::vector<SweepRow> rows;
  for (const auto& q : qs) {
    TwistedOperator op = family(q);
    const NormContext& ctx = op.spec()->norm();
    ConfluencePair pair = to_classical(op, order_bound, degree_bound);
    SweepRow row;
    row.q = q;
    row.eta_norm_valuation = operator_eta_norm(pair.target, EtaRadius(ell, ctx), ctx);
    row.classical = std::move(pair.target);
    row.exact = pair.exact;
    rows.push_back(std::move(row));
  }
  return rows;
}

IsometryReport isometry_witness(const ConfluencePair& pair, const EtaRadius& eta) {
  const NormContext& ctx = pair.source.spec()->norm();
  IsometryReport report;
  report.source_norm = operator_eta_norm(pair.source, eta, ctx);
  report.target_norm = operator_eta_norm(pair.target, eta, ctx);
  report.agree = report.source_norm == report.target_norm;
  report.caveat = "norms compared on terms of order <= " + std::to_string(pair.order_bound) +
                  (pair.exact ? "" : "; the classical side is truncated");
  return report;
}

}  // namespace twistcalc
