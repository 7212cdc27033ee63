#pragma once

#include <functional>
#include <string>
#include <vector>

#include "twistcalc/banach.hpp"
#include "twistcalc/operators.hpp"

namespace twistcalc {

/// A twisted operator and its classical counterpart (identity twist) with
/// the bounds used to relate them.
struct ConfluencePair {
  TwistedOperator source;
  TwistedOperator target;
  unsigned order_bound = 0;
  unsigned degree_bound = 0;
  /// True when the two actions agree on every monomial of degree
  /// <= order_bound + degree_bound. False means the exact image has order
  /// above order_bound and target is its truncation.
  bool exact = true;
};

/// Identity twist in the same dimension and norm context as spec.
SpecPtr classical_spec(const TwistSpec& spec);

/// Classical operator with the action of op, recovered up to order N.
ConfluencePair to_classical(const TwistedOperator& op, unsigned order_bound,
                            unsigned degree_bound);

/// Twisted operator for spec with the action of a classical operator.
ConfluencePair from_classical(const TwistedOperator& classical, const SpecPtr& spec,
                              unsigned order_bound, unsigned degree_bound);

struct SweepRow {
  Scalar q;
  TwistedOperator classical;
  /// Operator eta-norm of the classical image.
  NormValue eta_norm_valuation;
  bool exact = true;
};

using OperatorFamily = std::function<TwistedOperator(const Scalar& q)>;

/// Classical images of family(q) for each q, in input order.
std::vector<SweepRow> confluence_sweep(const OperatorFamily& family,
                                       const std::vector<Scalar>& qs, unsigned order_bound,
                                       unsigned degree_bound, const Scalar& ell);

struct IsometryReport {
  NormValue source_norm;
  NormValue target_norm;
  bool agree = false;
  /// Finite truncation only certifies agreement on the computed terms.
  std::string caveat;
};

/// Compares the operator eta-norms of the two sides of a pair.
IsometryReport isometry_witness(const ConfluencePair& pair, const EtaRadius& eta);

}  // namespace twistcalc
