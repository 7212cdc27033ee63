#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistcalc/coefficients.hpp"
#include "twistcalc/operators.hpp"
#include "twistcalc/principal_parts.hpp"
#include "twistcalc/twist.hpp"

namespace twistcalc {

/// eta = p^{-ell} with ell >= 0; only ell = 0 in the trivial context.
class EtaRadius {
 public:
  /// Throws NormBoundViolation when ell < 0, or ell != 0 in a trivial context.
  EtaRadius(Scalar ell, const NormContext& ctx);

  const Scalar& ell() const noexcept { return ell_; }
  /// eta as a valuation.
  NormValue valuation() const { return NormValue(ell_); }

 private:
  Scalar ell_;
};

/// log of max_i |x_i - sigma_i(x_i)| in the Gauss norm; +inf for the
/// identity twist.
NormValue rho_sigma(const TwistSpec& spec, const NormContext& ctx);

/// rho of sigma^n = (sigma_1^n, ..., sigma_d^n).
NormValue rho_sigma_power(const TwistSpec& spec, unsigned n, const NormContext& ctx);

/// min_k v(z_k) + |k| ell over the monomial xi basis.
NormValue eta_norm(const XiPoly& series, const EtaRadius& eta, const NormContext& ctx);

/// Same sum over the twisted basis coefficients of a jet. When eta >= rho
/// (ell <= v(rho)) the monomial-basis value is computed as well and a
/// disagreement throws BasisNormMismatch.
NormValue eta_norm(const Jet& jet, const EtaRadius& eta, const NormContext& ctx);

/// min_k v(z_k) - |k| ell, the log of sup |z_k| / eta^{|k|}.
NormValue operator_eta_norm(const TwistedOperator& op, const EtaRadius& eta,
                            const NormContext& ctx);

struct RadiusRow {
  unsigned degree = 0;
  /// min over |k| = degree of v(d^{[k]} f).
  NormValue min_valuation;
  /// -min_valuation / degree; absent when every coefficient is zero.
  std::optional<Scalar> evidence;
};

struct RadiusReport {
  unsigned truncation = 0;
  std::vector<RadiusRow> rows;
  /// max over rows of the evidence; absent when every derivative of
  /// positive order vanishes (printed as "-inf").
  std::optional<Scalar> lower_bound_log_radius;
  /// True when D >= deg f, so every nonzero divided power was seen.
  bool exhausted = false;
};

RadiusReport radius_estimate(const Poly& f, const SpecPtr& spec, const NormContext& ctx,
                             unsigned truncation);

struct ConvergenceRow {
  unsigned degree = 0;
  /// min_{|k| = degree} v(coefficient) + degree * ell.
  NormValue value;
};

struct ConvergenceReport {
  bool convergent = true;
  std::vector<ConvergenceRow> table;
};

/// Passes when the tail of the table (degrees >= ceil(D/2)) stays at or
/// above the minimum of the head, i.e. the weighted valuations are bounded
/// below and do not fall away in the tail up to D.
ConvergenceReport eta_convergence_check(const Poly& f, const EtaRadius& eta,
                                        const SpecPtr& spec, const NormContext& ctx,
                                        unsigned truncation);

/// The same test on an explicit jet, whose order is the truncation.
ConvergenceReport eta_convergence_check(const Jet& jet, const EtaRadius& eta,
                                        const NormContext& ctx);

}  // namespace twistcalc
