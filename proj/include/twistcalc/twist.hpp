#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistcalc/coefficients.hpp"
#include "twistcalc/poly.hpp"

namespace twistcalc {

enum class TwistKind { kQ, kShift, kMahler, kCustom, kIdentity };

/// The image s(x) of a single variable under its substitution endomorphism,
/// stored as univariate coefficients (index j holds the coefficient of x^j).
class VariableTwist {
 public:
  /// x -> q x, q != 0, 1.
  static VariableTwist q(const Scalar& q);
  /// x -> x + h, h != 0.
  static VariableTwist shift(const Scalar& h);
  /// x -> x^l, l >= 2.
  static VariableTwist mahler(unsigned l);
  /// Arbitrary univariate image; must differ from x.
  static VariableTwist custom(std::vector<Scalar> coefficients);
  /// x -> x. Only valid inside TwistSpec::identity.
  static VariableTwist identity();

  TwistKind kind() const noexcept { return kind_; }
  /// q for q-twists, h for shifts, l for Mahler.
  const Scalar& parameter() const noexcept { return parameter_; }
  const std::vector<Scalar>& coefficients() const noexcept { return coefficients_; }

  /// "q:6", "shift:5", "mahler:2", "custom:<poly in x<var+1>>", "identity".
  std::string to_string(std::size_t var) const;

  bool operator==(const VariableTwist&) const = default;

 private:
  VariableTwist(TwistKind kind, Scalar parameter, std::vector<Scalar> coefficients);

  TwistKind kind_;
  Scalar parameter_;
  std::vector<Scalar> coefficients_;
};

/// Polynomial algebra Q[x1..xd] with commuting transverse substitutions
/// sigma_i: x_i -> s_i(x_i), x_j -> x_j (j != i), and a norm context.
class TwistSpec {
 public:
  /// Throws InvalidTwistError if any variable uses the identity twist.
  TwistSpec(std::vector<VariableTwist> twists, NormContext norm);

  /// The identity twist in d variables; its derivations are d/dx_i.
  static TwistSpec identity(std::size_t dim, NormContext norm);

  static TwistSpec q_twist(std::vector<Scalar> qs, NormContext norm);

  std::size_t dim() const noexcept { return twists_.size(); }
  const VariableTwist& twist(std::size_t var) const { return twists_.at(var); }
  const std::vector<VariableTwist>& twists() const noexcept { return twists_; }
  const NormContext& norm() const noexcept { return norm_; }

  /// sigma_var(x_var) as a polynomial in dim() variables.
  const Poly& image(std::size_t var) const { return images_.at(var); }

  bool is_identity() const noexcept { return identity_; }
  /// True when every variable is a q-twist.
  bool all_q() const;

  bool operator==(const TwistSpec& other) const {
    return twists_ == other.twists_ && norm_ == other.norm_;
  }

 private:
  TwistSpec(std::vector<VariableTwist> twists, NormContext norm, bool identity);

  std::vector<VariableTwist> twists_;
  NormContext norm_;
  std::vector<Poly> images_;
  bool identity_ = false;
};

using SpecPtr = std::shared_ptr<const TwistSpec>;

inline SpecPtr make_spec(TwistSpec spec) {
  return std::make_shared<const TwistSpec>(std::move(spec));
}

// Ring endomorphisms and twisted derivations. Variable indices are 0-based.

Poly sigma_apply(const Poly& f, std::size_t var, const TwistSpec& spec);

/// Applies sigma_i exactly k_i times for every i.
Poly sigma_power_apply(const Poly& f, const Exponent& k, const TwistSpec& spec);

/// sigma_var^j(x_var).
Poly sigma_iterate_variable(const TwistSpec& spec, std::size_t var, unsigned j);

/// (sigma_i(f) - f) / (sigma_i(x_i) - x_i), computed by exact division. For
/// the identity spec this is d/dx_i. Throws IndivisibleError when the
/// quotient is not a polynomial.
Poly derivation(const Poly& f, std::size_t var, const TwistSpec& spec);

/// Minimum coefficient valuation (log of the Gauss norm); +inf for 0.
NormValue gauss_norm(const Poly& f, const NormContext& ctx);

struct ContractivityReport {
  bool contractive = true;
  std::optional<std::size_t> witness_var;
  std::optional<Exponent> witness_monomial;
};

/// Checks |sigma_i(m)| <= |m| in the Gauss norm for all monomials m of
/// degree <= max_degree and all i.
ContractivityReport contractivity_check(const TwistSpec& spec, const NormContext& ctx,
                                        unsigned max_degree);

/// Witness (var, n, k) with sigma^n(x_var) - sigma^k(x_var) failing the
/// tested property.
struct CoordinateWitness {
  std::size_t var;
  unsigned n;
  unsigned k;
};

struct VariableCoordinateStatus {
  bool kind = true;
  bool strong = true;
  bool leibniz = true;
  /// Largest degree up to which the Taylor coefficient at e_i agreed with
  /// the division-defined derivation on all monomials.
  int classical_checked_to_degree = 0;
  /// False for Mahler and custom images, where classicality is only
  /// observed, never assumed.
  bool classicality_asserted = true;
  std::optional<CoordinateWitness> kind_witness;
  std::optional<CoordinateWitness> strong_witness;
  std::optional<std::pair<Exponent, Exponent>> leibniz_witness;
};

struct CoordinateReport {
  unsigned bound = 0;
  std::vector<VariableCoordinateStatus> vars;

  bool all_kind() const;
  bool all_strong() const;
  bool all_leibniz() const;
};

/// Kind/strong coordinate tests for 0 <= k < n <= bound, the twisted
/// Leibniz rule on monomial pairs of degree <= bound, and agreement of the
/// Taylor coefficient at e_i with derivation() on monomials of degree <= bound.
CoordinateReport check_coordinates(const TwistSpec& spec, unsigned bound);

}  // namespace twistcalc
