#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "twistcalc/poly.hpp"
#include "twistcalc/twist.hpp"

namespace twistcalc {

using PolyVector = std::vector<Poly>;
/// Row-major r x r matrix: m[k][j] is the entry in row k, column j.
using PolyMatrix = std::vector<std::vector<Poly>>;

/// Free module A^r with twisted connection d_i(e_j) = sum_k (N_i)_{kj} e_k.
class ConnectionModule {
 public:
  /// One matrix per variable. Throws DimensionMismatchError on shape errors.
  ConnectionModule(SpecPtr spec, std::size_t rank, std::vector<PolyMatrix> matrices);

  /// All N_i = 0.
  static ConnectionModule trivial(SpecPtr spec, std::size_t rank);

  const SpecPtr& spec() const noexcept { return spec_; }
  std::size_t rank() const noexcept { return rank_; }
  const PolyMatrix& matrix(std::size_t var) const { return matrices_.at(var); }
  const std::vector<PolyMatrix>& matrices() const noexcept { return matrices_; }
  /// max total degree over all matrix entries; -1 if every entry is zero.
  int max_matrix_degree() const;

  /// Set only by certify_integrable().
  bool integrable() const noexcept { return integrable_; }

  bool operator==(const ConnectionModule& other) const {
    return *spec_ == *other.spec_ && rank_ == other.rank_ && matrices_ == other.matrices_;
  }

 private:
  friend ConnectionModule certify_integrable(ConnectionModule mod, unsigned degree_bound);

  SpecPtr spec_;
  std::size_t rank_;
  std::vector<PolyMatrix> matrices_;
  bool integrable_ = false;
};

/// d_i(sum_j v_j e_j) = sum_j d_i(v_j) e_j + sum_j sigma_i(v_j) N_i e_j.
PolyVector module_apply(const ConnectionModule& mod, std::size_t var, const PolyVector& v);

struct IntegrabilityWitness {
  std::size_t var_i;
  std::size_t var_j;
  std::size_t basis;
  Exponent monomial;
};

struct IntegrabilityReport {
  bool integrable = true;
  unsigned degree_bound = 0;
  std::optional<IntegrabilityWitness> witness;
};

/// Checks d_i d_j = d_j d_i on x^a e_j for all basis vectors and |a| <= D.
IntegrabilityReport integrability_check(const ConnectionModule& mod, unsigned degree_bound);

/// Rank-one closed form d_i(N_j) + sigma_i(N_j) N_i = d_j(N_i) + sigma_j(N_i) N_j.
/// Throws DimensionMismatchError for other ranks.
bool rank_one_integrable(const ConnectionModule& mod);

/// Copy of mod with the integrable flag set; NonIntegrableError if the
/// check fails at degree_bound.
ConnectionModule certify_integrable(ConnectionModule mod, unsigned degree_bound);

// Connection <-> derivation action dictionary on free modules.

using DerivationAction = std::function<PolyVector(std::size_t var, const PolyVector&)>;

/// The action of the derivations d_i on A^r determined by mod.
DerivationAction derivation_action(const ConnectionModule& mod);

/// Reads the matrices back from an action: column j of N_i is d_i(e_j).
ConnectionModule connection_from_action(const SpecPtr& spec, std::size_t rank,
                                        const DerivationAction& action);

// Truncated de Rham complex M (x) Lambda^n(Omega^1).

struct DeRhamDegree {
  unsigned degree = 0;
  /// Coefficient degree bound of the truncated space K^n.
  unsigned truncation = 0;
  std::size_t domain_dim = 0;
  /// dim ker(nabla_n) on K^n.
  std::size_t kernel = 0;
  /// rank nabla_n : K^n -> K^{n+1}.
  std::size_t image_rank = 0;
  /// kernel - rank nabla_{n-1}.
  std::size_t cohomology = 0;
};

struct DeRhamReport {
  unsigned truncation = 0;
  std::vector<DeRhamDegree> degrees;
  bool nabla_squared_zero = true;
};

/// Differential form with module coefficients: subset bitmask S -> vector.
using ModuleForm = std::map<unsigned, PolyVector>;

/// nabla_n(m (x) e_S) = (-1)^n sum_i d_i(m) (x) e_i ^ e_S.
ModuleForm de_rham_differential(const ConnectionModule& mod, unsigned n, const ModuleForm& form);

/// K^0 holds coefficients of degree <= D; K^{n+1} holds degrees up to the
/// largest degree reached by nabla_n on K^n (K^n's bound if nabla_n is zero
/// there). Throws NonIntegrableError if the module fails integrability at D
/// or nabla o nabla is nonzero on the truncation.
DeRhamReport de_rham_dims(const ConnectionModule& mod, unsigned degree_bound);

}  // namespace twistcalc
