#include "twistcalc/connection.hpp"

#include <bit>
#include <tuple>

#include "twistcalc/errors.hpp"

namespace twistcalc {

namespace {

PolyMatrix zero_matrix(std::size_t dim, std::size_t rank) {
  return PolyMatrix(rank, std::vector<Poly>(rank, Poly(dim)));
}

PolyVector basis_vector(std::size_t dim, std::size_t rank, std::size_t j, const Poly& scale) {
  PolyVector v(rank, Poly(dim));
  v[j] = scale;
  return v;
}

bool is_zero_vector(const PolyVector& v) {
  for (const auto& p : v) {
    if (!p.is_zero()) return false;
  }
  return true;
}

// Sparse coordinates of a form on the basis x^a e_j (x) e_S.
using Coordinate = std::tuple<unsigned, std::size_t, Exponent>;
using SparseColumn = std::map<Coordinate, Scalar>;

SparseColumn coordinates(const ModuleForm& form, int& max_degree) {
  SparseColumn col;
  for (const auto& [s, v] : form) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      for (const auto& [e, c] : v[j].terms()) {
        col.emplace(Coordinate{s, j, e}, c);
        max_degree = std::max(max_degree, static_cast<int>(total_degree(e)));
      }
    }
  }
  return col;
}

// Incremental exact rank: pivots are kept with leading coefficient 1.
class RankAccumulator {
 public:
  void insert(SparseColumn col) {
    while (!col.empty()) {
      auto lead = col.begin();
      auto pivot = pivots_.find(lead->first);
      if (pivot == pivots_.end()) {
        Scalar inv = 1 / lead->second;
        for (auto& [key, c] : col) c *= inv;
        Coordinate key = lead->first;
        pivots_.emplace(std::move(key), std::move(col));
        return;
      }
      Scalar factor = lead->second;
      for (const auto& [key, c] : pivot->second) {
        auto [it, inserted] = col.try_emplace(key, 0);
        it->second -= factor * c;
        if (it->second == 0) col.erase(it);
      }
    }
  }
  std::size_t rank() const noexcept { return pivots_.size(); }

 private:
  std::map<Coordinate, SparseColumn> pivots_;
};

std::vector<unsigned> subsets_of_size(std::size_t dim, unsigned n) {
  std::vector<unsigned> out;
  for (unsigned s = 0; s < (1u << dim); ++s) {
    if (static_cast<unsigned>(std::popcount(s)) == n) out.push_back(s);
  }
  return out;
}

std::vector<ModuleForm> truncated_basis(const ConnectionModule& mod, unsigned n, unsigned bound) {
  const std::size_t d = mod.spec()->dim();
  std::vector<ModuleForm> basis;
  const auto monomials = monomials_up_to(d, bound);
  for (unsigned s : subsets_of_size(d, n)) {
    for (std::size_t j = 0; j < mod.rank(); ++j) {
      for (const auto& a : monomials) {
        basis.push_back(ModuleForm{{s, basis_vector(d, mod.rank(), j, Poly::monomial(a))}});
      }
    }
  }
  return basis;
}

}  // namespace

ConnectionModule::ConnectionModule(SpecPtr spec, std::size_t rank, std::vector<PolyMatrix> matrices)
    : spec_(std::move(spec)), rank_(rank), matrices_(std::move(matrices)) {
  if (matrices_.size() != spec_->dim()) {
    throw DimensionMismatchError("connection needs one matrix per variable");
  }
  for (const auto& m : matrices_) {
    if (m.size() != rank_) throw DimensionMismatchError("connection matrix has wrong row count");
    for (const auto& row : m) {
      if (row.size() != rank_) {
        throw DimensionMismatchError("connection matrix has wrong column count");
      }
      for (const auto& p : row) {
        if (p.nvars() != spec_->dim()) {
          throw DimensionMismatchError("connection entry has wrong number of variables");
        }
      }
    }
  }
}

ConnectionModule ConnectionModule::trivial(SpecPtr spec, std::size_t rank) {
  std::vector<PolyMatrix> m(spec->dim(), zero_matrix(spec->dim(), rank));
  return ConnectionModule(std::move(spec), rank, std::move(m));
}

int ConnectionModule::max_matrix_degree() const {
  int deg = -1;
  for (const auto& m : matrices_) {
    for (const auto& row : m) {
      for (const auto& p : row) deg = std::max(deg, p.total_degree());
    }
  }
  return deg;
}

PolyVector module_apply(const ConnectionModule& mod, std::size_t var, const PolyVector& v) {
  if (v.size() != mod.rank()) {
    throw DimensionMismatchError("vector length " + std::to_string(v.size()) +
                                 " does not match rank " + std::to_string(mod.rank()));
  }
  const TwistSpec& spec = *mod.spec();
  if (var >= spec.dim()) throw DimensionMismatchError("variable index out of range");
  const PolyMatrix& n = mod.matrix(var);
  PolyVector out(mod.rank(), Poly(spec.dim()));
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    out[j] += derivation(v[j], var, spec);
    Poly twisted = sigma_apply(v[j], var, spec);
    for (std::size_t k = 0; k < mod.rank(); ++k) {
      if (!n[k][j].is_zero()) out[k] += twisted * n[k][j];
    }
  }
  return out;
}

IntegrabilityReport integrability_check(const ConnectionModule& mod, unsigned degree_bound) {
  IntegrabilityReport report;
  report.degree_bound = degree_bound;
  const std::size_t d = mod.spec()->dim();
  for (const auto& a : monomials_up_to(d, degree_bound)) {
    for (std::size_t b = 0; b < mod.rank(); ++b) {
      PolyVector v = basis_vector(d, mod.rank(), b, Poly::monomial(a));
      std::vector<PolyVector> first;
      for (std::size_t i = 0; i < d; ++i) first.push_back(module_apply(mod, i, v));
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
          if (module_apply(mod, i, first[j]) != module_apply(mod, j, first[i])) {
            report.integrable = false;
            report.witness = IntegrabilityWitness{i, j, b, a};
            return report;
          }
        }
      }
    }
  }
  return report;
}

bool rank_one_integrable(const ConnectionModule& mod) {
  if (mod.rank() != 1) throw DimensionMismatchError("closed-form check needs rank 1");
  const TwistSpec& spec = *mod.spec();
  auto cross = [&](std::size_t i, std::size_t j) {
    const Poly& nj = mod.matrix(j)[0][0];
    return derivation(nj, i, spec) + sigma_apply(nj, i, spec) * mod.matrix(i)[0][0];
  };
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    for (std::size_t j = i + 1; j < spec.dim(); ++j) {
      if (!(cross(i, j) == cross(j, i))) return false;
    }
  }
  return true;
}

ConnectionModule certify_integrable(ConnectionModule mod, unsigned degree_bound) {
  auto report = integrability_check(mod, degree_bound);
  if (!report.integrable) {
    const auto& w = *report.witness;
    throw NonIntegrableError("d" + std::to_string(w.var_i + 1) + " and d" +
                             std::to_string(w.var_j + 1) + " do not commute on " +
                             to_string(Poly::monomial(w.monomial)) + "*e" +
                             std::to_string(w.basis + 1));
  }
  mod.integrable_ = true;
  return mod;
}

DerivationAction derivation_action(const ConnectionModule& mod) {
  return [mod](std::size_t var, const PolyVector& v) { return module_apply(mod, var, v); };
}

ConnectionModule connection_from_action(const SpecPtr& spec, std::size_t rank,
                                        const DerivationAction& action) {
  const std::size_t d = spec->dim();
  std::vector<PolyMatrix> matrices(d, zero_matrix(d, rank));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < rank; ++j) {
      PolyVector image = action(i, basis_vector(d, rank, j, Poly(d, Scalar(1))));
      if (image.size() != rank) throw DimensionMismatchError("action returned wrong length");
      for (std::size_t k = 0; k < rank; ++k) matrices[i][k][j] = image[k];
    }
  }
  return ConnectionModule(spec, rank, std::move(matrices));
}

ModuleForm de_rham_differential(const ConnectionModule& mod, unsigned n, const ModuleForm& form) {
  const std::size_t d = mod.spec()->dim();
  ModuleForm out;
  const bool negate = n % 2 == 1;
  for (const auto& [s, m] : form) {
    for (std::size_t i = 0; i < d; ++i) {
      const unsigned bit = 1u << i;
      if (s & bit) continue;
      // e_i ^ e_S = (-1)^{#{j in S : j < i}} e_{S u {i}}
      bool odd = (std::popcount(s & (bit - 1)) % 2 == 1) != negate;
      PolyVector dm = module_apply(mod, i, m);
      auto [it, inserted] = out.try_emplace(s | bit, PolyVector(mod.rank(), Poly(d)));
      for (std::size_t k = 0; k < dm.size(); ++k) {
        if (odd) {
          it->second[k] -= dm[k];
        } else {
          it->second[k] += dm[k];
        }
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = is_zero_vector(it->second) ? out.erase(it) : std::next(it);
  }
  return out;
}

DeRhamReport de_rham_dims(const ConnectionModule& mod, unsigned degree_bound) {
  certify_integrable(mod, degree_bound);
  const std::size_t d = mod.spec()->dim();
  DeRhamReport report;
  report.truncation = degree_bound;

  unsigned bound = degree_bound;
  std::size_t previous_rank = 0;
  for (unsigned n = 0; n <= d; ++n) {
    const auto basis = truncated_basis(mod, n, bound);
    RankAccumulator rank;
    int reached = -1;
    for (const auto& b : basis) {
      ModuleForm image = de_rham_differential(mod, n, b);
      if (image.empty()) continue;
      if (n + 1 < d && !de_rham_differential(mod, n + 1, image).empty()) {
        report.nabla_squared_zero = false;
      }
      rank.insert(coordinates(image, reached));
    }
    DeRhamDegree row;
    row.degree = n;
    row.truncation = bound;
    row.domain_dim = basis.size();
    row.image_rank = rank.rank();
    row.kernel = row.domain_dim - row.image_rank;
    row.cohomology = row.kernel - previous_rank;
    report.degrees.push_back(row);
    previous_rank = row.image_rank;
    if (reached >= 0) bound = static_cast<unsigned>(reached);
  }
  if (!report.nabla_squared_zero) {
    throw NonIntegrableError("nabla o nabla is nonzero on the truncated complex");
  }
  return report;
}

}  // namespace twistcalc
