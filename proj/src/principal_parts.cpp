#include "twistcalc/principal_parts.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "twistcalc/errors.hpp"

namespace twistcalc {

// ---------------------------------------------------------------------------
// XiPoly

XiPoly XiPoly::constant(const Poly& a) {
  XiPoly p(a.nvars());
  p.add_term(Exponent(a.nvars(), 0), a);
  return p;
}

int XiPoly::xi_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

Poly XiPoly::coefficient(const Exponent& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Poly(dim_) : it->second;
}

void XiPoly::add_term(const Exponent& k, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

XiPoly& XiPoly::operator+=(const XiPoly& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

XiPoly& XiPoly::operator-=(const XiPoly& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

XiPoly operator*(const XiPoly& a, const XiPoly& b) {
  XiPoly r(a.dim_);
  Exponent k(a.dim_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      r.add_term(k, ca * cb);
    }
  }
  return r;
}

XiPoly operator*(const Poly& a, const XiPoly& b) {
  XiPoly r(b.dim_);
  for (const auto& [k, c] : b.terms_) r.add_term(k, a * c);
  return r;
}

std::string to_string(const XiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [k, c] = *it;
    if (!first) os << " + ";
    first = false;
    bool constant = total_degree(k) == 0;
    if (constant) {
      os << to_string(c);
      continue;
    }
    if (!(c == Poly(c.nvars(), Scalar(1)))) os << '(' << to_string(c) << ")*";
    bool wrote = false;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      if (wrote) os << '*';
      os << "xi" << (i + 1);
      if (k[i] > 1) os << '^' << k[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Jet / BiJet

Poly Jet::coefficient(const Exponent& k) const {
  auto it = coefficients.find(k);
  return it == coefficients.end() ? Poly(spec->dim()) : it->second;
}

void Jet::add(const Exponent& k, const Poly& c) {
  if (c.is_zero() || total_degree(k) > order) return;
  auto [it, inserted] = coefficients.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coefficients.erase(it);
  }
}

bool Jet::operator==(const Jet& other) const {
  return order == other.order && *spec == *other.spec && coefficients == other.coefficients;
}

Poly BiJet::coefficient(const Exponent& k, const Exponent& kprime) const {
  auto it = coefficients.find({k, kprime});
  return it == coefficients.end() ? Poly(spec->dim()) : it->second;
}

void BiJet::add(const Exponent& k, const Exponent& kprime, const Poly& c) {
  if (c.is_zero() || total_degree(k) > left_order || total_degree(kprime) > right_order) {
    return;
  }
  auto [it, inserted] = coefficients.try_emplace({k, kprime}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coefficients.erase(it);
  }
}

bool BiJet::operator==(const BiJet& other) const {
  return left_order == other.left_order && right_order == other.right_order &&
         *spec == *other.spec && coefficients == other.coefficients;
}

// ---------------------------------------------------------------------------
// BasisTables

BasisTables::BasisTables(const TwistSpec& spec) : spec_(spec), vars_(spec.dim()) {}

const Poly& BasisTables::sigma_iterate(std::size_t var, unsigned j) {
  auto& t = vars_.at(var);
  if (t.sigma.empty()) t.sigma.push_back(Poly::variable(spec_.dim(), var));
  while (t.sigma.size() <= j) t.sigma.push_back(sigma_apply(t.sigma.back(), var, spec_));
  return t.sigma[j];
}

const Poly& BasisTables::gap(std::size_t var, unsigned j) {
  auto& t = vars_.at(var);
  while (t.gaps.size() <= j) {
    auto s = static_cast<unsigned>(t.gaps.size());
    t.gaps.push_back(Poly::variable(spec_.dim(), var) - sigma_iterate(var, s));
  }
  return t.gaps[j];
}

const std::vector<Poly>& BasisTables::twisted_expansion(std::size_t var, unsigned j) {
  auto& t = vars_.at(var);
  const std::size_t n = spec_.dim();
  if (t.expansions.empty()) t.expansions.push_back({Poly(n, Scalar(1))});
  while (t.expansions.size() <= j) {
    auto s = static_cast<unsigned>(t.expansions.size()) - 1;
    const auto& prev = t.expansions.back();
    const Poly& g = gap(var, s);
    std::vector<Poly> next(prev.size() + 1, Poly(n));
    for (std::size_t u = 0; u < prev.size(); ++u) {
      next[u + 1] += prev[u];
      next[u] += g * prev[u];
    }
    t.expansions.push_back(std::move(next));
  }
  return t.expansions[j];
}

const std::vector<Poly>& BasisTables::power_in_twisted(std::size_t var, unsigned b) {
  auto& t = vars_.at(var);
  const std::size_t n = spec_.dim();
  if (t.powers.empty()) t.powers.push_back({Poly(n, Scalar(1))});
  while (t.powers.size() <= b) {
    const auto& prev = t.powers.back();
    std::vector<Poly> next(prev.size() + 1, Poly(n));
    // xi * xi^{(j)} = xi^{(j+1)} - (x - sigma^j x) xi^{(j)}
    for (std::size_t j = 0; j < prev.size(); ++j) {
      next[j + 1] += prev[j];
      next[j] -= gap(var, static_cast<unsigned>(j)) * prev[j];
    }
    t.powers.push_back(std::move(next));
  }
  return t.powers[b];
}

// The twisted basis is the Newton basis in t = x + xi at the nodes
// sigma^m(x), so d^{[j]}(x^a) is the complete homogeneous polynomial
// h_{a-j}(x, sigma x, ..., sigma^j x). Only sigma^m with m <= j is needed,
// which keeps Mahler twists tractable at high degree.
const Poly& BasisTables::divided_power_of_power(std::size_t var, unsigned a, unsigned j) {
  if (j > a) throw std::invalid_argument("divided_power_of_power needs j <= a");
  auto& h = vars_.at(var).homogeneous;
  const std::size_t n = spec_.dim();
  const unsigned m = a - j;
  if (h.size() <= j) h.resize(j + 1);
  for (unsigned r = 0; r <= j; ++r) {
    auto& row = h[r];
    if (row.empty()) row.push_back(Poly(n, Scalar(1)));
    const Poly& node = sigma_iterate(var, r);
    while (row.size() <= m) {
      Poly next = node * row.back();
      if (r > 0) next += h[r - 1][row.size()];
      row.push_back(std::move(next));
    }
  }
  return h[j][m];
}

std::vector<Poly> BasisTables::divided_powers_of_power(std::size_t var, unsigned a,
                                                       unsigned limit) {
  std::vector<Poly> out;
  for (unsigned j = 0; j <= std::min(a, limit); ++j) out.push_back(divided_power_of_power(var, a, j));
  return out;
}

// ---------------------------------------------------------------------------
// Conversions

namespace {

// Enumerates index vectors k with k_i < rows[i]->size(), nonzero entries and
// |k| <= bound, calling emit(k, prod_i rows[i][k_i]).
void for_each_product(const std::vector<const std::vector<Poly>*>& rows, unsigned bound,
                      const Poly& seed,
                      const std::function<void(const Exponent&, const Poly&)>& emit) {
  const std::size_t d = rows.size();
  Exponent k(d, 0);
  std::function<void(std::size_t, unsigned, const Poly&)> rec =
      [&](std::size_t i, unsigned used, const Poly& acc) {
        if (i == d) {
          emit(k, acc);
          return;
        }
        const auto& row = *rows[i];
        for (std::size_t j = 0; j < row.size() && used + j <= bound; ++j) {
          if (row[j].is_zero()) continue;
          k[i] = static_cast<unsigned>(j);
          rec(i + 1, used + static_cast<unsigned>(j), acc * row[j]);
        }
        k[i] = 0;
      };
  rec(0, 0, seed);
}

void require_same_dim(const TwistSpec& spec, std::size_t dim) {
  if (spec.dim() != dim) {
    throw DimensionMismatchError("object dimension " + std::to_string(dim) +
                                 " does not match spec dimension " +
                                 std::to_string(spec.dim()));
  }
}

Jet convert_with_tables(const XiPoly& p, unsigned n, const SpecPtr& spec, BasisTables& tables) {
  Jet jet{spec, n, {}};
  const std::size_t d = spec->dim();
  std::vector<const std::vector<Poly>*> rows(d);
  for (const auto& [b, coeff] : p.terms()) {
    for (std::size_t i = 0; i < d; ++i) rows[i] = &tables.power_in_twisted(i, b[i]);
    for_each_product(rows, n, coeff, [&](const Exponent& k, const Poly& c) { jet.add(k, c); });
  }
  return jet;
}

XiPoly expand_with_tables(const Jet& jet, BasisTables& tables) {
  const std::size_t d = jet.spec->dim();
  XiPoly out(d);
  std::vector<const std::vector<Poly>*> rows(d);
  for (const auto& [k, coeff] : jet.coefficients) {
    for (std::size_t i = 0; i < d; ++i) rows[i] = &tables.twisted_expansion(i, k[i]);
    for_each_product(rows, total_degree(k), coeff,
                     [&](const Exponent& t, const Poly& c) { out.add_term(t, c); });
  }
  return out;
}

Scalar binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Scalar(r);
}

}  // namespace

XiPoly twisted_basis_element(const Exponent& k, const TwistSpec& spec) {
  require_same_dim(spec, k.size());
  BasisTables tables(spec);
  XiPoly out(spec.dim());
  std::vector<const std::vector<Poly>*> rows(spec.dim());
  for (std::size_t i = 0; i < spec.dim(); ++i) rows[i] = &tables.twisted_expansion(i, k[i]);
  for_each_product(rows, total_degree(k), Poly(spec.dim(), Scalar(1)),
                   [&](const Exponent& t, const Poly& c) { out.add_term(t, c); });
  return out;
}

Jet to_twisted_basis(const XiPoly& p, unsigned n, const SpecPtr& spec) {
  require_same_dim(*spec, p.dim());
  BasisTables tables(*spec);
  return convert_with_tables(p, n, spec, tables);
}

XiPoly from_twisted_basis(const Jet& jet) {
  BasisTables tables(*jet.spec);
  return expand_with_tables(jet, tables);
}

XiPoly shift_substitute(const Poly& f) {
  const std::size_t d = f.nvars();
  XiPoly out(d);
  for (const auto& [a, c] : f.terms()) {
    std::vector<std::vector<std::pair<unsigned, Scalar>>> choices(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (unsigned b = 0; b <= a[i]; ++b) choices[i].emplace_back(b, binomial(a[i], b));
    }
    Exponent xi(d, 0), x(d, 0);
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t i, Scalar acc) {
      if (i == d) {
        out.add_term(xi, Poly::monomial(x, acc));
        return;
      }
      for (const auto& [b, binom] : choices[i]) {
        xi[i] = b;
        x[i] = a[i] - b;
        rec(i + 1, acc * binom);
      }
    };
    rec(0, c);
  }
  return out;
}

Jet taylor(const Poly& f, unsigned n, const SpecPtr& spec) {
  require_same_dim(*spec, f.nvars());
  BasisTables tables(*spec);
  Jet jet{spec, n, {}};
  const std::size_t d = spec->dim();
  std::vector<std::vector<Poly>> storage(d);
  std::vector<const std::vector<Poly>*> rows(d);
  for (const auto& [a, c] : f.terms()) {
    for (std::size_t i = 0; i < d; ++i) {
      storage[i] = tables.divided_powers_of_power(i, a[i], n);
      rows[i] = &storage[i];
    }
    for_each_product(rows, n, Poly(d, c), [&](const Exponent& k, const Poly& v) { jet.add(k, v); });
  }
  return jet;
}

Poly divided_power(const Poly& f, const Exponent& k, BasisTables& tables) {
  const std::size_t d = tables.spec().dim();
  require_same_dim(tables.spec(), f.nvars());
  Poly out(d);
  for (const auto& [a, c] : f.terms()) {
    if (!divides(k, a)) continue;
    Poly term(d, c);
    for (std::size_t i = 0; i < d && !term.is_zero(); ++i) {
      term = term * tables.divided_power_of_power(i, a[i], k[i]);
    }
    out += term;
  }
  return out;
}

Poly divided_power(const Poly& f, const Exponent& k, const TwistSpec& spec) {
  BasisTables tables(spec);
  return divided_power(f, k, tables);
}

Jet jet_multiply(const Jet& a, const Jet& b) {
  if (!(*a.spec == *b.spec) || a.order != b.order) {
    throw DimensionMismatchError("jet_multiply needs jets of the same spec and order");
  }
  BasisTables tables(*a.spec);
  XiPoly product = expand_with_tables(a, tables) * expand_with_tables(b, tables);
  return convert_with_tables(product, a.order, a.spec, tables);
}

BiJet comultiplication(const Jet& jet, unsigned n, unsigned m) {
  if (jet.order < n + m) {
    throw DimensionMismatchError("comultiplication needs a jet of order >= n + m");
  }
  const SpecPtr& spec = jet.spec;
  const std::size_t d = spec->dim();
  BasisTables tables(*spec);

  Jet reduced{spec, n + m, {}};
  for (const auto& [k, c] : jet.coefficients) reduced.add(k, c);
  XiPoly expanded = expand_with_tables(reduced, tables);

  // Substitute xi -> xi + xi' and group by the xi'-exponent.
  std::map<Exponent, XiPoly, GradedLexLess> by_right;
  for (const auto& [b, c] : expanded.terms()) {
    Exponent left(d), right(d);
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t i, Scalar acc) {
      if (i == d) {
        // No truncation here: xi'^b with |b| > m still has components on
        // xi'^{(k')} with |k'| <= m.
        auto [it, _] = by_right.try_emplace(right, XiPoly(d));
        it->second.add_term(left, c * acc);
        return;
      }
      for (unsigned r = 0; r <= b[i]; ++r) {
        right[i] = r;
        left[i] = b[i] - r;
        rec(i + 1, acc * binomial(b[i], r));
      }
    };
    rec(0, Scalar(1));
  }

  // Rewrite xi'^{b'} on the xi'^{(k')} basis. Its A-coefficients sit in the
  // right factor, so they move to the left factor through x -> x + xi.
  std::map<Exponent, XiPoly, GradedLexLess> by_right_basis;
  std::vector<const std::vector<Poly>*> rows(d);
  for (const auto& [bprime, q] : by_right) {
    for (std::size_t i = 0; i < d; ++i) rows[i] = &tables.power_in_twisted(i, bprime[i]);
    for_each_product(rows, m, Poly(d, Scalar(1)), [&](const Exponent& kprime, const Poly& g) {
      auto [it, _] = by_right_basis.try_emplace(kprime, XiPoly(d));
      it->second += shift_substitute(g) * q;
    });
  }

  BiJet out{spec, n, m, {}};
  for (const auto& [kprime, r] : by_right_basis) {
    Jet left = convert_with_tables(r, n, spec, tables);
    for (const auto& [k, c] : left.coefficients) out.add(k, kprime, c);
  }
  return out;
}

SymmetryReport symmetric_check(const Poly& f, unsigned n, unsigned m, const SpecPtr& spec) {
  BiJet lhs = comultiplication(taylor(f, n + m, spec), n, m);
  BiJet rhs{spec, n, m, {}};
  for (const auto& [kprime, a] : taylor(f, m, spec).coefficients) {
    for (const auto& [k, c] : taylor(a, n, spec).coefficients) rhs.add(k, kprime, c);
  }
  SymmetryReport report{true, n, m, std::nullopt};
  if (lhs == rhs) return report;
  report.symmetric = false;
  std::map<std::pair<Exponent, Exponent>, bool> keys;
  for (const auto& [key, c] : lhs.coefficients) keys[key] = true;
  for (const auto& [key, c] : rhs.coefficients) keys[key] = true;
  for (const auto& [key, unused] : keys) {
    if (!(lhs.coefficient(key.first, key.second) == rhs.coefficient(key.first, key.second))) {
      report.differing_index = key;
      break;
    }
  }
  return report;
}

Poly evaluate_pi(const Jet& jet, const Exponent& k) {
  const TwistSpec& spec = *jet.spec;
  const std::size_t d = spec.dim();
  require_same_dim(spec, k.size());
  if (total_degree(k) > jet.order) {
    throw std::invalid_argument("evaluate_pi needs |k| <= jet order");
  }
  BasisTables tables(spec);
  XiPoly expanded = expand_with_tables(jet, tables);
  std::vector<std::vector<Poly>> powers(d);
  for (std::size_t i = 0; i < d; ++i) {
    powers[i].push_back(Poly(d, Scalar(1)));
    powers[i].push_back(-tables.gap(i, k[i]));  // sigma^k(x) - x
  }
  Poly out(d);
  for (const auto& [b, c] : expanded.terms()) {
    Poly term = c;
    for (std::size_t i = 0; i < d; ++i) {
      while (powers[i].size() <= b[i]) powers[i].push_back(powers[i].back() * powers[i][1]);
      term = term * powers[i][b[i]];
    }
    out += term;
  }
  return out;
}

std::vector<std::size_t> classicality_mismatches(const Poly& f, const SpecPtr& spec) {
  std::vector<std::size_t> out;
  Jet jet = taylor(f, 1, spec);
  for (std::size_t i = 0; i < spec->dim(); ++i) {
    if (!(jet.coefficient(unit_exponent(spec->dim(), i)) == derivation(f, i, *spec))) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace twistcalc
