#include "twistcalc/poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace twistcalc {

unsigned total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // Higher exponent on an earlier variable is the larger monomial.
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponent unit_exponent(std::size_t nvars, std::size_t var) {
  Exponent e(nvars, 0);
  e.at(var) = 1;
  return e;
}

namespace {

void enumerate_degree(std::size_t nvars, unsigned degree, std::size_t pos,
                      Exponent& current, std::vector<Exponent>& out) {
  if (pos + 1 == nvars) {
    current[pos] = degree;
    out.push_back(current);
    return;
  }
  for (unsigned a = degree + 1; a-- > 0;) {
    current[pos] = a;
    enumerate_degree(nvars, degree - a, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<Exponent> out;
  if (nvars == 0) {
    out.emplace_back();
    return out;
  }
  Exponent current(nvars, 0);
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    std::vector<Exponent> layer;
    enumerate_degree(nvars, deg, 0, current, layer);
    // enumerate_degree yields descending order within a layer.
    out.insert(out.end(), layer.rbegin(), layer.rend());
  }
  return out;
}

Poly::Poly(std::size_t nvars, const Scalar& c) : nvars_(nvars) {
  if (c != 0) terms_.emplace(Exponent(nvars, 0), c);
}

Poly Poly::variable(std::size_t nvars, std::size_t var) {
  return monomial(unit_exponent(nvars, var));
}

Poly Poly::monomial(Exponent e, const Scalar& c) {
  Poly p(e.size());
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && twistcalc::total_degree(terms_.begin()->first) == 0);
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(twistcalc::total_degree(terms_.rbegin()->first));
}

int Poly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

Scalar Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Poly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

void Poly::add_term(const Exponent& e, const Scalar& c) {
  if (c == 0) return;
  if (e.size() != nvars_) throw std::invalid_argument("exponent length mismatch");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_compatible(const Poly& other) const {
  if (nvars_ != other.nvars_) {
    throw std::invalid_argument("polynomials over different variable counts");
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

bool Poly::operator==(const Poly& other) const {
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(nvars_, Scalar(1));
  Poly base = *this;
  while (exponent != 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

Poly Poly::substitute(std::size_t var, const Poly& image) const {
  check_compatible(image);
  std::vector<Poly> powers{Poly(nvars_, Scalar(1))};
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    unsigned k = e[var];
    while (powers.size() <= k) powers.push_back(powers.back() * image);
    Exponent rest = e;
    rest[var] = 0;
    r += monomial(rest, c) * powers[k];
  }
  return r;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point size");
  Scalar sum = 0;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < nvars_; ++i) t *= power(point[i], e[i]);
    sum += t;
  }
  return sum;
}

std::string default_variable_name(std::size_t var) {
  return "x" + std::to_string(var + 1);
}

std::string to_string(const Poly& p, const VariableNamer& namer) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = total_degree(e) == 0;
    bool wrote = false;
    if (constant || mag != 1) {
      os << to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << namer(i);
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

bool divide_by_univariate(const Poly& f, const Poly& g, std::size_t var, Poly& quotient) {
  const std::size_t n = f.nvars();
  int m = g.degree_in(var);
  if (m < 0) throw std::invalid_argument("division by zero polynomial");
  std::vector<Scalar> gc(static_cast<std::size_t>(m) + 1, Scalar(0));
  for (const auto& [e, c] : g.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != var && e[i] != 0) {
        throw std::invalid_argument("divisor must be univariate");
      }
    }
    gc[e[var]] = c;
  }
  const Scalar& lead = gc[static_cast<std::size_t>(m)];

  // Remainder grouped by the power of x_var.
  std::map<unsigned, Poly> rem;
  for (const auto& [e, c] : f.terms()) {
    Exponent rest = e;
    rest[var] = 0;
    auto [it, _] = rem.try_emplace(e[var], Poly(n));
    it->second.add_term(rest, c);
  }
  quotient = Poly(n);
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    if (top->second.is_zero()) {
      rem.erase(top);
      continue;
    }
    if (static_cast<int>(top->first) < m) return false;
    unsigned shift = top->first - static_cast<unsigned>(m);
    Poly c = top->second * Scalar(1 / lead);
    for (const auto& [e, v] : c.terms()) {
      Exponent q = e;
      q[var] = shift;
      quotient.add_term(q, v);
    }
    for (int j = 0; j <= m; ++j) {
      if (gc[static_cast<std::size_t>(j)] == 0) continue;
      auto [it, _] = rem.try_emplace(shift + static_cast<unsigned>(j), Poly(n));
      it->second -= c * gc[static_cast<std::size_t>(j)];
    }
  }
  return true;
}

Poly partial_derivative(const Poly& f, std::size_t var) {
  Poly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

}  // namespace twistcalc
