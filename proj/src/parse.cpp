#include "twistcalc/parse.hpp"

#include <cctype>
#include <optional>

#include "twistcalc/errors.hpp"

namespace twistcalc {

namespace {

enum class Tok {
  kNumber, kVar, kDer, kDp, kLBracket, kRBracket, kComma, kLParen, kRParen,
  kQSuffix, kPlus, kMinus, kStar, kCaret, kEnd,
};

struct Token {
  Tok kind;
  int line;
  int column;
  std::string text;
  Scalar number;       // kNumber
  unsigned index = 0;  // kVar, kDer, kQSuffix (0: unspecified)
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t{Tok::kEnd, line_, col_, "", 0};
      if (pos_ >= s_.size()) {
        t.text = "end of input";
        out.push_back(t);
        return out;
      }
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = digits();
        if (peek() == '/') {
          advance();
          if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            throw ParseError("incomplete rational", line_, col_, "denominator digits");
          }
          std::string den = digits();
          if (den.find_first_not_of('0') == std::string::npos) {
            throw ParseError("zero denominator", t.line, t.column, "nonzero denominator");
          }
          num += "/" + den;
        }
        t.kind = Tok::kNumber;
        t.text = num;
        t.number = parse_scalar(num);
      } else if (c == 'x') {
        advance();
        t.kind = Tok::kVar;
        t.index = index_after(t, "variable index");
        t.text = "x" + std::to_string(t.index);
      } else if (c == 'd') {
        advance();
        if (peek() == 'p') {
          advance();
          t.kind = Tok::kDp;
          t.text = "dp";
        } else {
          t.kind = Tok::kDer;
          t.index = index_after(t, "derivation index or 'p'");
          t.text = "d" + std::to_string(t.index);
        }
      } else if (c == '_') {
        advance();
        if (peek() != 'q') throw ParseError("malformed q suffix", line_, col_, "'q'");
        advance();
        t.kind = Tok::kQSuffix;
        t.text = "_q";
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          t.index = index_after(t, "variable index");
          t.text += std::to_string(t.index);
        }
      } else {
        static constexpr std::pair<char, Tok> kSingles[] = {
            {'[', Tok::kLBracket}, {']', Tok::kRBracket}, {',', Tok::kComma},
            {'(', Tok::kLParen},   {')', Tok::kRParen},   {'+', Tok::kPlus},
            {'-', Tok::kMinus},    {'*', Tok::kStar},     {'^', Tok::kCaret},
        };
        bool found = false;
        for (const auto& [ch, kind] : kSingles) {
          if (c == ch) {
            t.kind = kind;
            t.text = std::string(1, c);
            found = true;
          }
        }
        if (!found) {
          throw ParseError(std::string("unexpected character '") + c + "'", line_, col_,
                           "a term");
        }
        advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  std::string digits() {
    std::string r;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      r += peek();
      advance();
    }
    return r;
  }

  unsigned index_after(const Token& t, const char* expected) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError("missing index after '" + std::string(s_.substr(
                           pos_ - (t.kind == Tok::kQSuffix ? 2 : 1), 1)) + "'",
                       line_, col_, expected);
    }
    int line = line_;
    int col = col_;
    std::string ds = digits();
    if (ds.size() > 6) throw ParseError("index too large", line, col, expected);
    unsigned v = static_cast<unsigned>(std::stoul(ds));
    if (v == 0) throw ParseError("indices start at 1", line, col, expected);
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// A parsed value: sum of words. Pure polynomial values are a single
// coefficient word (or empty for zero).
struct Value {
  std::vector<OperatorWord> words;
};

bool is_pure(const OperatorWord& w) {
  for (const auto& a : w.atoms) {
    if (!std::holds_alternative<CoeffAtom>(a)) return false;
  }
  return true;
}

bool is_pure(const Value& v) {
  for (const auto& w : v.words) {
    if (!is_pure(w)) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t nvars, const TwistSpec* spec)
      : toks_(std::move(tokens)), nvars_(nvars), spec_(spec) {}

  Value parse_all() {
    Value v = expr();
    if (cur().kind != Tok::kEnd) fail("unexpected '" + cur().text + "'", "'+', '-', '*', or end of input");
    return v;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const std::string& expected) const {
    throw ParseError(msg, cur().line, cur().column, expected);
  }

  Poly constant(const Scalar& c) const { return Poly(nvars_, c); }

  OperatorWord normalize(OperatorWord w) const {
    OperatorWord out;
    for (auto& a : w.atoms) {
      if (auto* c = std::get_if<CoeffAtom>(&a); c && !out.atoms.empty()) {
        if (auto* prev = std::get_if<CoeffAtom>(&out.atoms.back())) {
          prev->value = prev->value * c->value;
          continue;
        }
      }
      out.atoms.push_back(std::move(a));
    }
    for (const auto& a : out.atoms) {
      if (const auto* c = std::get_if<CoeffAtom>(&a); c && c->value.is_zero()) return {};
    }
    if (out.atoms.size() > 1) {
      std::erase_if(out.atoms, [&](const OperatorAtom& a) {
        const auto* c = std::get_if<CoeffAtom>(&a);
        return c && c->value == constant(1);
      });
    }
    return out;
  }

  Value collapse(Value v) const {
    std::vector<OperatorWord> words;
    for (auto& w : v.words) {
      auto n = normalize(std::move(w));
      if (!n.atoms.empty()) words.push_back(std::move(n));
    }
    v.words = std::move(words);
    if (v.words.size() > 1 && is_pure(v)) {
      Poly sum(nvars_);
      for (const auto& w : v.words) sum += std::get<CoeffAtom>(w.atoms[0]).value;
      v.words.clear();
      if (!sum.is_zero()) v.words.push_back(OperatorWord{{CoeffAtom{sum}}});
    }
    return v;
  }

  Value sum(Value a, Value b) const {
    for (auto& w : b.words) a.words.push_back(std::move(w));
    return collapse(std::move(a));
  }

  Value product(const Value& a, const Value& b) const {
    Value r;
    for (const auto& wa : a.words) {
      for (const auto& wb : b.words) {
        OperatorWord w = wa;
        w.atoms.insert(w.atoms.end(), wb.atoms.begin(), wb.atoms.end());
        r.words.push_back(std::move(w));
      }
    }
    return collapse(std::move(r));
  }

  Value scalar(const Scalar& c) const {
    return collapse(Value{{OperatorWord{{CoeffAtom{constant(c)}}}}});
  }

  Value expr() {
    Value v;
    bool negate = false;
    if (cur().kind == Tok::kMinus) {
      take();
      negate = true;
    }
    v = term();
    if (negate) v = product(scalar(-1), v);
    while (cur().kind == Tok::kPlus || cur().kind == Tok::kMinus) {
      bool minus = take().kind == Tok::kMinus;
      Value t = term();
      v = sum(std::move(v), minus ? product(scalar(-1), t) : t);
    }
    return v;
  }

  static bool starts_primary(Tok k) {
    return k == Tok::kNumber || k == Tok::kVar || k == Tok::kDer || k == Tok::kDp ||
           k == Tok::kLParen;
  }

  Value term() {
    Value v = power();
    for (;;) {
      if (cur().kind == Tok::kStar) {
        take();
        v = product(v, power());
      } else if (starts_primary(cur().kind)) {
        v = product(v, power());
      } else {
        return v;
      }
    }
  }

  Value power() {
    Value base = primary();
    if (cur().kind != Tok::kCaret) return base;
    take();
    if (cur().kind != Tok::kNumber || cur().number.get_den() != 1 || cur().number < 0) {
      fail("exponent must be a nonnegative integer", "integer exponent");
    }
    if (cur().number > 64) fail("exponent too large", "integer exponent <= 64");
    unsigned e = static_cast<unsigned>(cur().number.get_num().get_ui());
    take();
    Value r = scalar(1);
    for (unsigned i = 0; i < e; ++i) r = product(r, base);
    return r;
  }

  std::size_t variable_index(const Token& t) const {
    if (t.index > nvars_) {
      throw ParseError(t.text + " is out of range for dimension " + std::to_string(nvars_),
                       t.line, t.column, "x1..x" + std::to_string(nvars_));
    }
    return t.index - 1;
  }

  Value primary() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::kNumber: {
        Scalar c = take().number;
        return scalar(c);
      }
      case Tok::kVar: {
        Token v = take();
        return collapse(
            Value{{OperatorWord{{CoeffAtom{Poly::variable(nvars_, variable_index(v))}}}}});
      }
      case Tok::kDer: {
        Token v = take();
        require_operators(v);
        return Value{{OperatorWord{{DerivationAtom{variable_index(v)}}}}};
      }
      case Tok::kDp:
        return divided_power();
      case Tok::kLParen: {
        take();
        Value inner = expr();
        if (cur().kind != Tok::kRParen) fail("unbalanced parenthesis", "')'");
        take();
        if (cur().kind == Tok::kQSuffix) return q_integer_value(inner);
        return inner;
      }
      default:
        fail(t.kind == Tok::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'",
             "a number, variable, d<i>, dp[...] or '('");
    }
  }

  void require_operators(const Token& t) const {
    if (spec_ == nullptr) {
      throw ParseError("operator '" + t.text + "' in a polynomial", t.line, t.column,
                       "a polynomial term");
    }
  }

  Value divided_power() {
    Token dp = take();
    require_operators(dp);
    if (cur().kind != Tok::kLBracket) fail("missing '[' after dp", "'['");
    take();
    Exponent k;
    for (;;) {
      if (cur().kind != Tok::kNumber || cur().number.get_den() != 1 || cur().number < 0) {
        fail("divided-power index must be a nonnegative integer", "integer");
      }
      if (cur().number > 1000) fail("divided-power index too large", "integer <= 1000");
      k.push_back(static_cast<unsigned>(take().number.get_num().get_ui()));
      if (cur().kind == Tok::kComma) {
        take();
        continue;
      }
      if (cur().kind == Tok::kRBracket) break;
      fail("unexpected '" + cur().text + "' in index", "',' or ']'");
    }
    if (k.size() != nvars_) {
      throw ParseError("dp index has " + std::to_string(k.size()) + " entries, dimension is " +
                           std::to_string(nvars_),
                       cur().line, cur().column, std::to_string(nvars_) + " entries");
    }
    take();
    return Value{{OperatorWord{{DividedPowerAtom{k}}}}};
  }

  Value q_integer_value(const Value& inner) {
    Token suffix = take();
    require_operators(suffix);
    std::optional<Scalar> n;
    if (inner.words.empty()) {
      n = Scalar(0);
    } else if (inner.words.size() == 1 && is_pure(inner.words[0])) {
      const Poly& p = std::get<CoeffAtom>(inner.words[0].atoms[0]).value;
      if (p.is_constant()) n = p.constant_term();
    }
    if (!n || n->get_den() != 1 || *n < 0 || *n > 1000) {
      throw ParseError("q-integer needs a nonnegative integer", suffix.line, suffix.column,
                       "(n)_q with integer n");
    }
    Scalar q;
    if (suffix.index != 0) {
      std::size_t i = suffix.index - 1;
      if (i >= nvars_ || spec_->twist(i).kind() != TwistKind::kQ) {
        throw ParseError("x" + std::to_string(suffix.index) + " has no q-twist", suffix.line,
                         suffix.column, "index of a q-twisted variable");
      }
      q = spec_->twist(i).parameter();
    } else {
      std::optional<Scalar> common;
      for (const auto& tw : spec_->twists()) {
        if (tw.kind() != TwistKind::kQ) continue;
        if (common && *common != tw.parameter()) {
          throw ParseError("q is ambiguous: the q-twists differ", suffix.line, suffix.column,
                           "_q<i> selecting a variable");
        }
        common = tw.parameter();
      }
      if (!common) {
        throw ParseError("no q-twist in the configuration", suffix.line, suffix.column,
                         "a q-twisted variable");
      }
      q = *common;
    }
    return scalar(q_integer(static_cast<unsigned>(n->get_num().get_ui()), q));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
  const TwistSpec* spec_;
};

std::string atom_text(const OperatorAtom& a) {
  if (const auto* c = std::get_if<CoeffAtom>(&a)) {
    std::string s = to_string(c->value);
    return c->value.size() > 1 ? "(" + s + ")" : s;
  }
  if (const auto* d = std::get_if<DerivationAtom>(&a)) return "d" + std::to_string(d->var + 1);
  const auto& k = std::get<DividedPowerAtom>(a).index;
  std::string s = "dp[";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

// Splits a leading minus sign off a word's text.
std::pair<bool, std::string> signed_word(const OperatorWord& word) {
  bool negative = false;
  std::string out;
  for (std::size_t i = 0; i < word.atoms.size(); ++i) {
    std::string text = atom_text(word.atoms[i]);
    if (i == 0 && text.size() > 1 && text[0] == '-') {
      negative = true;
      text.erase(0, 1);
      if (text == "1" && word.atoms.size() > 1) continue;
    }
    if (!out.empty()) out += ' ';
    out += text;
  }
  return {negative, out};
}

}  // namespace

Poly parse_poly(std::string_view text, std::size_t nvars) {
  Parser parser(Lexer(text).run(), nvars, nullptr);
  Value v = parser.parse_all();
  Poly out(nvars);
  for (const auto& w : v.words) out += std::get<CoeffAtom>(w.atoms.at(0)).value;
  return out;
}

OperatorExpression parse_operator(std::string_view text, const TwistSpec& spec) {
  Parser parser(Lexer(text).run(), spec.dim(), &spec);
  return OperatorExpression{parser.parse_all().words};
}

std::string to_string(const OperatorWord& word) {
  auto [negative, body] = signed_word(word);
  return negative ? "-" + body : body;
}

std::string to_string(const OperatorExpression& expr) {
  if (expr.words.empty()) return "0";
  // A lone polynomial prints bare; inside sums it keeps its parentheses.
  if (expr.words.size() == 1 && is_pure(expr.words[0])) {
    return to_string(std::get<CoeffAtom>(expr.words[0].atoms[0]).value);
  }
  std::string out;
  for (std::size_t i = 0; i < expr.words.size(); ++i) {
    auto [negative, body] = signed_word(expr.words[i]);
    if (i == 0) {
      out = negative ? "-" + body : body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

}  // namespace twistcalc
