#include "twistcalc/config.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "twistcalc/errors.hpp"
#include "twistcalc/parse.hpp"

namespace twistcalc {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

unsigned parse_count(const std::string& text, const std::string& key) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "' must be a nonnegative integer, got '" + text + "'");
  }
  return v;
}

// Values in the text format: integers, "strings" and ["string", ...].
struct RawValue {
  enum class Kind { kInteger, kString, kList } kind;
  std::string scalar;
  std::vector<std::string> list;
};

std::string parse_string_literal(std::string_view s, std::size_t& pos, int line) {
  if (pos >= s.size() || s[pos] != '"') {
    throw ConfigError("line " + std::to_string(line) + ": expected '\"'");
  }
  std::string out;
  for (++pos; pos < s.size(); ++pos) {
    if (s[pos] == '"') {
      ++pos;
      return out;
    }
    if (s[pos] == '\\') {
      throw ConfigError("line " + std::to_string(line) + ": escapes are not supported");
    }
    out += s[pos];
  }
  throw ConfigError("line " + std::to_string(line) + ": unterminated string");
}

void skip_blanks(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
}

void expect_rest_empty(std::string_view s, std::size_t pos, int line) {
  skip_blanks(s, pos);
  if (pos < s.size() && s[pos] != '#') {
    throw ConfigError("line " + std::to_string(line) + ": trailing characters");
  }
}

RawValue parse_raw_value(std::string_view s, int line) {
  std::size_t pos = 0;
  skip_blanks(s, pos);
  RawValue v;
  if (pos < s.size() && s[pos] == '"') {
    v.kind = RawValue::Kind::kString;
    v.scalar = parse_string_literal(s, pos, line);
  } else if (pos < s.size() && s[pos] == '[') {
    v.kind = RawValue::Kind::kList;
    ++pos;
    skip_blanks(s, pos);
    if (pos < s.size() && s[pos] == ']') {
      ++pos;
    } else {
      for (;;) {
        skip_blanks(s, pos);
        v.list.push_back(parse_string_literal(s, pos, line));
        skip_blanks(s, pos);
        if (pos < s.size() && s[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < s.size() && s[pos] == ']') {
          ++pos;
          break;
        }
        throw ConfigError("line " + std::to_string(line) + ": expected ',' or ']'");
      }
    }
  } else {
    v.kind = RawValue::Kind::kInteger;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    v.scalar = std::string(s.substr(start, pos - start));
    if (v.scalar.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": expected a value");
    }
  }
  expect_rest_empty(s, pos, line);
  return v;
}

NormContext parse_norm(const std::string& text) {
  if (text == "trivial") return NormContext::trivial();
  if (text.rfind("padic:", 0) == 0) {
    return NormContext::padic(parse_count(text.substr(6), "norm"));
  }
  throw ConfigError("norm must be \"trivial\" or \"padic:<prime>\", got '" + text + "'");
}

PolyMatrix parse_matrix(const std::vector<std::string>& entries, std::size_t rank,
                        std::size_t dim, const std::string& key) {
  if (entries.size() != rank * rank) {
    throw ConfigError("'" + key + "' needs " + std::to_string(rank * rank) + " entries, got " +
                      std::to_string(entries.size()));
  }
  PolyMatrix m(rank, std::vector<Poly>(rank, Poly(dim)));
  for (std::size_t r = 0; r < rank; ++r) {
    for (std::size_t c = 0; c < rank; ++c) m[r][c] = parse_poly(entries[r * rank + c], dim);
  }
  return m;
}

// Shared validation once the raw fields are known.
AlgebraConfig assemble(std::size_t dim, const std::vector<std::string>& twists,
                       const std::string& norm, unsigned truncation, unsigned order,
                       std::optional<std::size_t> rank,
                       const std::map<std::size_t, std::vector<std::string>>& nabla) {
  if (dim == 0) throw ConfigError("dim must be at least 1");
  if (dim > 16) throw ConfigError("dim must be at most 16");
  if (twists.size() != dim) {
    throw ConfigError("twist lists " + std::to_string(twists.size()) + " entries for dim " +
                      std::to_string(dim));
  }
  if (truncation == 0) throw ConfigError("truncation must be at least 1");
  if (order == 0) throw ConfigError("order must be at least 1");
  AlgebraConfig c;
  c.dim = dim;
  for (std::size_t i = 0; i < dim; ++i) c.twists.push_back(parse_twist(twists[i], i, dim));
  c.norm = parse_norm(norm);
  c.truncation = truncation;
  c.order = order;
  if (!rank && !nabla.empty()) throw ConfigError("nabla entries need a rank");
  if (rank) {
    ConnectionConfig conn;
    conn.rank = *rank;
    for (const auto& [i, entries] : nabla) {
      if (i == 0 || i > dim) {
        throw ConfigError("nabla." + std::to_string(i) + " is out of range for dim " +
                          std::to_string(dim));
      }
    }
    for (std::size_t i = 1; i <= dim; ++i) {
      auto it = nabla.find(i);
      std::vector<std::string> entries =
          it == nabla.end() ? std::vector<std::string>(conn.rank * conn.rank, "0") : it->second;
      conn.matrices.push_back(parse_matrix(entries, conn.rank, dim, "nabla." + std::to_string(i)));
    }
    c.connection = std::move(conn);
  }
  return c;
}

std::vector<std::string> twist_strings(const AlgebraConfig& c) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < c.twists.size(); ++i) out.push_back(c.twists[i].to_string(i));
  return out;
}

std::vector<std::string> matrix_strings(const PolyMatrix& m) {
  std::vector<std::string> out;
  for (const auto& row : m) {
    for (const auto& p : row) out.push_back(to_string(p));
  }
  return out;
}

std::string quoted_list(const std::vector<std::string>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", \"" : "\"") + items[i] + "\"";
  return s + "]";
}

}  // namespace

AlgebraConfig default_config() {
  AlgebraConfig c;
  c.twists = {VariableTwist::q(2)};
  return c;
}

VariableTwist parse_twist(std::string_view text, std::size_t var, std::size_t dim) {
  std::string t = trim(text);
  if (t == "identity") return VariableTwist::identity();
  auto colon = t.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("twist '" + t + "' must look like kind:value");
  }
  std::string kind = t.substr(0, colon);
  std::string value = trim(t.substr(colon + 1));
  try {
    if (kind == "q") return VariableTwist::q(parse_scalar(value));
    if (kind == "shift") return VariableTwist::shift(parse_scalar(value));
  } catch (const ParseError&) {
    throw;
  } catch (const UsageError&) {
    throw ConfigError("twist '" + t + "' needs a rational parameter");
  }
  if (kind == "mahler") return VariableTwist::mahler(parse_count(value, "mahler"));
  if (kind == "custom") {
    Poly p = parse_poly(value, dim);
    std::vector<Scalar> coeffs(static_cast<std::size_t>(std::max(p.total_degree(), 0)) + 1);
    for (const auto& [e, c] : p.terms()) {
      for (std::size_t j = 0; j < dim; ++j) {
        if (j != var && e[j] != 0) {
          throw ConfigError("custom twist of x" + std::to_string(var + 1) +
                            " may only involve x" + std::to_string(var + 1));
        }
      }
      coeffs[e[var]] = c;
    }
    return VariableTwist::custom(std::move(coeffs));
  }
  throw ConfigError("unknown twist kind '" + kind + "'");
}

AlgebraConfig parse_config(std::string_view text) {
  std::string body = trim(text);
  auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] == '{') {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    return config_from_json(j);
  }

  std::map<std::string, RawValue> values;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    RawValue value = parse_raw_value(std::string_view(stripped).substr(eq + 1), line_no);
    if (!values.emplace(key, std::move(value)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  auto take = [&](const std::string& key, RawValue::Kind kind) -> std::optional<RawValue> {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    if (it->second.kind != kind) throw ConfigError("'" + key + "' has the wrong type");
    RawValue v = std::move(it->second);
    values.erase(it);
    return v;
  };
  using K = RawValue::Kind;
  AlgebraConfig defaults = default_config();
  auto dim_v = take("dim", K::kInteger);
  std::size_t dim = dim_v ? parse_count(dim_v->scalar, "dim") : defaults.dim;
  auto twist_v = take("twist", K::kList);
  if (!twist_v) throw ConfigError("missing key 'twist'");
  auto norm_v = take("norm", K::kString);
  auto trunc_v = take("truncation", K::kInteger);
  auto order_v = take("order", K::kInteger);
  auto rank_v = take("rank", K::kInteger);
  std::map<std::size_t, std::vector<std::string>> nabla;
  for (auto it = values.begin(); it != values.end();) {
    if (it->first.rfind("nabla.", 0) == 0 && it->second.kind == K::kList) {
      nabla[parse_count(it->first.substr(6), it->first)] = it->second.list;
      it = values.erase(it);
    } else {
      ++it;
    }
  }
  if (!values.empty()) throw ConfigError("unknown key '" + values.begin()->first + "'");
  return assemble(dim, twist_v->list, norm_v ? norm_v->scalar : defaults.norm.to_string(),
                  trunc_v ? parse_count(trunc_v->scalar, "truncation") : defaults.truncation,
                  order_v ? parse_count(order_v->scalar, "order") : defaults.order,
                  rank_v ? std::optional<std::size_t>(parse_count(rank_v->scalar, "rank"))
                         : std::nullopt,
                  nabla);
}

AlgebraConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("JSON config must be an object");
  static const std::set<std::string> kKeys = {"dim",   "twist", "norm", "truncation",
                                              "order", "rank",  "nabla"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown key '" + key + "'");
  }
  auto count = [&](const char* key, unsigned fallback) -> unsigned {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_unsigned()) {
      throw ConfigError(std::string("'") + key + "' must be a nonnegative integer");
    }
    return j[key].get<unsigned>();
  };
  auto strings = [](const Json& v, const std::string& key) {
    if (!v.is_array()) throw ConfigError("'" + key + "' must be a list of strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string()) throw ConfigError("'" + key + "' must be a list of strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  };
  AlgebraConfig defaults = default_config();
  if (!j.contains("twist")) throw ConfigError("missing key 'twist'");
  std::string norm = defaults.norm.to_string();
  if (j.contains("norm")) {
    if (!j["norm"].is_string()) throw ConfigError("'norm' must be a string");
    norm = j["norm"].get<std::string>();
  }
  std::optional<std::size_t> rank;
  if (j.contains("rank")) rank = count("rank", 0);
  std::map<std::size_t, std::vector<std::string>> nabla;
  if (j.contains("nabla")) {
    if (!j["nabla"].is_array()) throw ConfigError("'nabla' must be a list of matrices");
    for (std::size_t i = 0; i < j["nabla"].size(); ++i) {
      nabla[i + 1] = strings(j["nabla"][i], "nabla");
    }
  }
  return assemble(count("dim", static_cast<unsigned>(defaults.dim)), strings(j["twist"], "twist"),
                  norm, count("truncation", defaults.truncation), count("order", defaults.order),
                  rank, nabla);
}

std::string serialize_config(const AlgebraConfig& c) {
  std::string s;
  s += "dim = " + std::to_string(c.dim) + "\n";
  s += "twist = " + quoted_list(twist_strings(c)) + "\n";
  s += "norm = \"" + c.norm.to_string() + "\"\n";
  s += "truncation = " + std::to_string(c.truncation) + "\n";
  s += "order = " + std::to_string(c.order) + "\n";
  if (c.connection) {
    s += "rank = " + std::to_string(c.connection->rank) + "\n";
    for (std::size_t i = 0; i < c.connection->matrices.size(); ++i) {
      s += "nabla." + std::to_string(i + 1) + " = " +
           quoted_list(matrix_strings(c.connection->matrices[i])) + "\n";
    }
  }
  return s;
}

Json config_to_json(const AlgebraConfig& c) {
  Json j;
  j["dim"] = c.dim;
  j["twist"] = twist_strings(c);
  j["norm"] = c.norm.to_string();
  j["truncation"] = c.truncation;
  j["order"] = c.order;
  if (c.connection) {
    j["rank"] = c.connection->rank;
    Json mats = Json::array();
    for (const auto& m : c.connection->matrices) mats.push_back(matrix_strings(m));
    j["nabla"] = mats;
  }
  return j;
}

SpecPtr build_spec(const AlgebraConfig& c) {
  bool any_identity = false;
  bool all_identity = true;
  for (const auto& t : c.twists) {
    bool id = t.kind() == TwistKind::kIdentity;
    any_identity = any_identity || id;
    all_identity = all_identity && id;
  }
  if (any_identity && all_identity) return make_spec(TwistSpec::identity(c.dim, c.norm));
  return make_spec(TwistSpec(c.twists, c.norm));
}

ConnectionModule build_connection(const AlgebraConfig& c, const SpecPtr& spec) {
  if (!c.connection) return ConnectionModule::trivial(spec, 1);
  return ConnectionModule(spec, c.connection->rank, c.connection->matrices);
}

}  // namespace twistcalc
