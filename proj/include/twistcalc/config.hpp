#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "twistcalc/coefficients.hpp"
#include "twistcalc/connection.hpp"
#include "twistcalc/twist.hpp"

namespace twistcalc {

/// Optional connection section: rank and one row-major matrix per variable.
struct ConnectionConfig {
  std::size_t rank = 1;
  std::vector<PolyMatrix> matrices;
  bool operator==(const ConnectionConfig&) const = default;
};

/// Everything a CLI run needs to build the algebra.
///
/// Text form, one "key = value" per line, '#' starts a comment:
///
///   dim = 2
///   twist = ["q:6", "shift:5"]     # q:R | shift:R | mahler:L | custom:<poly> | identity
///   norm = "padic:5"               # or "trivial"
///   truncation = 6
///   order = 4
///   rank = 1                       # optional connection
///   nabla.1 = ["0"]                # row-major rank x rank entries
///   nabla.2 = ["x2"]
///
/// The JSON form uses the same keys with "nabla" as a list of matrices.
struct AlgebraConfig {
  std::size_t dim = 1;
  std::vector<VariableTwist> twists;
  NormContext norm = NormContext::trivial();
  unsigned truncation = 6;
  unsigned order = 4;
  std::optional<ConnectionConfig> connection;

  bool operator==(const AlgebraConfig&) const = default;
};

/// dim 1, q = 2, trivial norm, truncation 6, order 4.
AlgebraConfig default_config();

/// Parses a twist string for variable var (0-based).
VariableTwist parse_twist(std::string_view text, std::size_t var, std::size_t dim);

/// Text or JSON (detected by a leading '{'). Throws ConfigError on
/// malformed input; invalid twists and primes raise their domain errors.
AlgebraConfig parse_config(std::string_view text);
AlgebraConfig config_from_json(const nlohmann::ordered_json& j);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const AlgebraConfig& config);
nlohmann::ordered_json config_to_json(const AlgebraConfig& config);

SpecPtr build_spec(const AlgebraConfig& config);
/// The configured connection, or the trivial rank-1 module.
ConnectionModule build_connection(const AlgebraConfig& config, const SpecPtr& spec);

}  // namespace twistcalc
