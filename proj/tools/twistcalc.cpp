// twistcalc: batch front end for the twisted calculus library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "twistcalc/banach.hpp"
#include "twistcalc/config.hpp"
#include "twistcalc/confluence.hpp"
#include "twistcalc/connection.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/json_io.hpp"
#include "twistcalc/operators.hpp"
#include "twistcalc/parse.hpp"
#include "twistcalc/principal_parts.hpp"

namespace tc = twistcalc;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

struct Options {
  std::string config_path;
  std::string f;
  std::vector<std::string> exprs;
  std::optional<unsigned> n;
  std::optional<unsigned> m;
  std::string k;
  std::string eta;
  std::optional<unsigned> bound;
  std::string sweep;
  std::string out;
  bool json = false;
};

// Result of a command: the JSON document and its plain-text rendering.
struct Output {
  tc::Json json;
  std::string text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tc::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Session {
 public:
  explicit Session(const Options& opt)
      : opt_(opt),
        config_(opt.config_path.empty() ? tc::default_config()
                                        : tc::parse_config(read_file(opt.config_path))),
        spec_(tc::build_spec(config_)) {}

  Output check() {
    unsigned bound = opt_.bound.value_or(config_.truncation);
    Output o;
    auto coords = tc::check_coordinates(*spec_, bound);
    auto contract = tc::contractivity_check(*spec_, spec_->norm(), bound);
    auto rho = tc::rho_sigma(*spec_, spec_->norm());
    o.json["config"] = tc::config_to_json(config_);
    o.json["coordinates"] = tc::coordinate_report_to_json(coords);
    o.json["contractivity"] = tc::contractivity_to_json(contract);
    o.json["rho_sigma_valuation"] = rho.to_string();
    std::ostringstream t;
    t << std::boolalpha;
    t << "bound " << bound << "\n";
    for (std::size_t i = 0; i < coords.vars.size(); ++i) {
      const auto& v = coords.vars[i];
      t << "x" << i + 1 << " [" << spec_->twist(i).to_string(i) << "]: kind=" << v.kind
        << " strong=" << v.strong << " leibniz=" << v.leibniz
        << " classical_to_degree=" << v.classical_checked_to_degree
        << (v.classicality_asserted ? "" : " (classicality observed only)") << "\n";
    }
    t << "contractive: " << contract.contractive << "\n";
    t << "rho_sigma valuation: " << rho.to_string() << "\n";
    o.text = t.str();
    return o;
  }

  Output apply() {
    auto op = operator_from(single_expr());
    tc::Poly f = poly_from_f();
    tc::Poly r = tc::apply(op, f);
    Output o;
    o.json["operator"] = tc::to_string(op);
    o.json["f"] = tc::to_string(f);
    o.json["result"] = tc::to_string(r);
    o.text = tc::to_string(r) + "\n";
    return o;
  }

  Output compose() {
    if (opt_.exprs.size() < 2) throw tc::UsageError(tc::ErrorCode::kConfig, "compose needs at least two --expr");
    tc::TwistedOperator acc = operator_from(opt_.exprs.back());
    for (std::size_t i = opt_.exprs.size() - 1; i-- > 0;) {
      acc = tc::compose(operator_from(opt_.exprs[i]), acc);
    }
    Output o;
    o.json["factors"] = opt_.exprs;
    o.json["result"] = tc::operator_to_json(acc);
    o.text = tc::to_string(acc) + "\n";
    return o;
  }

  Output normalform() {
    const std::string& text = single_expr();
    auto expr = tc::parse_operator(text, *spec_);
    auto op = tc::normal_form(expr, spec_);
    Output o;
    o.json["input"] = tc::to_string(expr);
    o.json["normal_form"] = tc::operator_to_json(op);
    o.text = tc::to_string(op) + "\n";
    return o;
  }

  Output taylor() {
    tc::Poly f = poly_from_f();
    auto jet = tc::taylor(f, opt_.n.value_or(config_.order), spec_);
    Output o;
    o.json = tc::jet_to_json(jet);
    o.text = jet_text(jet);
    return o;
  }

  Output pi() {
    tc::Poly f = poly_from_f();
    tc::Exponent k = parse_index(opt_.k);
    unsigned n = opt_.n.value_or(tc::total_degree(k));
    if (n < tc::total_degree(k)) {
      throw tc::UsageError(tc::ErrorCode::kConfig, "--n must be at least |k|");
    }
    auto jet = tc::taylor(f, n, spec_);
    tc::Poly r = tc::evaluate_pi(jet, k);
    tc::Poly direct = tc::sigma_power_apply(f, k, *spec_);
    Output o;
    o.json["f"] = tc::to_string(f);
    o.json["k"] = tc::exponent_to_json(k);
    o.json["order"] = n;
    o.json["result"] = tc::to_string(r);
    o.json["matches_sigma_power"] = r == direct;
    o.text = tc::to_string(r) + "\n";
    return o;
  }

  Output radius() {
    tc::Poly f = poly_from_f();
    auto report = tc::radius_estimate(f, spec_, spec_->norm(), opt_.bound.value_or(config_.truncation));
    Output o;
    o.json = tc::radius_to_json(report);
    std::ostringstream t;
    t << std::boolalpha;
    t << "deg  min_valuation  evidence\n";
    for (const auto& row : report.rows) {
      t << row.degree << "  " << row.min_valuation.to_string() << "  "
        << (row.evidence ? tc::to_string(*row.evidence) : "-") << "\n";
    }
    t << "lower_bound_log_radius: "
      << (report.lower_bound_log_radius ? tc::to_string(*report.lower_bound_log_radius) : "-inf")
      << (report.exhausted ? " (all divided powers seen)" : "") << "\n";
    o.text = t.str();
    return o;
  }

  Output etanorm() {
    tc::EtaRadius eta(opt_.eta.empty() ? tc::Scalar(0) : tc::parse_scalar(opt_.eta), spec_->norm());
    Output o;
    o.json["eta_log"] = tc::to_string(eta.ell());
    o.json["rho_sigma_valuation"] = tc::rho_sigma(*spec_, spec_->norm()).to_string();
    std::ostringstream t;
    t << std::boolalpha;
    if (!opt_.exprs.empty()) {
      auto op = operator_from(single_expr());
      auto v = tc::operator_eta_norm(op, eta, spec_->norm());
      o.json["operator"] = tc::to_string(op);
      o.json["valuation"] = v.to_string();
      t << "operator eta-norm valuation: " << v.to_string() << "\n";
    } else {
      tc::Poly f = poly_from_f();
      unsigned n = opt_.n.value_or(config_.truncation);
      auto jet = tc::taylor(f, n, spec_);
      auto v = tc::eta_norm(jet, eta, spec_->norm());
      auto conv = tc::eta_convergence_check(jet, eta, spec_->norm());
      o.json["f"] = tc::to_string(f);
      o.json["order"] = n;
      o.json["valuation"] = v.to_string();
      o.json["convergence"] = tc::convergence_to_json(conv);
      t << "taylor eta-norm valuation: " << v.to_string() << "\n";
      t << "eta-convergent up to degree " << n << ": " << conv.convergent << "\n";
    }
    o.text = t.str();
    return o;
  }

  Output confluence() {
    unsigned n = opt_.n.value_or(config_.order);
    unsigned d = opt_.bound.value_or(config_.truncation);
    tc::Scalar ell = opt_.eta.empty() ? tc::Scalar(0) : tc::parse_scalar(opt_.eta);
    const std::string& text = single_expr();
    Output o;
    std::ostringstream t;
    t << std::boolalpha;
    if (!opt_.sweep.empty()) {
      std::vector<tc::Scalar> qs;
      for (const auto& item : split_csv(opt_.sweep)) qs.push_back(tc::parse_scalar(item));
      auto family = [&](const tc::Scalar& q) {
        auto spec = respec(q);
        return tc::normal_form(tc::parse_operator(text, *spec), spec);
      };
      auto rows = tc::confluence_sweep(family, qs, n, d, ell);
      o.json = tc::Json::array();
      for (const auto& row : rows) {
        o.json.push_back(tc::sweep_row_to_json(row));
        t << "q=" << tc::to_string(row.q) << "  " << tc::to_string(row.classical)
          << "  eta-norm valuation " << row.eta_norm_valuation.to_string()
          << (row.exact ? "" : "  (truncated)") << "\n";
      }
    } else {
      auto op = operator_from(text);
      auto pair = tc::to_classical(op, n, d);
      auto iso = tc::isometry_witness(pair, tc::EtaRadius(ell, spec_->norm()));
      o.json["pair"] = tc::confluence_pair_to_json(pair);
      o.json["isometry"] = tc::isometry_to_json(iso);
      t << "twisted:   " << tc::to_string(pair.source) << "\n";
      t << "classical: " << tc::to_string(pair.target)
        << (pair.exact ? "" : "  (truncated at order " + std::to_string(n) + ")") << "\n";
      t << "eta-norms: " << iso.source_norm.to_string() << " vs " << iso.target_norm.to_string()
        << (iso.agree ? " (agree; " : " (differ; ") << iso.caveat << ")\n";
    }
    o.text = t.str();
    return o;
  }

  Output derham() {
    unsigned bound = opt_.bound.value_or(config_.truncation);
    auto mod = tc::build_connection(config_, spec_);
    auto report = tc::de_rham_dims(mod, bound);
    Output o;
    o.json = tc::de_rham_to_json(report);
    std::ostringstream t;
    t << std::boolalpha;
    t << "at truncation " << bound << "\n";
    for (const auto& row : report.degrees) {
      t << "H^" << row.degree << " = " << row.cohomology << "  (dim " << row.domain_dim
        << ", kernel " << row.kernel << ", image rank " << row.image_rank
        << ", coefficient degree <= " << row.truncation << ")\n";
    }
    o.text = t.str();
    return o;
  }

  Output symcheck() {
    tc::Poly f = poly_from_f();
    unsigned n = opt_.n.value_or(1);
    unsigned m = opt_.m.value_or(1);
    auto report = tc::symmetric_check(f, n, m, spec_);
    Output o;
    o.json = tc::symmetry_to_json(report);
    o.text = std::string("symmetric (n=") + std::to_string(n) + ", m=" + std::to_string(m) +
             "): " + (report.symmetric ? "true" : "false") + "\n";
    return o;
  }

 private:
  const std::string& single_expr() const {
    if (opt_.exprs.size() != 1) throw tc::UsageError(tc::ErrorCode::kConfig, "expected exactly one --expr");
    return opt_.exprs.front();
  }

  tc::Poly poly_from_f() const {
    if (opt_.f.empty()) throw tc::UsageError(tc::ErrorCode::kConfig, "missing --f");
    return tc::parse_poly(opt_.f, spec_->dim());
  }

  tc::TwistedOperator operator_from(const std::string& text) const {
    return tc::normal_form(tc::parse_operator(text, *spec_), spec_);
  }

  static std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(' '));
      item.erase(item.find_last_not_of(' ') + 1);
      out.push_back(item);
    }
    return out;
  }

  tc::Exponent parse_index(const std::string& csv) const {
    if (csv.empty()) throw tc::UsageError(tc::ErrorCode::kConfig, "missing --k");
    tc::Exponent k;
    for (const auto& item : split_csv(csv)) {
      tc::Scalar v = tc::parse_scalar(item);
      if (v < 0 || v.get_den() != 1) {
        throw tc::UsageError(tc::ErrorCode::kConfig, "--k entries must be nonnegative integers");
      }
      k.push_back(static_cast<unsigned>(v.get_num().get_ui()));
    }
    if (k.size() != spec_->dim()) {
      throw tc::UsageError(tc::ErrorCode::kConfig, "--k needs " + std::to_string(spec_->dim()) + " entries");
    }
    return k;
  }

  // The configured spec with every q-twist parameter replaced by q.
  tc::SpecPtr respec(const tc::Scalar& q) const {
    std::vector<tc::VariableTwist> twists;
    bool any = false;
    for (const auto& t : spec_->twists()) {
      if (t.kind() == tc::TwistKind::kQ) {
        twists.push_back(tc::VariableTwist::q(q));
        any = true;
      } else {
        twists.push_back(t);
      }
    }
    if (!any) throw tc::UsageError(tc::ErrorCode::kConfig, "--sweep needs a q-twisted variable");
    return tc::make_spec(tc::TwistSpec(twists, spec_->norm()));
  }

  static std::string jet_text(const tc::Jet& jet) {
    std::ostringstream t;
    t << std::boolalpha;
    t << "order " << jet.order << "\n";
    for (const auto& [k, c] : jet.coefficients) {
      t << "[";
      for (std::size_t i = 0; i < k.size(); ++i) t << (i ? "," : "") << k[i];
      t << "]  " << tc::to_string(c) << "\n";
    }
    return t.str();
  }

  const Options& opt_;
  tc::AlgebraConfig config_;
  tc::SpecPtr spec_;
};

void emit(const Options& opt, const Output& out) {
  std::string body = opt.json ? out.json.dump(2) + "\n" : out.text;
  if (opt.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw tc::ConfigError("cannot write '" + opt.out + "'");
  f << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistcalc: exact twisted differential calculus"};
  app.require_subcommand(1);
  Options opt;

  struct Spec {
    const char* name;
    const char* help;
    Output (Session::*run)();
    const char* flags;  // subset of: f e n m k t b s
  };
  const Spec commands[] = {
      {"check", "coordinate, contractivity and x-radius report", &Session::check, "b"},
      {"apply", "apply an operator to a polynomial", &Session::apply, "fe"},
      {"compose", "compose operators (first --expr is applied last)", &Session::compose, "e"},
      {"normalform", "divided-power normal form of an operator", &Session::normalform, "e"},
      {"taylor", "twisted Taylor expansion of order n", &Session::taylor, "fn"},
      {"pi", "evaluate the Taylor jet at sigma^k", &Session::pi, "fkn"},
      {"radius", "bounded-degree radius evidence", &Session::radius, "fb"},
      {"etanorm", "eta-norm of a Taylor jet or operator", &Session::etanorm, "fent"},
      {"confluence", "classical image of a twisted operator", &Session::confluence, "enbts"},
      {"derham", "truncated de Rham ranks of the configured connection", &Session::derham, "b"},
      {"symcheck", "symmetric-coordinate check for f", &Session::symcheck, "fnm"},
  };

  Output (Session::*selected)() = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", opt.config_path, "algebra config (text or JSON)");
    sub->add_flag("--json", opt.json, "emit JSON");
    sub->add_option("--out", opt.out, "write output to this file");
    std::string flags = c.flags;
    if (flags.find('f') != std::string::npos) sub->add_option("--f", opt.f, "polynomial");
    if (flags.find('e') != std::string::npos) sub->add_option("--expr", opt.exprs, "operator expression");
    if (flags.find('n') != std::string::npos) sub->add_option("--n", opt.n, "order");
    if (flags.find('m') != std::string::npos) sub->add_option("--m", opt.m, "second order");
    if (flags.find('k') != std::string::npos) sub->add_option("--k", opt.k, "multi-index CSV");
    if (flags.find('t') != std::string::npos) sub->add_option("--eta", opt.eta, "eta as a log-valuation");
    if (flags.find('b') != std::string::npos) sub->add_option("--bound", opt.bound, "degree bound");
    if (flags.find('s') != std::string::npos) sub->add_option("--sweep", opt.sweep, "q values CSV");
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    Session session(opt);
    emit(opt, (session.*selected)());
    return 0;
  } catch (const tc::DomainError& e) {
    std::cerr << "twistcalc: domain error " << static_cast<int>(e.code()) << ": " << e.what() << "\n";
    return kExitDomain;
  } catch (const tc::UsageError& e) {
    std::cerr << "twistcalc: usage error " << static_cast<int>(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "twistcalc: usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}
