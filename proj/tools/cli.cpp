#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>

#include "cubesaw/critical.hpp"
#include "cubesaw/errors.hpp"
#include "cubesaw/expansion.hpp"
#include "cubesaw/lace.hpp"
#include "cubesaw/parallel.hpp"
#include "cubesaw/saw.hpp"
#include "verify.hpp"

#ifndef CUBESAW_VERSION
#define CUBESAW_VERSION "0.0.0"
#endif

namespace cubesaw::cli {

using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Table = std::vector<std::vector<std::string>>;

struct Output {
  ordered_json result;
  std::vector<std::string> header;
  Table rows;
  int exit = kOk;
};

std::string big(const BigInt& v) { return v.get_str(); }

ordered_json strings(std::span<const BigInt> v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

// Expansion coefficients are small; they are emitted as JSON integers and
// fall back to strings only when a double could not hold them exactly.
ordered_json integers(std::span<const BigInt> v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) {
    if (abs(x) < BigInt(1) << 53) {
      a.push_back(x.get_si());
    } else {
      a.push_back(big(x));
    }
  }
  return a;
}

int require(const std::optional<int>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

EnumerationOptions enumeration_options(const RunConfig& c) {
  EnumerationOptions o;
  if (c.budget) o.budget.max_nodes = *c.budget;
  return o;
}

int steps_or_full(const RunConfig& c, Dim dim) { return c.max_steps.value_or(full_steps(dim)); }

void add_row(Output& o, std::vector<std::string> row) { o.rows.push_back(std::move(row)); }

void key_values(Output& o, const ordered_json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix + it.key();
    if (it->is_object()) {
      key_values(o, *it, key + ".");
    } else {
      add_row(o, {key, it->is_string() ? it->get<std::string>() : it->dump()});
    }
  }
}

// ---------------------------------------------------------------------------

Output do_enumerate(const RunConfig& c) {
  const Dim dim(require(c.n_dim, "--n-dim"));
  const int n_max = steps_or_full(c, dim);
  const SawProfile profile = count_saw_by_endpoint(dim, n_max, enumeration_options(c));
  const SawSeries series = totals(profile);
  Output o;
  o.result["n_dim"] = dim.n();
  o.result["max_steps"] = n_max;
  o.result["counts"] = strings(series.coefficients());
  ordered_json rows = ordered_json::array();
  for (int n = 0; n <= n_max; ++n) rows.push_back(strings(profile.row(n)));
  o.result["endpoint_counts_by_weight"] = rows;
  if (c.z) {
    const Rational z = parse_rational(*c.z);
    if (c.scalar_mode == "exact") {
      o.result["susceptibility"] = to_string(susceptibility(series, z));
    } else {
      o.result["susceptibility"] = static_cast<double>(susceptibility(series, to_long_double(z)));
    }
  }
  o.header = {"n", "weight", "count"};
  for (int n = 0; n <= n_max; ++n) {
    for (int w = 0; w <= dim.n(); ++w) add_row(o, {std::to_string(n), std::to_string(w), big(profile.entry(n, w))});
  }
  return o;
}

Output do_critical(const RunConfig& c) {
  const Dim dim(require(c.n_dim, "--n-dim"));
  const Rational lambda = parse_rational(c.lambda);
  const Rational p = parse_rational(c.p);
  const int n_max = steps_or_full(c, dim);
  const SawProfile profile = count_saw_by_endpoint(dim, n_max, enumeration_options(c));
  const SawSeries series = totals(profile);
  const CriticalPoint cp = solve_critical(series, lambda);
  const Linearization lin = linearize(series, cp, p);

  Output o;
  auto& r = o.result;
  r["n_dim"] = dim.n();
  r["max_steps"] = n_max;
  r["truncated"] = !series.is_full();
  r["lambda"] = to_string(lambda);
  r["target_chi"] = static_cast<double>(cp.target);
  r["z_n"] = static_cast<double>(cp.z_n);
  r["mu_n"] = static_cast<double>(cp.mu_n);
  r["relative_residual"] = static_cast<double>(cp.residual);
  r["bracket"] = {static_cast<double>(cp.bracket_lo), static_cast<double>(cp.bracket_hi)};
  r["p"] = to_string(p);
  r["zeta_p"] = static_cast<double>(lin.zeta_p);
  r["linearization"] = {{"F", static_cast<double>(lin.F_at)},
                        {"F_prime", static_cast<double>(lin.F_prime_at)},
                        {"alpha", static_cast<double>(lin.alpha_n)},
                        {"beta", static_cast<double>(lin.beta_n)},
                        {"amplitude", static_cast<double>(lin.amplitude)},
                        {"growth_ratio", static_cast<double>(lin.growth_ratio)}};
  if (dim.n() <= 6) {
    // Rational stand-in for z_N, rounded down so that z stays in [0, z_N].
    const Rational z = floor_rational(cp.z_n, std::uint64_t{1} << 40);
    const BootstrapValues b = bootstrap_diagnostics(profile, z, cp.z_n);
    auto value = [](const Rational& q) { return static_cast<double>(to_long_double(q)); };
    r["bootstrap"] = {{"z", to_string(z)},   {"p_z", value(b.p_z)}, {"f1", value(b.f1)},
                      {"f2", value(b.f2)},   {"f3", value(b.f3)},   {"beta_z", value(b.beta_z)},
                      {"bubble_minus_one", value(bubble(profile, z) - 1)}};
  }
  o.header = {"key", "value"};
  key_values(o, r);
  return o;
}

Output do_lace(const RunConfig& c) {
  const std::string target = c.target.empty() ? "profile" : c.target;
  Output o;
  o.result["target"] = target;
  if (target == "profile") {
    const Dim dim(require(c.n_dim, "--n-dim"));
    const int m = require(c.max_steps, "--max-steps");
    const auto all = pi_m_all(dim, m, enumeration_options(c));
    o.result["n_dim"] = dim.n();
    o.result["m"] = m;
    o.header = {"M", "weight", "value"};
    ordered_json parts = ordered_json::array();
    for (int big_m = 1; big_m < m; ++big_m) {
      if (c.big_m && *c.big_m != big_m) continue;
      const WeightProfile& w = all[big_m - 1];
      parts.push_back({{"M", big_m}, {"by_weight", strings(w.by_weight())}, {"total", big(w.total())}});
      for (int x = 0; x <= dim.n(); ++x) add_row(o, {std::to_string(big_m), std::to_string(x), big(w[x])});
    }
    o.result["pi_M"] = parts;
    WeightProfile alternating = WeightProfile::zero(dim);
    for (int big_m = 1; big_m < m; ++big_m) {
      if (big_m % 2) {
        alternating -= all[big_m - 1];
      } else {
        alternating += all[big_m - 1];
      }
    }
    o.result["pi"] = {{"by_weight", strings(alternating.by_weight())}, {"total", big(alternating.total())}};
    for (int x = 0; x <= dim.n(); ++x) add_row(o, {"alternating", std::to_string(x), big(alternating[x])});
  } else if (target == "universal") {
    const int k = require(c.max_steps, "--max-steps");
    o.result["k"] = k;
    o.header = {"k", "delta", "M", "count"};
    ordered_json entries = ordered_json::array();
    const bool single = c.delta && c.big_m;
    for (int delta = 1; delta < k; ++delta) {
      if (c.delta && *c.delta != delta) continue;
      for (int big_m = 1; big_m < k; ++big_m) {
        if (c.big_m && *c.big_m != big_m) continue;
        const BigInt count = pi_k_delta(k, delta, big_m);
        if (count == 0 && !single) continue;
        entries.push_back({{"delta", delta}, {"M", big_m}, {"count", big(count)}});
        add_row(o, {std::to_string(k), std::to_string(delta), std::to_string(big_m), big(count)});
      }
    }
    o.result["counts"] = entries;
  } else if (target == "npoly") {
    const int k = require(c.max_steps, "--max-steps");
    const int big_m = require(c.big_m, "--big-m");
    const NPoly poly = pi_as_n_polynomial(k, big_m);
    o.result["k"] = k;
    o.result["M"] = big_m;
    o.result["coefficients"] = strings(poly.coefficients());
    o.result["display"] = poly.str();
    o.header = {"power", "coefficient"};
    for (int q = 0; q <= poly.degree(); ++q) add_row(o, {std::to_string(q), big(poly.coefficient(q))});
  } else {
    throw UsageError("--target for lace must be profile, universal or npoly");
  }
  return o;
}

Output do_expand(const RunConfig& c) {
  Output o;
  o.result["target"] = c.target;
  o.header = {"power_of_N", "coefficient"};
  if (c.target == "z" || c.target == "amplitude") {
    const bool z = c.target == "z";
    const int order = c.order.value_or(z ? 5 : 4);
    const auto coeffs = z ? expand_z(order) : expand_amplitude(order);
    o.result["order"] = order;
    o.result["coefficients"] = integers(coeffs);
    const int first_power = z ? -1 : 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      add_row(o, {std::to_string(first_power - static_cast<int>(i)), big(coeffs[i])});
    }
  } else if (c.target == "mu") {
    const int order = c.order.value_or(5);
    const MuExpansion mu = expand_mu(order);
    o.result["order"] = order;
    o.result["coefficients"] = integers(mu.coefficients);
    ordered_json powers = ordered_json::array();
    for (std::size_t j = 0; j < mu.coefficients.size(); ++j) {
      powers.push_back(1 - static_cast<int>(j));
      add_row(o, {std::to_string(1 - static_cast<int>(j)), big(mu.coefficients[j])});
    }
    o.result["powers_of_N"] = powers;
    o.result["display"] = mu.str();
  } else {
    throw UsageError("--target for expand must be z, mu or amplitude");
  }
  return o;
}

Output do_verify(const RunConfig& c) {
  const auto options = enumeration_options(c);
  SuiteReport report;
  if (c.suite == "recursion") {
    report = verify_recursion_suite(c.n_dim, c.max_steps, options);
  } else if (c.suite == "resummation") {
    report = verify_resummation_suite(c.n_dim, c.max_steps, options);
  } else if (c.suite == "walsh") {
    report = verify_walsh_suite(c.n_dim);
  } else if (c.suite == "inequalities") {
    report = verify_inequalities_suite(c.n_dim, options);
  } else if (c.suite == "goldens") {
    report = verify_goldens_suite();
  } else {
    throw UsageError("--suite must be recursion, resummation, walsh, inequalities or goldens");
  }
  Output o;
  o.result["suite"] = report.suite;
  o.result["ok"] = report.ok();
  ordered_json checks = ordered_json::array();
  o.header = {"check", "ok", "detail"};
  for (const auto& check : report.checks) {
    checks.push_back({{"name", check.name}, {"ok", check.ok}, {"detail", check.detail}});
    add_row(o, {check.name, check.ok ? "true" : "false", check.detail});
  }
  o.result["checks"] = checks;
  o.exit = report.ok() ? kOk : kVerifyFailed;
  return o;
}

Output do_observable(const RunConfig& c, bool is_bubble) {
  const Dim dim(require(c.n_dim, "--n-dim"));
  if (!c.z) throw UsageError("missing required flag --z");
  const Rational z = parse_rational(*c.z);
  if (z < 0) throw DomainError("z must be nonnegative");
  const int n_max = steps_or_full(c, dim);
  const SawProfile profile = count_saw_by_endpoint(dim, n_max, enumeration_options(c));
  Output o;
  o.result["n_dim"] = dim.n();
  o.result["max_steps"] = n_max;
  o.result["z"] = to_string(z);
  const char* name = is_bubble ? "bubble" : "expected_length";
  if (c.scalar_mode == "exact") {
    const Rational v = is_bubble ? bubble(profile, z) : expected_length(totals(profile), z);
    o.result[name] = to_string(v);
    if (is_bubble) o.result["bubble_minus_one"] = to_string(v - 1);
    o.result["value"] = static_cast<double>(to_long_double(v));
  } else {
    const long double zf = to_long_double(z);
    const long double v = is_bubble ? bubble(profile, zf) : expected_length(totals(profile), zf);
    o.result[name] = static_cast<double>(v);
    if (is_bubble) o.result["bubble_minus_one"] = static_cast<double>(v - 1);
  }
  o.header = {"key", "value"};
  key_values(o, o.result);
  return o;
}

ordered_json config_echo(const RunConfig& c) {
  ordered_json e;
  e["subcommand"] = c.subcommand;
  auto opt = [&](const char* key, const auto& v) {
    if (v) {
      e[key] = *v;
    } else {
      e[key] = nullptr;
    }
  };
  opt("n_dim", c.n_dim);
  opt("max_steps", c.max_steps);
  e["lambda"] = c.lambda;
  e["p"] = c.p;
  opt("order", c.order);
  opt("big_m", c.big_m);
  opt("delta", c.delta);
  opt("z", c.z);
  e["target"] = c.target;
  e["suite"] = c.suite;
  e["scalar_mode"] = c.scalar_mode;
  e["format"] = c.format;
  opt("budget", c.budget);
  return e;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void render(const RunConfig& c, const Output& o, std::ostream& out) {
  if (c.format == "json") {
    ordered_json doc;
    doc["meta"] = {{"tool_version", CUBESAW_VERSION}, {"config_echo", config_echo(c)}};
    doc["result"] = o.result;
    out << doc.dump(2) << '\n';
    return;
  }
  if (c.format == "csv") {
    auto line = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << '\n';
    };
    line(o.header);
    for (const auto& row : o.rows) line(row);
    return;
  }
  std::vector<std::size_t> width(o.header.size(), 0);
  for (std::size_t i = 0; i < o.header.size(); ++i) width[i] = o.header[i].size();
  for (const auto& row : o.rows) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "  " : "");
      if (i + 1 < row.size()) {
        out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      } else {
        out << row[i];
      }
    }
    out << '\n';
  };
  line(o.header);
  for (const auto& row : o.rows) line(row);
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> commands = {"enumerate", "critical", "lace",  "expand",
                                                    "verify",    "bubble",   "length"};
  if (std::find(commands.begin(), commands.end(), c.subcommand) == commands.end()) {
    throw UsageError("unknown subcommand '" + c.subcommand + "'");
  }
  if (c.format != "json" && c.format != "csv" && c.format != "text") {
    throw UsageError("--format must be json, csv or text");
  }
  if (c.scalar_mode != "exact" && c.scalar_mode != "float") {
    throw UsageError("--scalar-mode must be exact or float");
  }
  if (c.n_dim && (*c.n_dim < 1 || *c.n_dim > 30)) throw UsageError("--n-dim must lie in [1, 30]");
  if (c.max_steps && *c.max_steps < 0) throw UsageError("--max-steps must be nonnegative");
  if (c.order && *c.order < 0) throw UsageError("--order must be nonnegative");
  if (c.subcommand == "expand" && c.target.empty()) throw UsageError("expand needs --target");
  if (c.subcommand == "verify" && c.suite.empty()) throw UsageError("verify needs --suite");
}

void error_line(std::ostream& err, const std::string& kind, const std::string& message) {
  err << ordered_json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.threads > 0) set_thread_count(config.threads);
    Output o;
    if (config.subcommand == "enumerate") {
      o = do_enumerate(config);
    } else if (config.subcommand == "critical") {
      o = do_critical(config);
    } else if (config.subcommand == "lace") {
      o = do_lace(config);
    } else if (config.subcommand == "expand") {
      o = do_expand(config);
    } else if (config.subcommand == "verify") {
      o = do_verify(config);
    } else {
      o = do_observable(config, config.subcommand == "bubble");
    }
    if (config.out.empty()) {
      render(config, o, out);
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw UsageError("cannot open --out path " + config.out);
      render(config, o, file);
    }
    if (o.exit == kVerifyFailed) error_line(err, "verification_failed", "one or more checks failed");
    return o.exit;
  } catch (const UsageError& e) {
    error_line(err, "usage", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    error_line(err, "domain", e.what());
    return kUsage;
  } catch (const BudgetExceeded& e) {
    error_line(err, "budget_exceeded", e.what());
    return kBudget;
  } catch (const std::exception& e) {
    error_line(err, "internal", e.what());
    return kVerifyFailed;
  }
}

int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact self-avoiding walk enumeration and lace expansion on the hypercube", "cubesaw"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--n-dim", c.n_dim, "Hypercube dimension N");
  app.add_option("--max-steps", c.max_steps, "Walk length n_max, interval length m, or k");
  app.add_option("--lambda", c.lambda, "Rational lambda defining z_N");
  app.add_option("--p", c.p, "Rational p in (0, 1/2) for zeta_p");
  app.add_option("--order", c.order, "Expansion order");
  app.add_option("--big-m", c.big_m, "Number of lace edges M");
  app.add_option("--delta", c.delta, "Number of explored coordinates");
  app.add_option("--z", c.z, "Rational fugacity z");
  app.add_option("--target", c.target, "z|mu|amplitude for expand; profile|universal|npoly for lace");
  app.add_option("--suite", c.suite, "recursion|resummation|walsh|inequalities|goldens");
  app.add_option("--threads", c.threads, "Worker threads (overrides CUBESAW_THREADS)");
  app.add_option("--scalar-mode", c.scalar_mode, "exact|float");
  app.add_option("--format", c.format, "json|csv|text");
  app.add_option("--out", c.out, "Write the result to this path");
  app.add_option("--budget", c.budget, "Enumeration node budget");
  for (const char* name : {"enumerate", "critical", "lace", "expand", "verify", "bubble", "length"}) {
    app.add_subcommand(name)->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", e.what());
    return kUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.threads == 0) {
    if (const char* env = std::getenv("CUBESAW_THREADS")) {
      try {
        c.threads = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception&) {
        error_line(err, "usage", "CUBESAW_THREADS must be a positive integer");
        return kUsage;
      }
    }
  }
  return run(c, out, err);
}

}  // namespace cubesaw::cli
