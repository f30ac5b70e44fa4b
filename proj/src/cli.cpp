#include "krivine/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "krivine/constants.hpp"
#include "krivine/elliptic.hpp"
#include "krivine/errors.hpp"
#include "krivine/identities.hpp"
#include "krivine/khintchine.hpp"
#include "krivine/series.hpp"

namespace krivine::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<ConstantInfo, 9> kConstants{{
    {"PI", "pi"},
    {"L", "L = ln(1+sqrt2) = asinh(1)"},
    {"S", "S = sum_{k>=1} (-1)^(k-1) (1/(4k-3) - 1/(4k-1)) = L/sqrt2"},
    {"KG", "K_G = pi / (2 ln(1+sqrt2))"},
    {"A0", "a_0 = (8/pi) ln(1+sqrt2)"},
    {"HAAGERUP", "1 / (2K(i) - E(i))"},
    {"X0", "(1/x)[E(x) - (1-x^2) K(x)] = pi (x+1)/8"},
    {"KC_UPPER", "8 / (pi (x0 + 1))"},
    {"KHINTCHINE", "prod_{n>=1} (1 + 1/(n(n+2)))^{log2 n}"},
}};

constexpr std::array<std::string_view, 3> kTraceTargets{
    "double_series", "partial_sum_S", "khintchine_partial"};

constexpr long kDefaultTraceTerms = 10'000;
// Significant digits the Khintchine product is required to hold when N
// doubles.
constexpr int kKhintchineStableDigits = 6;

struct UsageError {
  std::string message;
  bool list_targets;
};

std::string join_names(auto&& names) {
  std::string out;
  for (std::string_view n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

std::string valid_targets(Command command) {
  switch (command) {
    case Command::Compute: {
      std::vector<std::string_view> names;
      for (const ConstantInfo& c : kConstants) names.push_back(c.name);
      return join_names(names);
    }
    case Command::Verify: {
      std::vector<std::string_view> names{"all"};
      for (const IdentityInfo& i : identity_registry()) {
        names.push_back(i.name);
      }
      return join_names(names) + " (RECURRENCE and COEFF_VS_QUADRATURE also "
                                 "accept an index, e.g. RECURRENCE(7))";
    }
    case Command::Trace:
      return join_names(kTraceTargets);
    case Command::List:
      break;
  }
  return "";
}

// RFC 4180 field quoting.
std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (std::string_view f : fields) {
    if (!first) out << ',';
    out << csv_field(f);
    first = false;
  }
  out << '\n';
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled)
      : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

struct Computed {
  BigReal value;
  std::optional<BigReal> residual;
  std::optional<long> terms_used;
};

Computed compute_constant(std::string_view name, const RunConfig& config,
                          const PrecisionContext& ctx) {
  if (name == "PI") return {const_pi(ctx), {}, {}};
  if (name == "L") return {const_L(ctx), {}, {}};
  if (name == "S") return {limit_S(ctx), {}, {}};
  if (name == "KG") return {const_KG(ctx), {}, {}};
  if (name == "A0") return {fourier_a(0, ctx).value, {}, {}};
  if (name == "HAAGERUP") return {haagerup_bound(ctx), {}, {}};
  if (name == "X0" || name == "KC_UPPER") {
    RootResult root = solve_x0(ctx);
    BigReal residual = abs(root.residual);
    if (name == "X0") return {std::move(root.x0), std::move(residual), {}};
    return {std::move(root.kc_upper), std::move(residual), {}};
  }
  // KHINTCHINE: the residual is the drift of the accelerated value when the
  // number of factors doubles.
  KhintchineOptions options;
  if (config.max_terms) options.base_terms = *config.max_terms;
  KhintchineStability s = khintchine_stability(ctx, options);
  BigReal drift = abs(s.at_double.value - s.at_base.value);
  if (!(drift < ctx.ten_to_minus(kKhintchineStableDigits))) {
    throw NoConvergence("KHINTCHINE: value moved by " + drift.to_string(3) +
                        " when the number of factors doubled");
  }
  return {std::move(s.at_double.value), std::move(drift),
          s.at_double.terms_used};
}

int do_compute(const RunConfig& config, const PrecisionContext& ctx,
               std::ostream& out) {
  const auto it = std::find_if(
      kConstants.begin(), kConstants.end(),
      [&](const ConstantInfo& c) { return c.name == config.target; });
  if (it == kConstants.end()) {
    throw UsageError{"unknown constant '" + config.target + "'", true};
  }
  Stopwatch clock(config.timing);
  const Computed c = compute_constant(it->name, config, ctx);
  const double runtime = clock.ms();
  const int digits = config.digits;

  switch (config.format) {
    case Format::Json: {
      Json j;
      j["target"] = it->name;
      j["value"] = c.value.to_string(digits);
      if (c.residual) j["residual"] = c.residual->to_string(digits);
      if (c.terms_used) j["terms_used"] = *c.terms_used;
      j["runtime_ms"] = runtime;
      j["paper_anchor"] = it->anchor;
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      csv_row(out, {"target", "value", "residual"});
      csv_row(out, {it->name, c.value.to_string(digits),
                    c.residual ? c.residual->to_string(digits) : ""});
      break;
    case Format::Text:
      out << it->name << " = " << c.value.to_string(digits) << '\n';
      if (c.residual) {
        out << "  residual   = " << c.residual->to_string(3) << '\n';
      }
      if (c.terms_used) out << "  terms_used = " << *c.terms_used << '\n';
      if (config.timing) out << "  runtime_ms = " << runtime << '\n';
      break;
  }
  return kExitOk;
}

bool not_converged(const IdentityReport& r) {
  if (r.error) return true;
  return std::any_of(r.params.begin(), r.params.end(), [](const auto& p) {
    return p.first == "converged" && p.second == "false";
  });
}

Json report_json(const IdentityReport& r, const RunConfig& config) {
  const int digits = config.digits;
  Json j;
  j["target"] = to_string(r.id);
  j["lhs"] = r.lhs.to_string(digits);
  j["rhs"] = r.rhs.to_string(digits);
  j["residual"] = r.residual.to_string(digits);
  j["tolerance"] = r.tolerance.to_string(digits);
  j["digits_agreed"] = r.digits_agreed;
  j["passed"] = r.passed;
  if (r.terms_used) j["terms_used"] = *r.terms_used;
  j["runtime_ms"] = config.timing ? r.runtime_ms : 0.0;
  j["paper_anchor"] = identity_info(r.id.kind).anchor;
  Json params = Json::object();
  for (const auto& [key, value] : r.params) params[key] = value;
  j["params"] = std::move(params);
  if (r.error) j["error"] = *r.error;
  return j;
}

void report_text(const IdentityReport& r, const RunConfig& config,
                 std::ostream& out) {
  const int digits = config.digits;
  out << to_string(r.id) << ": " << (r.passed ? "PASS" : "FAIL") << '\n';
  if (r.error) {
    out << "  error    = " << *r.error << '\n';
    return;
  }
  out << "  lhs      = " << r.lhs.to_string(digits) << '\n';
  out << "  rhs      = " << r.rhs.to_string(digits) << '\n';
  out << "  residual = " << r.residual.to_string(3) << " (tolerance "
      << r.tolerance.to_string(3) << ", " << r.digits_agreed
      << " digits agreed)\n";
  if (r.terms_used) out << "  terms    = " << *r.terms_used << '\n';
  for (const auto& [key, value] : r.params) {
    out << "  " << key << ": " << value << '\n';
  }
  if (config.timing) out << "  runtime_ms = " << r.runtime_ms << '\n';
}

int do_verify(const RunConfig& config, const PrecisionContext& ctx,
              std::ostream& out) {
  const bool all = config.target == "all";
  std::optional<std::vector<IdentityId>> ids;
  if (!all) {
    std::optional<IdentityId> id = parse_identity(config.target);
    if (!id) {
      throw UsageError{"unknown identity '" + config.target + "'", true};
    }
    ids = std::vector<IdentityId>{*id};
  }
  const std::vector<IdentityReport> reports = verify_all(ctx, ids);

  switch (config.format) {
    case Format::Json: {
      if (all) {
        Json arr = Json::array();
        for (const IdentityReport& r : reports) {
          arr.push_back(report_json(r, config));
        }
        out << arr.dump(2) << '\n';
      } else {
        out << report_json(reports.front(), config).dump(2) << '\n';
      }
      break;
    }
    case Format::Csv:
      csv_row(out, {"target", "lhs", "rhs", "residual", "digits_agreed",
                    "passed"});
      for (const IdentityReport& r : reports) {
        csv_row(out, {to_string(r.id), r.lhs.to_string(config.digits),
                      r.rhs.to_string(config.digits),
                      r.residual.to_string(config.digits),
                      std::to_string(r.digits_agreed),
                      r.passed ? "true" : "false"});
      }
      break;
    case Format::Text: {
      long passed = 0;
      for (const IdentityReport& r : reports) {
        report_text(r, config, out);
        passed += r.passed ? 1 : 0;
      }
      if (all) {
        out << passed << "/" << reports.size() << " identities passed\n";
      }
      break;
    }
  }

  if (std::any_of(reports.begin(), reports.end(), not_converged)) {
    return kExitNotConverged;
  }
  if (std::any_of(reports.begin(), reports.end(),
                  [](const IdentityReport& r) { return !r.passed; })) {
    return kExitIdentityFailed;
  }
  return kExitOk;
}

int do_list(const RunConfig& config, std::ostream& out) {
  switch (config.format) {
    case Format::Json: {
      Json j;
      Json cs = Json::array();
      for (const ConstantInfo& c : kConstants) {
        cs.push_back({{"name", c.name}, {"paper_anchor", c.anchor}});
      }
      Json is = Json::array();
      for (const IdentityInfo& i : identity_registry()) {
        is.push_back({{"name", i.name},
                      {"description", i.description},
                      {"paper_anchor", i.anchor},
                      {"indexed", i.indexed}});
      }
      j["constants"] = std::move(cs);
      j["identities"] = std::move(is);
      j["trace_targets"] = kTraceTargets;
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      csv_row(out, {"kind", "name", "description", "anchor"});
      for (const ConstantInfo& c : kConstants) {
        csv_row(out, {"constant", c.name, "", c.anchor});
      }
      for (const IdentityInfo& i : identity_registry()) {
        csv_row(out, {"identity", i.name, i.description, i.anchor});
      }
      for (std::string_view t : kTraceTargets) {
        csv_row(out, {"trace", t, "", ""});
      }
      break;
    case Format::Text:
      out << "Constants:\n";
      for (const ConstantInfo& c : kConstants) {
        out << "  " << c.name << std::string(12 - c.name.size(), ' ')
            << c.anchor << '\n';
      }
      out << "Identities:\n";
      for (const IdentityInfo& i : identity_registry()) {
        out << "  " << i.name << (i.indexed ? "[(n)]" : "") << '\n'
            << "      " << i.description << '\n'
            << "      " << i.anchor << '\n';
      }
      out << "Trace targets:\n";
      for (std::string_view t : kTraceTargets) out << "  " << t << '\n';
      break;
  }
  return kExitOk;
}

// 1, 10, 100, ... up to max_terms, then max_terms itself.
std::vector<long> checkpoints(long max_terms) {
  std::vector<long> out;
  for (long c = 1; c <= max_terms; c *= 10) {
    out.push_back(c);
    if (c > max_terms / 10) break;
  }
  if (out.back() != max_terms) out.push_back(max_terms);
  return out;
}

int do_trace(const RunConfig& config, const PrecisionContext& ctx,
             std::ostream& out) {
  if (std::find(kTraceTargets.begin(), kTraceTargets.end(), config.target) ==
      kTraceTargets.end()) {
    throw UsageError{"unknown trace target '" + config.target + "'", true};
  }
  const long max_terms = config.max_terms.value_or(kDefaultTraceTerms);
  const std::vector<long> points = checkpoints(max_terms);

  std::vector<BigReal> values;
  BigReal limit(ctx.bits());
  if (config.target == "double_series") {
    values = double_series_partials(points, ctx);
    limit = double_series(ctx).value;
  } else if (config.target == "partial_sum_S") {
    values = partial_sums_S(points, ctx);
    limit = limit_S(ctx);
  } else {
    for (ProductResult& p : khintchine_partials(points, ctx)) {
      values.push_back(std::move(p.value));
    }
    limit = khintchine_accelerated(ctx, kKhintchineStableDigits).value;
  }

  const int digits = config.digits;
  std::vector<BigReal> residuals;
  for (const BigReal& v : values) residuals.push_back(abs(v - limit));

  if (config.format == Format::Json) {
    Json arr = Json::array();
    for (size_t i = 0; i < points.size(); ++i) {
      arr.push_back({{"index", points[i]},
                     {"value", values[i].to_string(digits)},
                     {"residual", residuals[i].to_string(digits)}});
    }
    out << arr.dump(2) << '\n';
  } else {
    csv_row(out, {"index", "value", "residual"});
    for (size_t i = 0; i < points.size(); ++i) {
      csv_row(out, {std::to_string(points[i]), values[i].to_string(digits),
                    residuals[i].to_string(digits)});
    }
  }
  return residuals.back() < ctx.tolerance() ? kExitOk : kExitNotConverged;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out, int& exit_code) {
  RunConfig config;
  CLI::App app{"High-precision constants and identity checks around the "
               "Grothendieck-Krivine constant",
               "krivine"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string format = "text";
  std::string out_path;
  app.add_option("--digits", config.digits, "Significant digits (>= 10)")
      ->check(CLI::Range(PrecisionContext::kMinDigits, 100000));
  app.add_option("--max-terms", config.max_terms,
                 "Term cap for traces and the Khintchine product")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "Write output to this file");
  app.add_flag("--timing", config.timing, "Report measured runtimes");

  CLI::App* compute = app.add_subcommand("compute", "Compute a constant");
  compute->add_option("target", config.target, "Constant name")->required();
  CLI::App* verify = app.add_subcommand("verify", "Verify an identity or all");
  verify->add_option("target", config.target, "Identity id or 'all'")
      ->required();
  CLI::App* list = app.add_subcommand("list", "List constants and identities");
  CLI::App* trace = app.add_subcommand("trace", "Emit a convergence trace");
  trace->add_option("target", config.target, "Trace target")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    exit_code = kExitOk;
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    exit_code = kExitOk;
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError{e.what(), false};
  }

  if (compute->parsed()) config.command = Command::Compute;
  if (verify->parsed()) config.command = Command::Verify;
  if (list->parsed()) config.command = Command::List;
  if (trace->parsed()) config.command = Command::Trace;
  config.format = format == "json"  ? Format::Json
                  : format == "csv" ? Format::Csv
                                    : Format::Text;
  if (!out_path.empty()) config.out_path = out_path;
  return config;
}

int dispatch(const RunConfig& config, std::ostream& out) {
  if (config.command == Command::List) return do_list(config, out);
  const PrecisionContext ctx(config.digits);
  switch (config.command) {
    case Command::Compute:
      return do_compute(config, ctx, out);
    case Command::Verify:
      return do_verify(config, ctx, out);
    case Command::Trace:
      return do_trace(config, ctx, out);
    case Command::List:
      break;
  }
  return kExitOk;
}

}  // namespace

std::span<const ConstantInfo> constants() { return kConstants; }

std::span<const std::string_view> trace_targets() { return kTraceTargets; }

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::optional<Command> command;
  try {
    int exit_code = kExitOk;
    std::optional<RunConfig> config = parse_args(args, out, exit_code);
    if (!config) return exit_code;
    command = config->command;

    if (!config->out_path) return dispatch(*config, out);
    // Render fully before touching the file so a failed run leaves no
    // partial output behind.
    std::ostringstream buffer;
    const int code = dispatch(*config, buffer);
    std::ofstream file(*config->out_path, std::ios::binary);
    file << buffer.str();
    file.close();
    if (!file) {
      err << "error: cannot write '" << *config->out_path << "'\n";
      return kExitNotConverged;
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << '\n';
    if (e.list_targets && command) {
      err << "valid targets: " << valid_targets(*command) << '\n';
    }
    err << "run 'krivine --help' for the command grammar\n";
    return kExitUsage;
  } catch (const InvalidPrecision& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  }
}

}  // namespace krivine::cli
