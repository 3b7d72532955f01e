#include "jratio/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jratio/constants.hpp"
#include "jratio/lemma_suites.hpp"
#include "jratio/lipschitz_search.hpp"

namespace jratio::cli {
namespace {

using nlohmann::ordered_json;

std::optional<double> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

// Coefficient of i: "" or "+" means 1, "-" means -1.
std::optional<double> parse_imaginary(std::string_view text) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text);
}

std::string format_real(double x) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, end);
}

// Value rounded to 15 significant digits; the JSON writer then prints the
// shortest representation, i.e. at most 15 digits.
double round15(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.15g", x);
  return std::strtod(buffer, nullptr);
}

ordered_json complex_json(ComplexPoint z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t seconds = std::chrono::system_clock::to_time_t(t);
  std::tm parts{};
  gmtime_r(&seconds, &parts);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buffer;
}

ordered_json report_json(const RatioReport& report) {
  ordered_json histogram;
  for (int k = 0; k < kBranchCount; ++k) {
    histogram[std::string(to_string(static_cast<BranchTag>(k)))] = report.branch_histogram[k];
  }
  ordered_json j;
  j["a"] = complex_json(report.a);
  j["sup_estimate"] = report.sup_estimate;
  j["argmax_z"] = complex_json(report.argmax_z);
  j["argmax_w"] = complex_json(report.argmax_w);
  j["closed_form"] = report.closed_form ? ordered_json(*report.closed_form) : ordered_json(nullptr);
  j["gap"] = report.gap ? ordered_json(*report.gap) : ordered_json(nullptr);
  j["branch_histogram"] = histogram;
  j["evaluations"] = report.evaluations;
  j["seed"] = report.seed;
  return j;
}

// Shared flag storage; each subcommand registers the subset it accepts.
struct Options {
  std::string a_spec = "0";
  std::uint64_t seed = 1;
  double tol = 1e-3;
  int grid_n = SearchConfig{}.grid_n;
  int refine_iters = SearchConfig{}.refine_iters;
  int refine_starts = SearchConfig{}.refine_starts;
  int workers = 0;
  long long samples = -1;
  int n_max = 3;
  int m_max = 16;
  bool no_manifest = false;
  bool verify_extremal = false;
  std::string output;
  std::string inject_fault;
};

struct UsageError {
  std::string message;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int dispatch(const std::string& command, const Options& o) {
    started_ = std::chrono::system_clock::now();
    command_ = command;
    options_ = &o;
    try {
      if (command == "constant") return constant();
      if (command == "estimate") return estimate();
      if (command == "verify") return verify();
      if (command == "power") return power();
      if (command == "q2") return q2();
      if (command == "audit") return audit();
      err_ << "unknown command " << command << "\n";
      return kBadArguments;
    } catch (const UsageError& e) {
      err_ << "error: " << e.message << "\n";
      return kBadArguments;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << "\n";
      return kBadArguments;
    } catch (const std::domain_error& e) {
      err_ << "error: " << e.what() << "\n";
      return kBadArguments;
    }
  }

 private:
  ComplexPoint parameter() const {
    const auto a = parse_complex(options_->a_spec);
    if (!a) throw UsageError{"cannot parse --a '" + options_->a_spec + "' (expected RE+IMi or a real)"};
    if (!(std::abs(*a) < 1.0)) throw UsageError{"--a must have modulus < 1"};
    return *a;
  }

  SearchConfig search_config() const {
    SearchConfig cfg;
    cfg.grid_n = options_->grid_n;
    cfg.refine_iters = options_->refine_iters;
    cfg.refine_starts = options_->refine_starts;
    cfg.seed = options_->seed;
    cfg.tol = options_->tol;
    cfg.workers = options_->workers;
    cfg.validate();
    return cfg;
  }

  std::uint64_t samples_or(std::uint64_t fallback) const {
    if (options_->samples < 0) return fallback;
    if (options_->samples == 0) throw UsageError{"--samples must be at least 1"};
    return static_cast<std::uint64_t>(options_->samples);
  }

  ordered_json manifest(const std::map<std::string, std::string>& parameters) const {
    const auto now = std::chrono::system_clock::now();
    ordered_json m;
    m["command"] = command_;
    m["parameters"] = parameters;
    m["seed"] = options_->seed;
    m["tool_version"] = kToolVersion;
    m["started_at"] = utc_timestamp(started_);
    m["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now - started_).count();
    return m;
  }

  std::map<std::string, std::string> search_parameters() const {
    return {{"a", options_->a_spec},
            {"seed", std::to_string(options_->seed)},
            {"tol", format_real(options_->tol)},
            {"grid_n", std::to_string(options_->grid_n)},
            {"refine_iters", std::to_string(options_->refine_iters)},
            {"refine_starts", std::to_string(options_->refine_starts)}};
  }

  void write_payload(const std::string& text) {
    if (options_->output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(options_->output, std::ios::binary);
    if (!file) throw UsageError{"cannot open --output '" + options_->output + "'"};
    file << text;
  }

  void emit_json(ordered_json payload, const std::map<std::string, std::string>& parameters) {
    if (!options_->no_manifest) payload["manifest"] = manifest(parameters);
    write_payload(payload.dump(2) + "\n");
  }

  // CSV cannot carry the manifest inline: it goes to a sidecar next to
  // --output, or to the diagnostic stream when writing to stdout.
  void emit_csv(const std::string& csv, const std::map<std::string, std::string>& parameters) {
    write_payload(csv);
    if (options_->no_manifest) return;
    const std::string text = manifest(parameters).dump(2) + "\n";
    if (options_->output.empty()) {
      err_ << text;
    } else {
      std::ofstream(options_->output + ".manifest.json", std::ios::binary) << text;
    }
  }

  int constant() {
    const ComplexPoint a = parameter();
    const ConstantsTable t = constants_table(std::abs(a));
    ordered_json payload;
    payload["abs_a"] = round15(t.abs_a);
    payload["c_main"] = round15(t.c_main);
    payload["c_case12"] = round15(t.c_case12);
    payload["c_ball"] = round15(t.c_ball);
    payload["c_go"] = round15(t.c_go);
    emit_json(payload, {{"a", options_->a_spec}});
    return kOk;
  }

  int estimate() {
    const ComplexPoint a = parameter();
    if (a == ComplexPoint{0.0, 0.0}) {
      throw UsageError{"a = 0 makes h a rotation with constant exactly 1; use `constant --a 0`"};
    }
    const SearchConfig cfg = search_config();
    const RatioReport report = estimate_lipschitz(a, cfg);
    const double closed = *report.closed_form;
    const bool violated = report.sup_estimate > closed + kBoundSlack;
    const bool converged = std::abs(report.sup_estimate - closed) <= cfg.tol;

    ordered_json payload;
    payload["command"] = "estimate";
    payload["report"] = report_json(report);
    payload["tol"] = cfg.tol;
    payload["converged"] = converged;
    payload["bound_violated"] = violated;
    if (options_->verify_extremal) {
      const ComplexPoint z = a / (2.0 * std::abs(a));
      const double value = ratio_J(a, z, -z);
      payload["extremal"] = {{"z", complex_json(z)},
                             {"w", complex_json(-z)},
                             {"ratio", value},
                             {"deviation", std::abs(value - closed)}};
    }
    auto parameters = search_parameters();
    parameters["verify_extremal"] = options_->verify_extremal ? "true" : "false";
    emit_json(payload, parameters);
    if (violated) {
      err_ << "bound violated: estimate exceeds the closed-form constant\n";
      return kViolation;
    }
    if (!converged) {
      err_ << "search did not reach the closed-form constant within tol\n";
      return kNotConverged;
    }
    return kOk;
  }

  int verify() {
    SuiteOptions suite;
    suite.samples = samples_or(100000);
    suite.seed = options_->seed;
    if (options_->inject_fault == "le1") {
      suite.fault = FaultInjection::NegateLe1Gap;
    } else if (!options_->inject_fault.empty()) {
      throw UsageError{"unknown --inject-fault '" + options_->inject_fault + "'"};
    }
    const std::vector<SuiteResult> results = run_lemma_suites(suite);
    bool all_passed = true;
    ordered_json suites = ordered_json::array();
    for (const SuiteResult& r : results) {
      ordered_json entry;
      entry["name"] = r.name;
      entry["passed"] = r.passed;
      entry["checks"] = r.checks;
      entry["worst"] = r.worst;
      if (r.counterexample) {
        ordered_json example = ordered_json::object();
        for (const auto& [key, value] : *r.counterexample) example[key] = value;
        entry["counterexample"] = example;
        err_ << "suite " << r.name << " failed: " << example.dump() << "\n";
      }
      all_passed = all_passed && r.passed;
      suites.push_back(entry);
    }
    ordered_json payload;
    payload["command"] = "verify";
    payload["samples"] = suite.samples;
    payload["all_passed"] = all_passed;
    payload["suites"] = suites;
    emit_json(payload, {{"samples", std::to_string(suite.samples)},
                        {"seed", std::to_string(suite.seed)},
                        {"inject_fault", options_->inject_fault}});
    return all_passed ? kOk : kViolation;
  }

  int power() {
    const ComplexPoint a = parameter();
    const SearchConfig cfg = search_config();
    const PowerTable table = power_monotonicity_table(a, options_->n_max, cfg);
    std::ostringstream csv;
    csv << "m,estimate,argmax_z,argmax_w\n";
    bool bound_ok = true;
    for (const PowerRow& row : table.rows) {
      csv << row.m << ',' << format_real(row.report.sup_estimate) << ',' << format_complex(row.report.argmax_z)
          << ',' << format_complex(row.report.argmax_w) << '\n';
      bound_ok = bound_ok && row.report.sup_estimate <= ball_constant(std::abs(a)) + kBoundSlack;
    }
    auto parameters = search_parameters();
    parameters["n_max"] = std::to_string(options_->n_max);
    emit_csv(csv.str(), parameters);
    for (const std::size_t i : table.violations) {
      err_ << "estimate increased from m=" << table.rows[i - 1].m << " to m=" << table.rows[i].m << "\n";
    }
    if (!bound_ok) err_ << "an estimate exceeds 1 + |a|\n";
    return table.violations.empty() && bound_ok ? kOk : kViolation;
  }

  int q2() {
    if (options_->m_max < 2) throw UsageError{"--m-max must be at least 2"};
    const SearchConfig cfg = search_config();
    std::vector<unsigned> ms;
    for (int m = 2; m <= options_->m_max; ++m) ms.push_back(static_cast<unsigned>(m));
    const std::vector<QRow> rows = q_scan(ms, cfg);
    std::ostringstream csv;
    csv << "m,a,estimate\n";
    for (const QRow& row : rows) {
      csv << row.m << ',' << format_real(row.a) << ',' << format_real(row.report.sup_estimate) << '\n';
    }
    auto parameters = search_parameters();
    parameters.erase("a");
    parameters["m_max"] = std::to_string(options_->m_max);
    emit_csv(csv.str(), parameters);
    return kOk;
  }

  int audit() {
    const ComplexPoint a = parameter();
    if (a == ComplexPoint{0.0, 0.0}) throw UsageError{"audit requires a != 0; use `constant --a 0`"};
    const std::uint64_t n = samples_or(1000000);
    const AuditReport report = bound_audit(a, n, options_->seed);
    ordered_json payload;
    payload["command"] = "audit";
    payload["a"] = complex_json(a);
    payload["samples"] = report.samples;
    payload["max_ratio"] = report.max_ratio;
    payload["argmax_z"] = complex_json(report.argmax_z);
    payload["argmax_w"] = complex_json(report.argmax_w);
    payload["bound"] = report.bound;
    payload["violations"] = report.violations;
    payload["factor_two_violations"] = report.factor_two_violations;
    emit_json(payload, {{"a", options_->a_spec},
                        {"samples", std::to_string(n)},
                        {"seed", std::to_string(options_->seed)}});
    return report.violations == 0 && report.factor_two_violations == 0 ? kOk : kViolation;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::chrono::system_clock::time_point started_;
  std::string command_;
  const Options* options_ = nullptr;
};

}  // namespace

std::optional<ComplexPoint> parse_complex(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    const auto re = parse_real(text);
    if (!re) return std::nullopt;
    return ComplexPoint{*re, 0.0};
  }
  text.remove_suffix(1);
  // Split at the last sign that is not leading and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    const auto im = parse_imaginary(text);
    if (!im) return std::nullopt;
    return ComplexPoint{0.0, *im};
  }
  const auto re = parse_real(text.substr(0, split));
  const auto im = parse_imaginary(text.substr(split));
  if (!re || !im) return std::nullopt;
  return ComplexPoint{*re, *im};
}

std::string format_complex(ComplexPoint z) {
  std::string text = format_real(z.real());
  if (!std::signbit(z.imag())) text += '+';
  text += format_real(z.imag());
  text += 'i';
  return text;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-ratio metric Lipschitz constants of punctured-disk automorphisms", "jratio"};
  app.require_subcommand(1);
  Options o;

  const auto add_manifest_flags = [&](CLI::App* sub) {
    sub->add_flag("--no-manifest", o.no_manifest, "Omit the run manifest");
    sub->add_option("--output", o.output, "Write the payload to this path");
  };
  const auto add_search_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--tol", o.tol, "Convergence tolerance");
    sub->add_option("--grid-n", o.grid_n, "Points per polar grid axis");
    sub->add_option("--refine-iters", o.refine_iters, "Pattern-search iterations per start");
    sub->add_option("--refine-starts", o.refine_starts, "Number of refinement starts");
    sub->add_option("--workers", o.workers, "Worker threads (0 = hardware concurrency)");
    add_manifest_flags(sub);
  };

  CLI::App* constant = app.add_subcommand("constant", "Closed-form constants for |a|");
  constant->add_option("--a", o.a_spec, "Parameter a as RE+IMi or a real")->required();
  add_manifest_flags(constant);

  CLI::App* estimate = app.add_subcommand("estimate", "Numerical supremum of the j-Lipschitz ratio");
  estimate->add_option("--a", o.a_spec, "Parameter a as RE+IMi or a real")->required();
  estimate->add_flag("--verify-extremal", o.verify_extremal, "Also evaluate the analytic extremal pair");
  add_search_flags(estimate);

  CLI::App* verify = app.add_subcommand("verify", "Property suites for the supporting inequalities");
  verify->add_option("--samples", o.samples, "Samples per pointwise suite");
  verify->add_option("--seed", o.seed, "Random seed");
  verify->add_option("--inject-fault", o.inject_fault, "Harness self-test: 'le1' negates the le1 gap");
  add_manifest_flags(verify);

  CLI::App* power = app.add_subcommand("power", "Power-map constants C(2^n, a) as CSV");
  power->add_option("--a", o.a_spec, "Parameter a as RE+IMi or a real")->required();
  power->add_option("--n-max", o.n_max, "Largest exponent n (m = 2^n)");
  add_search_flags(power);

  CLI::App* q2 = app.add_subcommand("q2", "Estimates of C(m, 1/(m+1)) as CSV");
  q2->add_option("--m-max", o.m_max, "Largest m");
  add_search_flags(q2);

  CLI::App* audit = app.add_subcommand("audit", "Random-pair audit of the upper bound");
  audit->add_option("--a", o.a_spec, "Parameter a as RE+IMi or a real")->required();
  audit->add_option("--samples", o.samples, "Number of random pairs");
  audit->add_option("--seed", o.seed, "Random seed");
  add_manifest_flags(audit);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  }

  Session session(out, err);
  return session.dispatch(app.get_subcommands().front()->get_name(), o);
}

}  // namespace jratio::cli
