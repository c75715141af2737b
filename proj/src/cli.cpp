// SPDX-License-Identifier: Apache-2.0
#include "slspec/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "slspec/certificates.hpp"
#include "slspec/errors.hpp"
#include "slspec/problem_io.hpp"
#include "slspec/richardson.hpp"
#include "slspec/serialize.hpp"

namespace slspec::cli {

namespace {

double required(const std::optional<double>& v, const char* flag) {
  if (!v) throw InvalidInput(std::string("missing ") + flag);
  return *v;
}

ProblemSpec load_problem(const RunConfig& cfg) {
  if (cfg.problem_path.empty()) throw InvalidInput("missing --problem");
  return read_problem_file(cfg.problem_path);
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions opts;
  opts.tol = cfg.tol;
  opts.threads = cfg.threads;
  return opts;
}

Window checked(const std::optional<Window>& w, const char* flag) {
  if (!w) throw InvalidInput(std::string("missing ") + flag);
  if (!(w->lo < w->hi)) throw InvalidInput(std::string(flag) + " must satisfy lo < hi");
  return *w;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string run_classify(const RunConfig& cfg) {
  const Classification c = classify_definiteness(load_problem(cfg));
  return cfg.output == OutputFormat::json ? dump(to_json(c)) : classification_to_csv(c);
}

std::string run_scan(const RunConfig& cfg) {
  const ScanResult s = find_real_eigenvalues(load_problem(cfg), checked(cfg.window, "--window"), scan_options(cfg));
  return cfg.output == OutputFormat::json ? dump(to_json(s)) : records_to_csv(s.records);
}

std::string run_richardson(const RunConfig& cfg) {
  const RichardsonReport r = richardson_numbers(load_problem(cfg), checked(cfg.window, "--window"), scan_options(cfg));
  return cfg.output == OutputFormat::json ? dump(to_json(r)) : richardson_to_csv(r);
}

std::string run_complex_scan(const RunConfig& cfg) {
  if (!cfg.rect) throw InvalidInput("missing --re/--im");
  const Rect rect{checked(cfg.rect->re, "--re"), checked(cfg.rect->im, "--im")};
  const std::vector<EigenRecord> records = find_complex_eigenvalues(load_problem(cfg), rect, scan_options(cfg));
  if (cfg.output == OutputFormat::csv) return records_to_csv(records);
  nlohmann::json list = nlohmann::json::array();
  for (const EigenRecord& r : records) list.push_back(to_json(r));
  return dump({{"re", {rect.re.lo, rect.re.hi}}, {"im", {rect.im.lo, rect.im.hi}}, {"records", std::move(list)}});
}

std::vector<BoundCertificate> certificates(const RunConfig& cfg, std::ostream& err) {
  const std::string& kind = cfg.kind;
  if (kind == "one_tp") {
    const OneTurningPointBounds b = bound_one_turning_point(required(cfg.q0, "--q0"));
    return {b.upper, b.lower};
  }
  if (kind == "application") {
    const double M = required(cfg.M, "--M");
    if (cfg.problem_path.empty()) {
      err << "certify: no --problem given, using q = 0\n";
      return {certify_application(M, application(0.0))};
    }
    return {certify_application(M, load_problem(cfg))};
  }
  if (kind == "prop3") {
    const ProblemSpec spec = load_problem(cfg);
    const double lambda = required(cfg.lambda, "--lambda");
    Prop3Options opts;
    opts.variant = cfg.lower ? Prop3Variant::lower : Prop3Variant::upper;
    const std::vector<double> mus = cfg.mus.empty() ? suggest_gap_mus(spec, lambda, opts.variant) : cfg.mus;
    return {certify_prop3(spec, lambda, mus, opts)};
  }
  if (kind == "prop4" || kind == "prop5") {
    const ProblemSpec spec = load_problem(cfg);
    const double mu = required(cfg.mu, "--mu");
    const double star = required(cfg.lambda_star, "--lambda-star");
    const double c = required(cfg.c, "--c");
    const double d = required(cfg.d, "--d");
    const double e = required(cfg.e, "--e");
    return {kind == "prop4" ? certify_prop4(spec, mu, star, c, d, e) : certify_prop5(spec, mu, star, c, d, e)};
  }
  throw InvalidInput("unknown certificate kind '" + kind + "'");
}

std::string run_certify(const RunConfig& cfg, std::ostream& err) {
  const std::vector<BoundCertificate> certs = certificates(cfg, err);
  if (cfg.output == OutputFormat::csv) return certificates_to_csv(certs);
  nlohmann::json list = nlohmann::json::array();
  for (const BoundCertificate& c : certs) list.push_back(to_json(c));
  return dump(list);
}

std::string run_drift(const RunConfig& cfg) {
  const DriftResult d = zero_drift(load_problem(cfg), required(cfg.lambda, "--lambda"), cfg.zero_index);
  return cfg.output == OutputFormat::json ? dump(to_json(d)) : drift_to_csv(d);
}

std::string dispatch(const RunConfig& cfg, std::ostream& err) {
  if (!(cfg.tol > 0.0)) throw InvalidInput("--tol must be positive");
  if (cfg.command == "classify") return run_classify(cfg);
  if (cfg.command == "scan") return run_scan(cfg);
  if (cfg.command == "richardson") return run_richardson(cfg);
  if (cfg.command == "complex-scan") return run_complex_scan(cfg);
  if (cfg.command == "certify") return run_certify(cfg, err);
  if (cfg.command == "drift") return run_drift(cfg);
  throw InvalidInput("unknown command '" + cfg.command + "'");
}

std::optional<Window> to_window(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return Window{v[0], v[1]};
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = dispatch(config, err);
    if (config.output_path.empty()) {
      out << text;
    } else {
      std::ofstream f(config.output_path, std::ios::binary);
      if (!(f << text)) throw InvalidInput("cannot write " + config.output_path);
    }
    return exit_code::ok;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violation: " << e.what() << '\n';
    return exit_code::hypothesis_violation;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_code::numerical_failure;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid_input;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::vector<double> window;
  std::vector<double> re;
  std::vector<double> im;
  std::string output = "csv";

  CLI::App app{"Spectra of Sturm-Liouville problems with indefinite weight"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--problem", cfg.problem_path, "Problem file (JSON)");
    sub->add_option("--tol", cfg.tol, "Eigenvalue bracketing tolerance (relative)");
    sub->add_option("--output", output, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.output_path, "Output file (default: stdout)");
  };
  CLI::App* classify = app.add_subcommand("classify", "Polar / orthogonal / non-definite classification");
  common(classify);
  for (const char* name : {"scan", "richardson"}) {
    CLI::App* sub = app.add_subcommand(name, name == std::string("scan") ? "Real eigenvalues in a window"
                                                                          : "Richardson numbers from a real scan");
    common(sub);
    sub->add_option("--window", window, "lo hi")->expected(2)->required();
  }
  CLI::App* complex = app.add_subcommand("complex-scan", "Eigenvalues in a rectangle of the complex plane");
  common(complex);
  complex->add_option("--re", re, "lo hi")->expected(2)->required();
  complex->add_option("--im", im, "lo hi")->expected(2)->required();
  CLI::App* certify = app.add_subcommand("certify", "Check hypotheses and emit a bound certificate");
  common(certify);
  certify->add_option("--kind", cfg.kind, "Certificate")
      ->required()
      ->check(CLI::IsMember({"one_tp", "prop3", "prop4", "prop5", "application"}));
  certify->add_option("--q0", cfg.q0);
  certify->add_option("--M", cfg.M);
  certify->add_option("--mu", cfg.mu);
  certify->add_option("--lambda", cfg.lambda);
  certify->add_option("--lambda-star", cfg.lambda_star);
  certify->add_option("--c", cfg.c);
  certify->add_option("--d", cfg.d);
  certify->add_option("--e", cfg.e);
  certify->add_option("--mus", cfg.mus, "One value per zero gap (prop3)")->delimiter(',');
  certify->add_flag("--lower", cfg.lower, "prop3 variant bounding lambda- from below");
  CLI::App* drift = app.add_subcommand("drift", "Derivative of an eigenfunction zero with respect to lambda");
  common(drift);
  drift->add_option("--lambda", cfg.lambda)->required();
  drift->add_option("--zero-index", cfg.zero_index, "1-based interior zero")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid_input;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.output = output == "json" ? OutputFormat::json : OutputFormat::csv;
  cfg.window = to_window(window);
  if (!re.empty()) cfg.rect = Rect{*to_window(re), *to_window(im)};

  if (const char* env = std::getenv("SL_THREADS"); env && *env) {
    const std::string_view s(env);
    unsigned n = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc{} || p != s.data() + s.size() || n == 0) {
      err << "invalid input: SL_THREADS must be a positive integer\n";
      return exit_code::invalid_input;
    }
    cfg.threads = n;
  }
  return run(cfg, out, err);
}

}  // namespace slspec::cli
