// instanton_lab: verification suites, Weierstraß classification, decay fits and
// family sampling. Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "instanton/reports/jobs.hpp"

namespace {

struct CommonFlags {
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::optional<double> step;
  std::optional<double> tol;
  std::string out;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "RNG seed")->capture_default_str();
    app->add_option("--samples", samples, "Number of samples (job-specific default)");
    app->add_option("--step", step, "Relative finite-difference step");
    app->add_option("--tol", tol, "Override the primary tolerance of the job");
    app->add_option("--out", out, "Write the JSON report here (CSV next to it); stdout if omitted");
  }

  instanton::RunOptions options() const {
    instanton::RunOptions o;
    o.seed = seed;
    o.samples = samples;
    o.step = step;
    o.tol = tol;
    return o;
  }
};

int emit(const instanton::ReportBuilder& rb, const CommonFlags& flags) {
  if (flags.out.empty()) {
    std::cout << rb.json_text();
  } else {
    const auto files = instanton::write_report(rb, flags.out);
    std::size_t passed = 0;
    for (const auto& c : rb.checks()) passed += c.pass ? 1 : 0;
    std::cout << (rb.pass() ? "PASS" : "FAIL") << " " << passed << "/" << rb.checks().size() << " checks";
    for (const auto& f : files) std::cout << "  " << f.string();
    std::cout << "\n";
  }
  for (const auto& c : rb.checks())
    if (!c.pass) std::cerr << "failed: [" << c.suite << "] " << c.name << " value=" << instanton::format_double(c.value)
                           << " tolerance=" << instanton::format_double(c.tolerance) << "\n";
  return rb.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"instanton_lab: numerical and exact checks for ALG and ALG* gravitational instanton models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(INSTANTON_LAB_VERSION));

  CommonFlags verify_flags, classify_flags, decay_flags, family_flags;
  std::string model, suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite on a model");
  verify->add_option("--model,-m", model, "Model spec, e.g. \"algstar nu=1 kappa0=0 L=1 R=30\"")->required();
  verify->add_option("--suite,-s", suite, "hyperkahler | closedness | deck | curvature-decay | volume | isometry | "
                                          "lie-derivative | moment-map")
      ->required();
  verify_flags.attach(verify);

  std::string input;
  auto* classify = app.add_subcommand("classify", "Classify the singular fibers of Weierstrass data");
  classify->add_option("input", input, "Polynomial JSON file")->required();
  classify_flags.attach(classify);

  std::string model_a, model_b = "twin", radii = "default", quantity = "metric", expect;
  auto* decay = app.add_subcommand("decay-fit", "Fit the decay order of the difference of two models");
  decay->add_option("--model-a", model_a, "Model spec")->required();
  decay->add_option("--model-b", model_b, "Model spec in the same chart, or 'twin'")->capture_default_str();
  decay->add_option("--radii", radii, "'default' or a comma list of radii")->capture_default_str();
  decay->add_option("--quantity", quantity, "metric | form1 | form2 | form3")->capture_default_str();
  decay->add_option("--expect", expect, "exact | log | <order>: turn the fit into a pass/fail check");
  decay_flags.attach(decay);

  std::string type = "all";
  auto* families = app.add_subcommand("families", "Sample the Weierstrass families with a prescribed fiber at [0:1]");
  families->add_option("--type", type, "I0* .. I4*, II, III, IV, IV*, III*, II* or all")->capture_default_str();
  family_flags.attach(families);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return emit(instanton::run_verify(model, suite, verify_flags.options()), verify_flags);
    if (*classify) return emit(instanton::run_classify(input, classify_flags.options()), classify_flags);
    if (*decay)
      return emit(instanton::run_decay_fit(model_a, model_b, radii, quantity, expect, decay_flags.options()),
                  decay_flags);
    if (*families) return emit(instanton::run_families(type, family_flags.options()), family_flags);
  } catch (const instanton::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
