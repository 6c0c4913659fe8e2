#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gisin/concurrence.hpp"
#include "gisin/distill.hpp"
#include "gisin/engine.hpp"
#include "gisin/errors.hpp"
#include "gisin/report.hpp"
#include "gisin/states.hpp"

namespace gisin::cli {

namespace {

constexpr const char* kStateSyntax = R"(Named states (--state NAME[:ARGS]):
  bell                         (|00> + |11>)/sqrt(2)
  ghz:LxD                      L-party GHZ state of local dimension D (D defaults to 2)
  w:L                          L-qubit W state
  product:LxD[,seed=S]         |0...0>, or a random product state when seed is given
  haar:D1xD2x...[,seed=S]      Haar-random pure state with the given dims
  acin:l0=..,l1=..,l2=..,l3=..,l4=..,psi=..
                               three-qubit canonical form; unset lambdas are 0,
                               sum of squares must be 1 within 1e-10
  werner:P                     P |Phi+><Phi+| + (1 - P) I/4
  isotropic:DxF or d=D,F=F     isotropic state of local dimension D, fidelity F
  chessboard-ppt               3x3 PPT entangled chessboard state
State files (--file PATH) use
  {"kind": "pure", "dims": [...], "amplitudes": [[re, im], ...]} or
  {"kind": "density", "dims": [...], "entries": [[re, im], ...]} (row-major).)";

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

State load_input(const RunConfig& config) {
  if (config.state_spec.has_value() == config.file.has_value())
    throw ValidationError("exactly one of --state or --file is required");
  if (config.state_spec) return make_named_state(*config.state_spec);
  return read_state_file(*config.file);
}

nlohmann::json input_json(const RunConfig& config) {
  if (config.state_spec) return {{"state", *config.state_spec}};
  if (config.file) return {{"file", *config.file}};
  return nullptr;
}

SweepOptions sweep_options(const RunConfig& config) {
  SweepOptions options;
  options.violation_tol = config.violation_tol;
  options.concurrence_tol = config.concurrence_tol;
  options.budget = config.budget;
  options.settings_for_all = config.settings_for_all;
  return options;
}

struct Outcome {
  nlohmann::json result;
  std::optional<bool> entangled; ///< for --assert-*; empty when not applicable
};

Outcome analyze(const RunConfig& config) {
  const State state = load_input(config);
  Outcome outcome;
  auto options = sweep_options(config);
  const auto report = sweep(state, options);
  nlohmann::json doc;
  doc["kind"] = to_string(report.kind);
  doc["dims"] = report.dims;
  doc["verdict"] = to_string(report.verdict);
  doc["best_violation"] = report.best_violation();
  doc["witness"] = report.best && report.verdict == Verdict::Entangled
                       ? to_json(*report.best_record())
                       : nlohmann::json(nullptr);
  if (const auto* pure = std::get_if<PureState>(&state)) {
    const auto breakdown = concurrence_decomposition(*pure);
    doc["concurrence"] = {{"total", breakdown.total}, {"k_factor", breakdown.k_factor},
                          {"terms", breakdown.terms.size()}};
  } else {
    doc["distillability"] = to_json(distillability_witness(std::get<DensityMatrix>(state), options));
  }
  outcome.result = std::move(doc);
  outcome.entangled = report.verdict == Verdict::Entangled;
  return outcome;
}

Outcome run_sweep(const RunConfig& config) {
  const auto report = sweep(load_input(config), sweep_options(config));
  return {to_json(report), report.verdict == Verdict::Entangled};
}

Outcome run_trials(const RunConfig& config) {
  if (config.state_spec || config.file)
    throw ValidationError("random-trials samples its own states; --state/--file are not accepted");
  if (config.dims.size() < 2) throw ValidationError("random-trials: --dims needs at least 2 parties");
  const auto stats = random_trials(config.dims, config.n, config.seed, config.violation_tol);
  return {to_json(stats), std::nullopt};
}

Outcome run_ppt(const RunConfig& config) {
  const auto rho = as_density(load_input(config));
  std::vector<PptEntry> entries;
  const auto partitions = enumerate_bipartitions(rho.dims());
  bool all = true;
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    entries.push_back({partitions[i], i, ppt_check(rho, partitions[i])});
    all = all && entries.back().result.is_ppt;
  }
  nlohmann::json doc{{"dims", rho.dims()}, {"ppt_all_cuts", all}, {"cuts", to_json(entries)}};
  // NPT across some cut certifies entanglement; PPT decides nothing.
  return {std::move(doc), all ? std::nullopt : std::optional<bool>(true)};
}

Outcome run_distill(const RunConfig& config) {
  const auto witness = distillability_witness(as_density(load_input(config)), sweep_options(config));
  return {to_json(witness), witness.verdict == Distillability::Distillable};
}

void write_report(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write report to '" + config.out + "'");
  file << text;
  if (!file) throw Error("failed while writing report to '" + config.out + "'");
}

} // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.assert_separable && config.assert_entangled)
      throw ValidationError("--assert-separable and --assert-entangled are mutually exclusive");
    if (!(config.violation_tol > 0.0) || !(config.concurrence_tol > 0.0))
      throw ValidationError("tolerances must be positive");

    Outcome outcome;
    if (config.command == "analyze") outcome = analyze(config);
    else if (config.command == "sweep") outcome = run_sweep(config);
    else if (config.command == "random-trials") outcome = run_trials(config);
    else if (config.command == "ppt") outcome = run_ppt(config);
    else if (config.command == "distill") outcome = run_distill(config);
    else throw ValidationError("unknown command '" + config.command + "'");

    nlohmann::json doc;
    doc["schema"] = kReportSchema;
    doc["command"] = config.command;
    if (config.timestamp) doc["generated_at"] = utc_timestamp();
    doc["input"] = input_json(config);
    doc["result"] = outcome.result;

    const std::string text = config.format == OutputFormat::Json ? doc.dump(2) + "\n" : flat_csv(doc);
    write_report(config, text, out);

    if (config.assert_separable || config.assert_entangled) {
      if (!outcome.entangled.has_value() && config.command != "ppt")
        throw ValidationError("--assert-* is not supported by '" + config.command + "'");
      const bool entangled = outcome.entangled.value_or(false);
      if (config.assert_separable && entangled) {
        err << "assertion failed: state was found entangled\n";
        return kExitAssertion;
      }
      if (config.assert_entangled && !entangled) {
        err << "assertion failed: no entanglement witness found\n";
        return kExitAssertion;
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projected CHSH sweeps: entanglement of pure multipartite states and "
               "single-copy distillability witnesses"};
  app.footer(kStateSyntax);
  app.require_subcommand(1);

  RunConfig config;
  std::string state_spec, file, format = "json";
  bool no_timestamp = false;

  auto add_common = [&](CLI::App* sub, bool needs_state) {
    if (needs_state) {
      auto* s = sub->add_option("--state", state_spec, "Named state, e.g. ghz:3x2 (see --help footer)");
      auto* f = sub->add_option("--file", file, "State file (JSON)")->check(CLI::ExistingFile);
      s->excludes(f);
      f->excludes(s);
      sub->add_option("--budget", config.budget, "Maximum number of projections per sweep")
          ->check(CLI::PositiveNumber);
      sub->add_option("--concurrence-tol", config.concurrence_tol,
                      "Concurrence floor below which a quiet pure state is called Separable")
          ->check(CLI::PositiveNumber);
      sub->add_flag("--settings-all", config.settings_for_all,
                    "Optimize measurement settings for every record, not only the best");
      sub->add_flag("--assert-separable", config.assert_separable,
                    "Exit 2 if the state is found entangled");
      sub->add_flag("--assert-entangled", config.assert_entangled,
                    "Exit 2 unless the state is found entangled");
    }
    sub->add_option("--tol", config.violation_tol, "Violation tolerance above 2")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", config.out, "Report path ('-' for stdout)");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--no-timestamp", no_timestamp, "Omit the generation timestamp");
    sub->footer(kStateSyntax);
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Verdict, witness and concurrence summary");
  add_common(analyze_cmd, true);
  auto* sweep_cmd = app.add_subcommand("sweep", "Full sweep with one record per projection");
  add_common(sweep_cmd, true);
  auto* ppt_cmd = app.add_subcommand("ppt", "Minimum partial-transpose eigenvalue per bipartition");
  add_common(ppt_cmd, true);
  auto* distill_cmd = app.add_subcommand("distill", "Single-copy distillability witness");
  add_common(distill_cmd, true);
  auto* trials_cmd = app.add_subcommand("random-trials", "Haar-random check of violation vs entanglement");
  add_common(trials_cmd, false);
  trials_cmd->add_option("--dims", config.dims, "Subsystem dimensions, e.g. 2,2,2")
      ->delimiter(',')
      ->required();
  trials_cmd->add_option("--n", config.n, "Number of states")->check(CLI::PositiveNumber);
  trials_cmd->add_option("--seed", config.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!state_spec.empty()) config.state_spec = state_spec;
  if (!file.empty()) config.file = file;
  config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  config.timestamp = !no_timestamp;
  return run_command(config, out, err);
}

} // namespace gisin::cli
