#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rgm/cli.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> scenario, n, p, replicates, iterations, burn_in, thin, chains;
  std::optional<std::string> rule, out_dir, reference_ordering;
  std::optional<double> alpha;
  bool standardize = false;
  std::vector<std::string> inputs;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config; flags override its keys")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out-dir", f.out_dir, "output directory");
}

void add_mcmc(CLI::App* cmd, Flags& f) {
  cmd->add_option("--iterations", f.iterations, "MCMC sweeps per chain");
  cmd->add_option("--burn-in", f.burn_in, "discarded sweeps");
  cmd->add_option("--thin", f.thin, "keep every thin-th sweep after burn-in");
  cmd->add_option("--chains", f.chains, "independent chains");
  cmd->add_flag("--standardize", f.standardize, "centre and scale columns before fitting");
}

rgm::cli::RunConfig build_config(const Flags& f) {
  rgm::cli::RunConfig c;
  if (!f.config.empty()) rgm::cli::apply_config(c, rgm::read_json(f.config));
  if (f.scenario) {
    if (*f.scenario < 1 || *f.scenario > 3) throw rgm::ValidationError("--scenario must be 1, 2 or 3");
    rgm::ScenarioSpec fresh = rgm::ScenarioSpec::defaults(*f.scenario);
    fresh.n = c.scenario.n;
    fresh.p = c.scenario.p;
    c.scenario = fresh;
  }
  if (f.n) c.scenario.n = *f.n;
  if (f.p) c.scenario.p = *f.p;
  if (f.seed) c.seed = *f.seed;
  if (f.replicates) c.replicates = *f.replicates;
  if (f.iterations) c.mcmc.iterations = *f.iterations;
  if (f.burn_in) c.mcmc.burn_in = *f.burn_in;
  if (f.thin) c.mcmc.thin = *f.thin;
  if (f.chains) c.mcmc.chains = *f.chains;
  if (f.rule) {
    // "fdr:0.05" is shorthand for --rule fdr --alpha 0.05.
    const auto colon = f.rule->find(':');
    c.rule = f.rule->substr(0, colon);
    if (colon != std::string::npos) c.alpha = rgm::parse_double(f.rule->substr(colon + 1), "--rule");
  }
  if (f.alpha) c.alpha = *f.alpha;
  if (f.standardize) c.standardize = true;
  if (f.out_dir) c.out_dir = *f.out_dir;
  if (f.reference_ordering) c.reference_ordering = *f.reference_ordering;
  if (!f.inputs.empty()) c.inputs = f.inputs;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian reciprocal graphical models: simulate, fit, select, evaluate, analyze"};
  app.require_subcommand(1);
  Flags f;

  auto* simulate = app.add_subcommand("simulate", "simulate replicate data sets with known ground truth");
  add_common(simulate, f);
  simulate->add_option("--scenario", f.scenario, "1, 2 or 3")->check(CLI::IsMember({1, 2, 3}));
  simulate->add_option("--n", f.n, "observations per replicate");
  simulate->add_option("--p", f.p, "genes");
  simulate->add_option("--replicates", f.replicates, "number of replicates");

  auto* fit = app.add_subcommand("fit", "run MCMC on data CSVs");
  add_common(fit, f);
  add_mcmc(fit, f);
  fit->add_option("inputs", f.inputs, "data CSV, replicate directory, or run directory");

  auto* select = app.add_subcommand("select", "select a graph from fitted samples");
  add_common(select, f);
  select->add_option("--rule", f.rule, "mpm, fdr or hpm (fdr:ALPHA accepted)");
  select->add_option("--alpha", f.alpha, "target posterior expected FDR");
  select->add_option("inputs", f.inputs, "fit directory or run directory");

  auto* evaluate = app.add_subcommand("evaluate", "score estimates against ground truth");
  add_common(evaluate, f);
  evaluate->add_option("inputs", f.inputs, "run directory, or truth directory then fit directory");

  auto* analyze = app.add_subcommand("analyze", "motifs, degree posteriors and cascade ordering");
  add_common(analyze, f);
  analyze->add_option("--reference-ordering", f.reference_ordering, "file of tie groups, one per line")
      ->check(CLI::ExistingFile);
  analyze->add_option("inputs", f.inputs, "fit directory or run directory");

  auto* pairwise = app.add_subcommand("pairwise", "two-gene fits with HPM selection for each gene pair");
  add_common(pairwise, f);
  add_mcmc(pairwise, f);
  pairwise->add_option("inputs", f.inputs, "data CSV or directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const rgm::cli::RunConfig config = build_config(f);
    if (simulate->parsed()) rgm::cli::cmd_simulate(config);
    else if (fit->parsed()) rgm::cli::cmd_fit(config);
    else if (select->parsed()) rgm::cli::cmd_select(config);
    else if (evaluate->parsed()) rgm::cli::cmd_evaluate(config);
    else if (analyze->parsed()) rgm::cli::cmd_analyze(config);
    else if (pairwise->parsed()) rgm::cli::cmd_pairwise(config);
  } catch (const rgm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rgm::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const rgm::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
