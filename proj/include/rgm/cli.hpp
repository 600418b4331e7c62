#pragma once

// Pipeline commands behind the rgm tool. Each command reads and writes plain
// files so that stages can be run separately:
//
//   simulate  -> replicate_NNN/{data.csv, truth.json, truth.dot}
//   fit       -> samples.csv, summary.json, edges.csv
//   select    -> estimate.json, estimate.dot
//   evaluate  -> metrics.csv, roc_replicate_NNN.csv, roc_average.csv
//   analyze   -> motifs.json, degrees.csv, ordering.csv [, kendall.json]
//   pairwise  -> pairwise.csv, pairwise.json

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rgm/diagnostics.hpp"
#include "rgm/evaluation.hpp"
#include "rgm/inference.hpp"
#include "rgm/io.hpp"
#include "rgm/selection.hpp"
#include "rgm/sem.hpp"

namespace rgm::cli {

struct RunConfig {
  Hyperparameters hyper;
  McmcConfig mcmc;
  ScenarioSpec scenario;
  std::string rule = "mpm";
  double alpha = 0.1;
  std::vector<std::string> inputs;
  std::string out_dir;
  std::string reference_ordering;
  std::uint64_t seed = 1;
  int replicates = 1;
  bool standardize = false;
  std::vector<std::pair<std::string, std::string>> pairs;  // pairwise mode; empty = all pairs

  void validate() const {
    hyper.validate();
    mcmc.validate();
    scenario.validate();
    if (rule != "mpm" && rule != "fdr" && rule != "hpm") throw ValidationError("rule must be mpm, fdr or hpm");
    if (!(alpha > 0 && alpha < 1)) throw ValidationError("alpha must lie in (0, 1)");
    if (replicates < 1) throw ValidationError("replicates must be positive");
  }
};

// Reads the keys of a JSON config document into `config`. Keys mirror the
// command-line flags with '-' replaced by '_'; nested "hyperparameters" holds
// prior settings.
inline void apply_config(RunConfig& config, const json& doc) {
  try {
    if (!doc.is_object()) throw ValidationError("config: top level must be an object");
    static const std::vector<std::string> known = {
        "seed",  "scenario", "n",           "p",        "replicates",   "iterations",          "burn_in",
        "thin",  "chains",   "rule",        "alpha",    "standardize",  "out_dir",             "reference_ordering",
        "inputs", "hyperparameters", "pairs", "effect_magnitude", "noise_variance", "a_density", "b_density", "df",
        "a_proposal_sd", "b_proposal_sd", "t_proposal_scale", "adapt"};
    for (const auto& [key, _] : doc.items())
      if (std::find(known.begin(), known.end(), key) == known.end())
        throw ValidationError("config: unknown key '" + key + "'");
    if (doc.contains("scenario")) {
      const int s = doc["scenario"].get<int>();
      if (s < 1 || s > 3) throw ValidationError("scenario must be 1, 2 or 3");
      ScenarioSpec fresh = ScenarioSpec::defaults(s);
      fresh.n = config.scenario.n;
      fresh.p = config.scenario.p;
      config.scenario = fresh;
    }
    auto& sc = config.scenario;
    sc.n = doc.value("n", sc.n);
    sc.p = doc.value("p", sc.p);
    sc.effect_magnitude = doc.value("effect_magnitude", sc.effect_magnitude);
    sc.noise_variance = doc.value("noise_variance", sc.noise_variance);
    sc.a_density = doc.value("a_density", sc.a_density);
    sc.b_density = doc.value("b_density", sc.b_density);
    sc.df = doc.value("df", sc.df);
    auto& m = config.mcmc;
    m.iterations = doc.value("iterations", m.iterations);
    m.burn_in = doc.value("burn_in", m.burn_in);
    m.thin = doc.value("thin", m.thin);
    m.chains = doc.value("chains", m.chains);
    m.a_proposal_sd = doc.value("a_proposal_sd", m.a_proposal_sd);
    m.b_proposal_sd = doc.value("b_proposal_sd", m.b_proposal_sd);
    m.t_proposal_scale = doc.value("t_proposal_scale", m.t_proposal_scale);
    m.adapt = doc.value("adapt", m.adapt);
    config.seed = doc.value("seed", config.seed);
    config.replicates = doc.value("replicates", config.replicates);
    config.rule = doc.value("rule", config.rule);
    config.alpha = doc.value("alpha", config.alpha);
    config.standardize = doc.value("standardize", config.standardize);
    config.out_dir = doc.value("out_dir", config.out_dir);
    config.reference_ordering = doc.value("reference_ordering", config.reference_ordering);
    if (doc.contains("inputs")) config.inputs = doc["inputs"].get<std::vector<std::string>>();
    if (doc.contains("hyperparameters")) config.hyper = hyper_from_json(doc["hyperparameters"], config.hyper);
    if (doc.contains("pairs")) {
      config.pairs.clear();
      for (const auto& pr : doc["pairs"]) config.pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

inline std::string replicate_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "replicate_%03d", index);
  return buf;
}

// One unit of work: an input directory (optionally a specific file in it) and
// the directory its outputs go to.
struct WorkUnit {
  int index = 1;
  fs::path input_dir;
  std::optional<fs::path> file;
  fs::path output_dir;
};

// A file names a single unit; a directory with replicate_* children expands to
// one unit per child; any other directory is a single unit. Outputs default
// to the input location; with out_dir set, replicate units keep their names
// below it.
inline std::vector<WorkUnit> resolve_units(const fs::path& input, const std::string& out_dir) {
  std::error_code ec;
  if (!fs::exists(input, ec)) throw IoError("input not found: " + input.string());
  std::vector<WorkUnit> units;
  if (fs::is_regular_file(input, ec)) {
    const fs::path dir = input.has_parent_path() ? input.parent_path() : fs::path(".");
    units.push_back({1, dir, input, out_dir.empty() ? dir : fs::path(out_dir)});
    return units;
  }
  std::vector<fs::path> children;
  for (const auto& entry : fs::directory_iterator(input, ec))
    if (entry.is_directory() && entry.path().filename().string().rfind("replicate_", 0) == 0)
      children.push_back(entry.path());
  std::sort(children.begin(), children.end());
  if (children.empty()) {
    units.push_back({1, input, std::nullopt, out_dir.empty() ? input : fs::path(out_dir)});
    return units;
  }
  int index = 0;
  for (const auto& child : children) {
    ++index;
    const auto name = child.filename();
    const std::string digits = name.string().substr(10);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) index = std::stoi(digits);
    units.push_back({index, child, std::nullopt, out_dir.empty() ? child : fs::path(out_dir) / name});
  }
  return units;
}

inline std::vector<WorkUnit> resolve_inputs(const RunConfig& config) {
  if (config.inputs.empty()) throw ValidationError("no input path given");
  std::vector<WorkUnit> all;
  for (const auto& in : config.inputs) {
    auto units = resolve_units(in, config.out_dir);
    all.insert(all.end(), units.begin(), units.end());
  }
  return all;
}

inline std::uint64_t derived_seed(std::uint64_t seed, int index) {
  Rng rng = make_rng(seed, static_cast<std::uint64_t>(index));
  return rng();
}

// Ground truth rendered as an estimate that holds every nonzero coefficient.
inline GraphEstimate truth_estimate(const SemParameters& truth, const std::vector<std::string>& genes) {
  GraphEstimate g;
  g.p = truth.p;
  g.genes = genes;
  g.rule = SelectionRule::Cutoff;
  for (const Edge& e : candidate_edges(truth.p)) {
    const double v = truth.coefficient(e);
    if (v != 0.0) g.edges.push_back({e, 1.0, v, sign_of(v)});
  }
  return g;
}

// ---------------------------------------------------------------------------

inline void cmd_simulate(const RunConfig& config) {
  config.validate();
  if (config.out_dir.empty()) throw ValidationError("simulate: --out-dir is required");
  const fs::path root(config.out_dir);
  for (int r = 1; r <= config.replicates; ++r) {
    ScenarioSpec spec = config.scenario;
    spec.seed = derived_seed(config.seed, r);
    const Simulation sim = simulate(spec);
    const fs::path dir = root / replicate_name(r);
    write_text(dir / "data.csv", dataset_to_csv(sim.data));
    json truth = {{"scenario", scenario_to_json(spec)},
                  {"parameters", parameters_to_json(sim.truth)},
                  {"graph", graph_to_json(path_diagram(sim.truth))}};
    write_json(dir / "truth.json", truth);
    write_text(dir / "truth.dot", estimate_to_dot(truth_estimate(sim.truth, sim.data.gene_labels())));
  }
}

inline DataSet load_unit_data(const WorkUnit& unit) {
  const fs::path path = unit.file ? *unit.file : unit.input_dir / "data.csv";
  return read_dataset(path);
}

inline void write_fit(const fs::path& dir, const SampleStore& store) {
  write_text(dir / "samples.csv", samples_to_csv(store));
  write_json(dir / "summary.json", diagnostics_to_json(store, diagnose(store)));
  write_text(dir / "edges.csv", edge_table_to_csv(edge_probabilities(store)));
}

inline SampleStore read_fit(const fs::path& dir) {
  SampleStore store = samples_from_csv(read_text(dir / "samples.csv"), (dir / "samples.csv").string());
  if (fs::exists(dir / "summary.json")) apply_summary(store, read_json(dir / "summary.json"));
  return store;
}

inline void cmd_fit(const RunConfig& config) {
  config.validate();
  for (const auto& unit : resolve_inputs(config)) {
    DataSet data = load_unit_data(unit);
    data.validate();
    if (config.standardize) data = standardized(data);
    McmcConfig mcmc = config.mcmc;
    mcmc.seed = derived_seed(config.seed, unit.index);
    write_fit(unit.output_dir, run_chains(data, config.hyper, mcmc));
  }
}

inline GraphEstimate select_from_store(const SampleStore& store, const std::string& rule, double alpha) {
  if (rule == "hpm") return select_hpm(store);
  const EdgeProbabilityTable table = edge_probabilities(store);
  if (rule == "fdr") return select_fdr(table, alpha);
  return select_mpm(table);
}

inline void cmd_select(const RunConfig& config) {
  config.validate();
  for (const auto& unit : resolve_inputs(config)) {
    const SampleStore store = read_fit(unit.input_dir);
    const GraphEstimate g = select_from_store(store, config.rule, config.alpha);
    write_json(unit.output_dir / "estimate.json", estimate_to_json(g));
    write_text(unit.output_dir / "estimate.dot", estimate_to_dot(g));
  }
}

// With one input, truth and fit files live in the same replicate directories;
// with two, the first holds the truths and the second the fits.
inline void cmd_evaluate(const RunConfig& config) {
  config.validate();
  if (config.inputs.empty() || config.inputs.size() > 2)
    throw ValidationError("evaluate: expects a run directory, or a truth directory and a fit directory");
  const auto truth_units = resolve_units(config.inputs.front(), "");
  const auto fit_units = resolve_units(config.inputs.back(), "");
  if (truth_units.size() != fit_units.size())
    throw ValidationError("evaluate: " + std::to_string(truth_units.size()) + " truths but " +
                          std::to_string(fit_units.size()) + " fits");
  const fs::path out = config.out_dir.empty() ? fs::path(config.inputs.back()) : fs::path(config.out_dir);
  std::string rows = "replicate,tpr,fdr,mcc,auc\n";
  std::vector<std::array<double, 4>> values;
  std::vector<RocCurve> curves;
  for (std::size_t k = 0; k < truth_units.size(); ++k) {
    if (truth_units[k].index != fit_units[k].index)
      throw ValidationError("evaluate: replicate " + std::to_string(truth_units[k].index) + " has no matching fit");
    const json truth_doc = read_json(truth_units[k].input_dir / "truth.json");
    const SemParameters truth = parameters_from_json(truth_doc.at("parameters"));
    const fs::path fit_dir = fit_units[k].input_dir;
    const GraphEstimate estimate = estimate_from_json(read_json(fit_dir / "estimate.json"));
    const EdgeProbabilityTable table = edge_table_from_csv(read_text(fit_dir / "edges.csv"), (fit_dir / "edges.csv").string());
    if (estimate.p != truth.p || table.p != truth.p)
      throw ValidationError("evaluate: dimension mismatch in replicate " + std::to_string(truth_units[k].index));
    const ClassificationMetrics m = metrics(confusion(estimate, truth));
    const RocCurve curve = roc(table, truth);
    curves.push_back(curve);
    values.push_back({m.tpr, m.fdr, m.mcc, curve.auc});
    rows += std::to_string(truth_units[k].index) + ',' + format_double(m.tpr) + ',' + format_double(m.fdr) + ',' +
            format_double(m.mcc) + ',' + format_double(curve.auc) + '\n';
    write_text(out / ("roc_" + replicate_name(truth_units[k].index) + ".csv"), roc_to_csv(curve));
  }
  const double count = static_cast<double>(values.size());
  std::array<double, 4> mean{}, sd{};
  for (const auto& v : values)
    for (int c = 0; c < 4; ++c) mean[c] += v[c] / count;
  for (const auto& v : values)
    for (int c = 0; c < 4; ++c) sd[c] += (v[c] - mean[c]) * (v[c] - mean[c]);
  rows += "mean";
  for (int c = 0; c < 4; ++c) rows += ',' + format_double(mean[c]);
  rows += "\nsd";
  for (int c = 0; c < 4; ++c) rows += values.size() > 1 ? ',' + format_double(std::sqrt(sd[c] / (count - 1))) : ",";
  rows += '\n';
  write_text(out / "metrics.csv", rows);
  std::string avg = "fpr,tpr\n";
  for (const auto& pt : average_roc(curves)) avg += format_double(pt.fpr) + ',' + format_double(pt.tpr) + '\n';
  write_text(out / "roc_average.csv", avg);
}

inline void cmd_analyze(const RunConfig& config) {
  config.validate();
  std::optional<std::map<std::string, int>> reference;
  if (!config.reference_ordering.empty())
    reference = parse_reference_ordering(read_text(config.reference_ordering));
  for (const auto& unit : resolve_inputs(config)) {
    const SampleStore store = read_fit(unit.input_dir);
    const GraphEstimate estimate = estimate_from_json(read_json(unit.input_dir / "estimate.json"));
    if (estimate.p != store.p) throw ValidationError("analyze: estimate and samples disagree on p");
    const auto& genes = store.genes;
    write_json(unit.output_dir / "motifs.json", motifs_to_json(find_motifs(estimate), genes));
    write_text(unit.output_dir / "degrees.csv", degrees_to_csv(degree_posterior(store), genes));
    const std::vector<int> score = ordering_score(estimate);
    std::string ordering = "gene,score\n";
    for (int g = 0; g < store.p; ++g) ordering += genes[g] + ',' + std::to_string(score[g]) + '\n';
    write_text(unit.output_dir / "ordering.csv", ordering);
    if (reference) {
      if (reference->size() != genes.size())
        throw ValidationError("analyze: reference ordering lists " + std::to_string(reference->size()) +
                              " labels for " + std::to_string(genes.size()) + " genes");
      std::vector<int> groups;
      std::vector<double> ranking;
      for (int g = 0; g < store.p; ++g) {
        auto it = reference->find(genes[g]);
        if (it == reference->end()) throw ValidationError("analyze: gene '" + genes[g] + "' missing from reference");
        groups.push_back(it->second);
        ranking.push_back(score[g]);
      }
      write_json(unit.output_dir / "kendall.json",
                 {{"kendall_distance", kendall_distance(ranking, groups)}, {"groups", groups}, {"scores", score}});
    }
  }
}

// Restricts a data set to the listed genes (0-based), keeping their DNA columns.
inline DataSet subset_genes(const DataSet& data, const std::vector<int>& keep) {
  const int n = data.n();
  const int q = static_cast<int>(keep.size());
  const auto labels = data.gene_labels();
  DataSet out{MatrixXd(n, q), MatrixXd(n, 2 * q), {}};
  for (int c = 0; c < q; ++c) {
    out.Y.col(c) = data.Y.col(keep[c]);
    out.X.col(2 * c) = data.X.col(2 * keep[c]);
    out.X.col(2 * c + 1) = data.X.col(2 * keep[c] + 1);
    out.genes.push_back(labels[keep[c]]);
  }
  return out;
}

inline void cmd_pairwise(const RunConfig& config) {
  config.validate();
  for (const auto& unit : resolve_inputs(config)) {
    DataSet data = load_unit_data(unit);
    data.validate();
    if (config.standardize) data = standardized(data);
    const auto labels = data.gene_labels();
    auto index_of = [&](const std::string& name) {
      auto it = std::find(labels.begin(), labels.end(), name);
      if (it == labels.end()) throw ValidationError("pairwise: unknown gene '" + name + "'");
      return static_cast<int>(it - labels.begin());
    };
    std::vector<std::pair<int, int>> pairs;
    if (config.pairs.empty()) {
      for (int i = 0; i < data.p(); ++i)
        for (int j = i + 1; j < data.p(); ++j) pairs.emplace_back(i, j);
    } else {
      for (const auto& [a, b] : config.pairs) {
        if (a == b) throw ValidationError("pairwise: pair repeats gene '" + a + "'");
        pairs.emplace_back(index_of(a), index_of(b));
      }
    }
    if (pairs.empty()) throw ValidationError("pairwise: need at least two genes");
    std::string csv = "gene1,gene2,hpm_share,edges\n";
    json doc = json::array();
    int k = 0;
    for (auto [i, j] : pairs) {
      const DataSet sub = subset_genes(data, {i, j});
      McmcConfig mcmc = config.mcmc;
      mcmc.seed = derived_seed(derived_seed(config.seed, unit.index), ++k);
      const GraphEstimate g = select_hpm(run_chains(sub, config.hyper, mcmc));
      std::string edges;
      for (const auto& e : g.edges) edges += (edges.empty() ? "" : ";") + e.edge.name();
      csv += labels[i] + ',' + labels[j] + ',' + format_double(*g.hpm_share) + ',' + edges + '\n';
      doc.push_back({{"genes", {labels[i], labels[j]}}, {"estimate", estimate_to_json(g)}});
    }
    write_text(unit.output_dir / "pairwise.csv", csv);
    write_json(unit.output_dir / "pairwise.json", doc);
  }
}

}  // namespace rgm::cli
