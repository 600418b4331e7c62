#pragma once

// File formats: data and sample CSVs, JSON documents for parameters, graphs,
// estimates and reports, and Graphviz output for estimates.
//
// Doubles are written in shortest round-trip form so that every file parses
// back to exactly the values that were written.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "rgm/errors.hpp"
#include "rgm/evaluation.hpp"
#include "rgm/graph.hpp"
#include "rgm/inference.hpp"
#include "rgm/selection.hpp"
#include "rgm/sem.hpp"

namespace rgm {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buf, end);
}

inline double parse_double(std::string_view text, const std::string& where) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw IoError(where + ": cannot parse number '" + std::string(text) + "'");
  return v;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

inline json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

inline void write_json(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline std::vector<std::string_view> csv_lines(const std::string& text) {
  std::vector<std::string_view> lines;
  std::string_view all(text);
  std::size_t start = 0;
  while (start < all.size()) {
    auto nl = all.find('\n', start);
    auto line = all.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!(line.empty() || line == "\r")) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

inline std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// DataSet CSV

inline std::string dataset_to_csv(const DataSet& data) {
  std::string out;
  const int p = data.p();
  for (int i = 1; i <= p; ++i) out += (i > 1 ? ",Y" : "Y") + std::to_string(i);
  for (int k = 1; k <= 2 * p; ++k) out += ",X" + std::to_string(k);
  out += '\n';
  for (int r = 0; r < data.n(); ++r) {
    for (int i = 0; i < p; ++i) {
      if (i) out += ',';
      out += format_double(data.Y(r, i));
    }
    for (int k = 0; k < 2 * p; ++k) {
      out += ',';
      out += format_double(data.X(r, k));
    }
    out += '\n';
  }
  return out;
}

// Accepts either the positional header Y1..Yp,X1..X2p or a named header where
// every gene has three columns "<gene>:GE", "<gene>:CN" and "<gene>:ME" in any
// order. Named genes are ordered by their GE column; CN maps to X_{2i-1} and
// ME to X_{2i}.
inline DataSet dataset_from_csv(const std::string& text, const std::string& source = "data") {
  auto lines = detail::csv_lines(text);
  if (lines.empty()) throw IoError(source + ": empty file");
  auto header = detail::split_csv_line(lines[0]);
  const int columns = static_cast<int>(header.size());

  std::vector<int> y_col, x_col;  // destination index per source column
  std::vector<std::string> genes;
  bool positional = !header.empty() && detail::trim(header[0]).rfind("Y", 0) == 0 &&
                    detail::trim(header[0]).find(':') == std::string::npos;
  if (positional) {
    if (columns % 3 != 0) throw IoError(source + ": header must have 3p columns");
    const int p = columns / 3;
    for (int c = 0; c < columns; ++c) {
      const std::string expect = c < p ? "Y" + std::to_string(c + 1) : "X" + std::to_string(c - p + 1);
      if (detail::trim(header[c]) != expect)
        throw IoError(source + ": line 1: expected column '" + expect + "', found '" + detail::trim(header[c]) + "'");
    }
    y_col.assign(columns, -1);
    x_col.assign(columns, -1);
    for (int c = 0; c < columns; ++c) (c < p ? y_col[c] : x_col[c]) = c < p ? c : c - p;
  } else {
    std::map<std::string, std::map<std::string, int>> by_gene;
    for (int c = 0; c < columns; ++c) {
      const std::string name = detail::trim(header[c]);
      const auto colon = name.rfind(':');
      if (colon == std::string::npos)
        throw IoError(source + ": line 1: column '" + name + "' is neither positional nor <gene>:<GE|CN|ME>");
      const std::string gene = name.substr(0, colon), platform = name.substr(colon + 1);
      if (platform != "GE" && platform != "CN" && platform != "ME")
        throw IoError(source + ": line 1: unknown platform in column '" + name + "'");
      if (by_gene[gene].count(platform)) throw IoError(source + ": line 1: duplicate column '" + name + "'");
      by_gene[gene][platform] = c;
      if (platform == "GE") genes.push_back(gene);
    }
    if (genes.size() != by_gene.size()) throw IoError(source + ": every gene needs a GE column");
    y_col.assign(columns, -1);
    x_col.assign(columns, -1);
    for (std::size_t g = 0; g < genes.size(); ++g) {
      auto& cols = by_gene[genes[g]];
      if (cols.size() != 3) throw IoError(source + ": gene '" + genes[g] + "' needs GE, CN and ME columns");
      y_col[cols["GE"]] = static_cast<int>(g);
      x_col[cols["CN"]] = static_cast<int>(2 * g);
      x_col[cols["ME"]] = static_cast<int>(2 * g + 1);
    }
  }

  const int p = columns / 3;
  const int n = static_cast<int>(lines.size()) - 1;
  DataSet data{MatrixXd(n, p), MatrixXd(n, 2 * p), genes};
  for (int r = 0; r < n; ++r) {
    const std::string where = source + ": line " + std::to_string(r + 2);
    auto fields = detail::split_csv_line(lines[r + 1]);
    if (static_cast<int>(fields.size()) != columns)
      throw IoError(where + ": expected " + std::to_string(columns) + " fields, found " + std::to_string(fields.size()));
    for (int c = 0; c < columns; ++c) {
      const double v = parse_double(fields[c], where);
      if (!std::isfinite(v)) throw NumericalError(where + ": non-finite value");
      if (y_col[c] >= 0) data.Y(r, y_col[c]) = v;
      else data.X(r, x_col[c]) = v;
    }
  }
  return data;
}

inline DataSet read_dataset(const fs::path& path) { return dataset_from_csv(read_text(path), path.string()); }

// ---------------------------------------------------------------------------
// Graphs

inline json graph_to_json(const ReciprocalGraph& g) {
  json directed = json::array(), undirected = json::array();
  for (auto [a, b] : g.directed_edges()) directed.push_back({a, b});
  for (auto [a, b] : g.undirected_edges()) undirected.push_back({a, b});
  return {{"p", g.vertex_count()}, {"directed", directed}, {"undirected", undirected}};
}

inline ReciprocalGraph graph_from_json(const json& doc) {
  try {
    std::vector<DirectedEdge> d;
    std::vector<UndirectedEdge> u;
    for (const auto& e : doc.at("directed")) d.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    for (const auto& e : doc.at("undirected")) u.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return ReciprocalGraph(doc.at("p").get<int>(), d, u);
  } catch (const json::exception& e) {
    throw IoError(std::string("graph JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Parameters and configuration

inline json matrix_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

inline MatrixXd matrix_from_json(const json& rows, Eigen::Index expect_rows, Eigen::Index expect_cols) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != expect_rows)
    throw IoError("matrix JSON: wrong row count");
  MatrixXd m(expect_rows, expect_cols);
  for (Eigen::Index r = 0; r < expect_rows; ++r) {
    if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != expect_cols)
      throw IoError("matrix JSON: wrong column count in row " + std::to_string(r + 1));
    for (Eigen::Index c = 0; c < expect_cols; ++c) m(r, c) = rows[r][c].get<double>();
  }
  return m;
}

inline json parameters_to_json(const SemParameters& params) {
  json sigma = json::array();
  for (int i = 0; i < params.p; ++i) sigma.push_back(params.sigma(i));
  return {{"p", params.p}, {"A", matrix_to_json(params.A)}, {"B", matrix_to_json(params.B)}, {"sigma", sigma}};
}

inline SemParameters parameters_from_json(const json& doc) {
  try {
    SemParameters params;
    params.p = doc.at("p").get<int>();
    if (params.p < 1) throw ValidationError("parameters JSON: p must be positive");
    params.A = matrix_from_json(doc.at("A"), params.p, params.p);
    params.B = matrix_from_json(doc.at("B"), params.p, 2 * params.p);
    const auto& sigma = doc.at("sigma");
    if (static_cast<int>(sigma.size()) != params.p) throw IoError("parameters JSON: sigma must have length p");
    params.sigma.resize(params.p);
    for (int i = 0; i < params.p; ++i) params.sigma(i) = sigma[i].get<double>();
    params.validate();
    return params;
  } catch (const json::exception& e) {
    throw IoError(std::string("parameters JSON: ") + e.what());
  }
}

inline json scenario_to_json(const ScenarioSpec& s) {
  return {{"scenario", s.scenario},   {"n", s.n},
          {"p", s.p},                 {"effect_magnitude", s.effect_magnitude},
          {"noise_variance", s.noise_variance}, {"a_density", s.a_density},
          {"b_density", s.b_density}, {"df", s.df},
          {"seed", s.seed}};
}

inline ScenarioSpec scenario_from_json(const json& doc) {
  try {
    ScenarioSpec s = ScenarioSpec::defaults(doc.value("scenario", 1));
    s.n = doc.value("n", s.n);
    s.p = doc.value("p", s.p);
    s.effect_magnitude = doc.value("effect_magnitude", s.effect_magnitude);
    s.noise_variance = doc.value("noise_variance", s.noise_variance);
    s.a_density = doc.value("a_density", s.a_density);
    s.b_density = doc.value("b_density", s.b_density);
    s.df = doc.value("df", s.df);
    s.seed = doc.value("seed", s.seed);
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario JSON: ") + e.what());
  }
}

inline json hyper_to_json(const Hyperparameters& h) {
  return {{"alpha_tau", h.alpha_tau},     {"beta_tau", h.beta_tau},     {"alpha_nu", h.alpha_nu},
          {"beta_nu", h.beta_nu},         {"alpha_sigma", h.alpha_sigma}, {"beta_sigma", h.beta_sigma},
          {"t0", h.t0}};
}

inline Hyperparameters hyper_from_json(const json& doc, Hyperparameters h = {}) {
  h.alpha_tau = doc.value("alpha_tau", h.alpha_tau);
  h.beta_tau = doc.value("beta_tau", h.beta_tau);
  h.alpha_nu = doc.value("alpha_nu", h.alpha_nu);
  h.beta_nu = doc.value("beta_nu", h.beta_nu);
  h.alpha_sigma = doc.value("alpha_sigma", h.alpha_sigma);
  h.beta_sigma = doc.value("beta_sigma", h.beta_sigma);
  h.t0 = doc.value("t0", h.t0);
  return h;
}

inline json mcmc_to_json(const McmcConfig& c) {
  return {{"iterations", c.iterations},       {"burn_in", c.burn_in},
          {"thin", c.thin},                   {"a_proposal_sd", c.a_proposal_sd},
          {"b_proposal_sd", c.b_proposal_sd}, {"t_proposal_scale", c.t_proposal_scale},
          {"adapt", c.adapt},                 {"seed", c.seed},
          {"chains", c.chains}};
}

// ---------------------------------------------------------------------------
// Sample store: one CSV row per retained draw

inline std::string samples_to_csv(const SampleStore& store) {
  const int p = store.p;
  std::string out = "chain,iteration,log_posterior";
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j)
      if (i != j) out += ",a_" + std::to_string(i) + "_" + std::to_string(j);
  for (int i = 1; i <= p; ++i)
    for (int k = 2 * i - 1; k <= 2 * i; ++k) out += ",b_" + std::to_string(i) + "_" + std::to_string(k);
  for (int i = 1; i <= p; ++i) out += ",t_" + std::to_string(i);
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j)
      if (i != j) out += ",tau_" + std::to_string(i) + "_" + std::to_string(j);
  for (int i = 1; i <= p; ++i)
    for (int k = 2 * i - 1; k <= 2 * i; ++k) out += ",nu_" + std::to_string(i) + "_" + std::to_string(k);
  for (int i = 1; i <= p; ++i) out += ",sigma_" + std::to_string(i);
  out += '\n';
  for (std::size_t c = 0; c < store.chains.size(); ++c) {
    for (const auto& d : store.chains[c].draws) {
      const auto& s = d.state;
      out += std::to_string(c + 1) + ',' + std::to_string(d.iteration) + ',' + format_double(d.log_posterior);
      auto put = [&](double v) {
        out += ',';
        out += format_double(v);
      };
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          if (i != j) put(s.a_tilde(i, j));
      for (int i = 0; i < p; ++i)
        for (int k = 2 * i; k < 2 * i + 2; ++k) put(s.b_tilde(i, k));
      for (int i = 0; i < p; ++i) put(s.t(i));
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          if (i != j) put(s.tau(i, j));
      for (int i = 0; i < p; ++i)
        for (int k = 2 * i; k < 2 * i + 2; ++k) put(s.nu(i, k));
      for (int i = 0; i < p; ++i) put(s.sigma(i));
      out += '\n';
    }
  }
  return out;
}

inline SampleStore samples_from_csv(const std::string& text, const std::string& source = "samples") {
  auto lines = detail::csv_lines(text);
  if (lines.empty()) throw IoError(source + ": empty file");
  auto header = detail::split_csv_line(lines[0]);
  // 3 + 2p(p-1) + 6p columns.
  int p = 0;
  while (3 + 2 * p * (p - 1) + 6 * p < static_cast<int>(header.size())) ++p;
  if (p < 1 || 3 + 2 * p * (p - 1) + 6 * p != static_cast<int>(header.size()) || header[0] != "chain")
    throw IoError(source + ": line 1: unrecognised sample header");
  SampleStore store;
  store.p = p;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::string where = source + ": line " + std::to_string(r + 1);
    auto f = detail::split_csv_line(lines[r]);
    if (f.size() != header.size()) throw IoError(where + ": wrong field count");
    std::size_t at = 0;
    auto next = [&] { return parse_double(f[at++], where); };
    const int chain = static_cast<int>(next());
    if (chain < 1) throw IoError(where + ": chain index must be positive");
    if (static_cast<int>(store.chains.size()) < chain) store.chains.resize(chain);
    Draw d;
    d.iteration = static_cast<int>(next());
    d.log_posterior = next();
    PriorState& s = d.state;
    s.p = p;
    s.a_tilde = MatrixXd::Zero(p, p);
    s.b_tilde = MatrixXd::Zero(p, 2 * p);
    s.t.resize(p);
    s.tau = MatrixXd::Zero(p, p);
    s.nu = MatrixXd::Zero(p, 2 * p);
    s.sigma.resize(p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (i != j) s.a_tilde(i, j) = next();
    for (int i = 0; i < p; ++i)
      for (int k = 2 * i; k < 2 * i + 2; ++k) s.b_tilde(i, k) = next();
    for (int i = 0; i < p; ++i) s.t(i) = next();
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (i != j) s.tau(i, j) = next();
    for (int i = 0; i < p; ++i)
      for (int k = 2 * i; k < 2 * i + 2; ++k) s.nu(i, k) = next();
    for (int i = 0; i < p; ++i) s.sigma(i) = next();
    store.chains[chain - 1].draws.push_back(std::move(d));
  }
  store.genes = DataSet{MatrixXd(0, p), MatrixXd(0, 2 * p), {}}.gene_labels();
  return store;
}

// ---------------------------------------------------------------------------
// Edge probabilities and estimates

inline std::string edge_kind_name(EdgeKind k) { return k == EdgeKind::GeneToGene ? "gene" : "dna"; }

inline std::string edge_table_to_csv(const EdgeProbabilityTable& table) {
  std::string out = "edge,kind,target,source,probability,conditional_mean,included\n";
  for (const auto& s : table.edges) {
    out += s.edge.name() + ',' + edge_kind_name(s.edge.kind) + ',' + std::to_string(s.edge.target) + ',' +
           std::to_string(s.edge.source) + ',' + format_double(s.probability) + ',' +
           format_double(s.conditional_mean) + ',' + std::to_string(s.included) + '\n';
  }
  return out;
}

inline EdgeProbabilityTable edge_table_from_csv(const std::string& text, const std::string& source = "edges") {
  auto lines = detail::csv_lines(text);
  if (lines.empty() || lines[0] != "edge,kind,target,source,probability,conditional_mean,included")
    throw IoError(source + ": line 1: unrecognised edge table header");
  EdgeProbabilityTable table;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::string where = source + ": line " + std::to_string(r + 1);
    auto f = detail::split_csv_line(lines[r]);
    if (f.size() != 7) throw IoError(where + ": expected 7 fields");
    EdgeSummary s;
    if (f[1] == "gene") s.edge.kind = EdgeKind::GeneToGene;
    else if (f[1] == "dna") s.edge.kind = EdgeKind::DnaToGene;
    else throw IoError(where + ": unknown edge kind");
    s.edge.target = static_cast<int>(parse_double(f[2], where));
    s.edge.source = static_cast<int>(parse_double(f[3], where));
    s.probability = parse_double(f[4], where);
    s.conditional_mean = parse_double(f[5], where);
    s.included = static_cast<std::uint64_t>(parse_double(f[6], where));
    table.edges.push_back(s);
  }
  const int count = static_cast<int>(table.edges.size());
  int p = 1;
  while (p * (p - 1) + 2 * p < count) ++p;
  if (p * (p - 1) + 2 * p != count) throw IoError(source + ": row count is not p(p-1)+2p");
  table.p = p;
  if (count && table.edges[0].included) {
    table.draws = static_cast<std::uint64_t>(std::llround(table.edges[0].included / table.edges[0].probability));
  }
  return table;
}

inline json estimate_to_json(const GraphEstimate& g) {
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"edge", e.edge.name()},
                     {"kind", edge_kind_name(e.edge.kind)},
                     {"target", e.edge.target},
                     {"source", e.edge.source},
                     {"probability", e.probability},
                     {"effect", e.effect},
                     {"sign", static_cast<int>(e.sign)}});
  }
  json doc = {{"p", g.p},
              {"genes", g.genes},
              {"rule", rule_name(g.rule)},
              {"expected_fdr", g.expected_fdr},
              {"fdr_unmet", g.fdr_unmet},
              {"edges", edges}};
  doc["alpha"] = g.alpha ? json(*g.alpha) : json(nullptr);
  doc["cutoff"] = g.cutoff ? json(*g.cutoff) : json(nullptr);
  doc["hpm_share"] = g.hpm_share ? json(*g.hpm_share) : json(nullptr);
  return doc;
}

inline GraphEstimate estimate_from_json(const json& doc) {
  try {
    GraphEstimate g;
    g.p = doc.at("p").get<int>();
    g.genes = doc.at("genes").get<std::vector<std::string>>();
    const std::string rule = doc.at("rule").get<std::string>();
    if (rule == "mpm") g.rule = SelectionRule::Mpm;
    else if (rule == "fdr") g.rule = SelectionRule::Fdr;
    else if (rule == "hpm") g.rule = SelectionRule::Hpm;
    else if (rule == "cutoff") g.rule = SelectionRule::Cutoff;
    else throw IoError("estimate JSON: unknown rule '" + rule + "'");
    g.expected_fdr = doc.at("expected_fdr").get<double>();
    g.fdr_unmet = doc.at("fdr_unmet").get<bool>();
    if (!doc.at("alpha").is_null()) g.alpha = doc["alpha"].get<double>();
    if (!doc.at("cutoff").is_null()) g.cutoff = doc["cutoff"].get<double>();
    if (!doc.at("hpm_share").is_null()) g.hpm_share = doc["hpm_share"].get<double>();
    for (const auto& e : doc.at("edges")) {
      SelectedEdge s;
      s.edge.kind = e.at("kind").get<std::string>() == "gene" ? EdgeKind::GeneToGene : EdgeKind::DnaToGene;
      s.edge.target = e.at("target").get<int>();
      s.edge.source = e.at("source").get<int>();
      s.probability = e.at("probability").get<double>();
      s.effect = e.at("effect").get<double>();
      s.sign = static_cast<EffectSign>(e.at("sign").get<int>());
      g.edges.push_back(s);
    }
    return g;
  } catch (const json::exception& e) {
    throw IoError(std::string("estimate JSON: ") + e.what());
  }
}

// Arrowheads for stimulatory edges, dashed tee bars for inhibitory ones, pen
// width proportional to posterior inclusion probability. DNA-level nodes are
// named <gene>:c (copy number) and <gene>:m (methylation).
inline std::string estimate_to_dot(const GraphEstimate& g) {
  std::vector<std::string> genes = g.genes;
  if (static_cast<int>(genes.size()) != g.p) {
    genes.clear();
    for (int i = 1; i <= g.p; ++i) genes.push_back("Y" + std::to_string(i));
  }
  auto source_name = [&](const Edge& e) {
    if (e.kind == EdgeKind::GeneToGene) return genes[e.source - 1];
    return genes[(e.source - 1) / 2] + ((e.source % 2) ? ":c" : ":m");
  };
  std::ostringstream os;
  os << "digraph estimate {\n";
  for (const auto& name : genes) os << "  \"" << name << "\";\n";
  for (const auto& e : g.edges) {
    if (e.edge.kind == EdgeKind::DnaToGene) os << "  \"" << source_name(e.edge) << "\" [shape=box];\n";
  }
  for (const auto& e : g.edges) {
    const bool inhibitory = e.sign == EffectSign::Negative;
    os << "  \"" << source_name(e.edge) << "\" -> \"" << genes[e.edge.target - 1] << "\" [arrowhead="
       << (inhibitory ? "tee, style=dashed" : "normal, style=solid") << ", penwidth=" << format_double(3.0 * e.probability)
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Reports

inline std::string sign_name(EffectSign s) {
  switch (s) {
    case EffectSign::Positive: return "+";
    case EffectSign::Negative: return "-";
    default: return "?";
  }
}

inline json motifs_to_json(const MotifReport& report, const std::vector<std::string>& genes) {
  auto name = [&](int g) { return genes.at(g - 1); };
  json ffl = json::array(), fb = json::array(), cas = json::array();
  for (const auto& m : report.feed_forward) {
    ffl.push_back({{"genes", {name(m.regulator), name(m.intermediate), name(m.target)}},
                   {"signs", {sign_name(m.regulator_to_intermediate), sign_name(m.intermediate_to_target),
                              sign_name(m.regulator_to_target)}}});
  }
  for (const auto& m : report.feedback) {
    fb.push_back({{"genes", {name(m.first), name(m.second)}},
                  {"signs", {sign_name(m.forward), sign_name(m.backward)}},
                  {"type", m.positive ? "positive" : "negative"}});
  }
  for (const auto& m : report.cascades) {
    json names = json::array(), signs = json::array();
    for (int g : m.genes) names.push_back(name(g));
    for (auto s : m.signs) signs.push_back(sign_name(s));
    cas.push_back({{"genes", names}, {"signs", signs}});
  }
  return {{"feed_forward_loops", ffl}, {"feedback_loops", fb}, {"cascades", cas}};
}

inline std::string degrees_to_csv(const DegreePosterior& d, const std::vector<std::string>& genes) {
  std::string out = "gene,mean,min,q1,median,q3,max\n";
  for (int g = 0; g < d.p; ++g) {
    const auto& s = d.genes[g];
    out += genes.at(g) + ',' + format_double(s.mean) + ',' + format_double(s.min) + ',' + format_double(s.q1) + ',' +
           format_double(s.median) + ',' + format_double(s.q3) + ',' + format_double(s.max) + '\n';
  }
  return out;
}

inline std::string roc_to_csv(const RocCurve& curve) {
  std::string out = "cutoff,fpr,tpr\n";
  for (const auto& pt : curve.points)
    out += format_double(pt.cutoff) + ',' + format_double(pt.fpr) + ',' + format_double(pt.tpr) + '\n';
  return out;
}

// Reference ordering file: one tie group per line, labels separated by
// whitespace or commas. Returns the group position (0-based) per gene label.
inline std::map<std::string, int> parse_reference_ordering(const std::string& text) {
  std::map<std::string, int> group_of;
  std::istringstream in(text);
  std::string line;
  int group = 0;
  while (std::getline(in, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == '{' || ch == '}') ch = ' ';
    std::istringstream words(line);
    std::string label;
    bool any = false;
    while (words >> label) {
      if (!group_of.emplace(label, group).second)
        throw ValidationError("reference ordering: label '" + label + "' appears twice");
      any = true;
    }
    if (any) ++group;
  }
  return group_of;
}

}  // namespace rgm
