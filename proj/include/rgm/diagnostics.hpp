#pragma once

// Plumbing diagnostics for fitted chains: batch-means effective sample sizes
// and acceptance rates, per chain and pooled.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "rgm/inference.hpp"
#include "rgm/io.hpp"

namespace rgm {

// Batch means with batch length floor(sqrt(n)). A constant series has no
// autocorrelation to speak of and is reported with ESS = n.
inline double effective_sample_size(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 4) return static_cast<double>(n);
  const std::size_t len = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  const std::size_t batches = n / len;
  const std::size_t used = batches * len;
  double mean = 0.0;
  for (std::size_t k = 0; k < used; ++k) mean += x[k];
  mean /= static_cast<double>(used);
  double var = 0.0;
  for (std::size_t k = 0; k < used; ++k) var += (x[k] - mean) * (x[k] - mean);
  var /= static_cast<double>(used - 1);
  if (var <= 0.0) return static_cast<double>(n);
  double batch_var = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    double m = 0.0;
    for (std::size_t k = b * len; k < (b + 1) * len; ++k) m += x[k];
    m /= static_cast<double>(len);
    batch_var += (m - mean) * (m - mean);
  }
  batch_var = batch_var * static_cast<double>(len) / static_cast<double>(batches - 1);
  if (batch_var <= 0.0) return static_cast<double>(n);
  return static_cast<double>(n) * var / batch_var;
}

struct ParameterSummary {
  std::string name;
  double mean = 0.0;
  double sd = 0.0;
  double ess = 0.0;
};

struct ChainDiagnostics {
  std::uint64_t seed = 0;
  std::size_t draws = 0;
  AcceptanceStats acceptance;
  std::vector<ParameterSummary> parameters;
};

struct DiagnosticsReport {
  std::vector<ChainDiagnostics> chains;
  std::vector<ParameterSummary> pooled;  // ESS summed over chains
};

namespace detail {

// Monitored scalars: log posterior, latent coefficients on the mask,
// thresholds and error variances.
inline std::vector<std::pair<std::string, std::vector<double>>> traces(const ChainResult& chain, int p) {
  std::vector<std::pair<std::string, std::vector<double>>> out;
  auto add = [&](std::string name, auto get) {
    std::vector<double> v;
    v.reserve(chain.draws.size());
    for (const auto& d : chain.draws) v.push_back(get(d));
    out.emplace_back(std::move(name), std::move(v));
  };
  add("log_posterior", [](const Draw& d) { return d.log_posterior; });
  for (const Edge& e : candidate_edges(p)) {
    const std::string prefix = e.kind == EdgeKind::GeneToGene ? "a_" : "b_";
    add(prefix + std::to_string(e.target) + "_" + std::to_string(e.source),
        [e](const Draw& d) { return d.state.latent(e); });
  }
  for (int i = 0; i < p; ++i) add("t_" + std::to_string(i + 1), [i](const Draw& d) { return d.state.t(i); });
  for (int i = 0; i < p; ++i) add("sigma_" + std::to_string(i + 1), [i](const Draw& d) { return d.state.sigma(i); });
  return out;
}

inline ParameterSummary summarize(std::string name, std::span<const double> x) {
  ParameterSummary s;
  s.name = std::move(name);
  if (x.empty()) return s;
  for (double v : x) s.mean += v;
  s.mean /= static_cast<double>(x.size());
  if (x.size() > 1) {
    double ss = 0.0;
    for (double v : x) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  }
  s.ess = effective_sample_size(x);
  return s;
}

}  // namespace detail

inline DiagnosticsReport diagnose(const SampleStore& store) {
  DiagnosticsReport report;
  std::vector<std::vector<double>> pooled_values;
  for (const auto& chain : store.chains) {
    ChainDiagnostics cd;
    cd.seed = chain.seed;
    cd.draws = chain.draws.size();
    cd.acceptance = chain.acceptance;
    const auto tr = detail::traces(chain, store.p);
    if (pooled_values.empty()) {
      pooled_values.resize(tr.size());
      report.pooled.resize(tr.size());
      for (std::size_t k = 0; k < tr.size(); ++k) report.pooled[k].name = tr[k].first;
    }
    for (std::size_t k = 0; k < tr.size(); ++k) {
      cd.parameters.push_back(detail::summarize(tr[k].first, tr[k].second));
      pooled_values[k].insert(pooled_values[k].end(), tr[k].second.begin(), tr[k].second.end());
      report.pooled[k].ess += cd.parameters.back().ess;
    }
    report.chains.push_back(std::move(cd));
  }
  for (std::size_t k = 0; k < report.pooled.size(); ++k) {
    const auto s = detail::summarize(report.pooled[k].name, pooled_values[k]);
    report.pooled[k].mean = s.mean;
    report.pooled[k].sd = s.sd;
  }
  return report;
}

inline json acceptance_to_json(const AcceptanceStats& a) {
  auto one = [](const AcceptanceCounts& c) {
    return json{{"proposed", c.proposed}, {"accepted", c.accepted}, {"rate", c.rate()}};
  };
  return {{"a", one(a.a)}, {"b", one(a.b)}, {"t", one(a.t)}};
}

inline json diagnostics_to_json(const SampleStore& store, const DiagnosticsReport& report) {
  auto params = [](const std::vector<ParameterSummary>& ps) {
    json out = json::array();
    for (const auto& s : ps) out.push_back({{"name", s.name}, {"mean", s.mean}, {"sd", s.sd}, {"ess", s.ess}});
    return out;
  };
  json chains = json::array();
  AcceptanceStats total;
  for (const auto& c : report.chains) {
    chains.push_back({{"seed", c.seed},
                      {"draws", c.draws},
                      {"acceptance", acceptance_to_json(c.acceptance)},
                      {"parameters", params(c.parameters)}});
    for (auto [dst, src] : {std::pair{&total.a, &c.acceptance.a}, {&total.b, &c.acceptance.b}, {&total.t, &c.acceptance.t}}) {
      dst->proposed += src->proposed;
      dst->accepted += src->accepted;
    }
  }
  return {{"p", store.p},
          {"genes", store.genes},
          {"draws", store.size()},
          {"chains", chains},
          {"pooled", {{"acceptance", acceptance_to_json(total)}, {"parameters", params(report.pooled)}}}};
}

// Restores gene labels, chain seeds and acceptance counts from a summary
// written by diagnostics_to_json into a store read back from samples CSV.
inline void apply_summary(SampleStore& store, const json& summary) {
  try {
    if (summary.at("p").get<int>() != store.p) throw IoError("summary and samples disagree on p");
    store.genes = summary.at("genes").get<std::vector<std::string>>();
    const auto& chains = summary.at("chains");
    if (chains.size() != store.chains.size()) throw IoError("summary and samples disagree on chain count");
    for (std::size_t c = 0; c < chains.size(); ++c) {
      store.chains[c].seed = chains[c].at("seed").get<std::uint64_t>();
      const auto& acc = chains[c].at("acceptance");
      for (auto [dst, key] : {std::pair{&store.chains[c].acceptance.a, "a"}, {&store.chains[c].acceptance.b, "b"},
                              {&store.chains[c].acceptance.t, "t"}}) {
        dst->proposed = acc.at(key).at("proposed").get<std::uint64_t>();
        dst->accepted = acc.at(key).at("accepted").get<std::uint64_t>();
      }
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("summary JSON: ") + e.what());
  }
}

}  // namespace rgm
