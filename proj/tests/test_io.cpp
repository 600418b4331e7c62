#include <gtest/gtest.h>

#include "rgm/diagnostics.hpp"
#include "rgm/io.hpp"

using namespace rgm;

namespace {

SampleStore small_fit() {
  ScenarioSpec spec = ScenarioSpec::defaults(1);
  spec.p = 3;
  spec.n = 60;
  spec.seed = 5;
  const Simulation sim = simulate(spec);
  McmcConfig c;
  c.iterations = 300;
  c.burn_in = 100;
  c.thin = 10;
  c.chains = 2;
  return run_chains(sim.data, {}, c);
}

}  // namespace

TEST(Numbers, ShortestRoundTrip) {
  Rng rng = make_rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double v = standard_normal(rng) * std::pow(10.0, static_cast<int>(uniform01(rng) * 40) - 20);
    EXPECT_EQ(parse_double(format_double(v), "t"), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_THROW(parse_double("1.5x", "here"), IoError);
  EXPECT_THROW(parse_double("", "here"), IoError);
}

TEST(DataCsv, RoundTripIsExact) {
  ScenarioSpec spec = ScenarioSpec::defaults(3);
  spec.p = 4;
  spec.n = 25;
  const Simulation sim = simulate(spec);
  const std::string csv = dataset_to_csv(sim.data);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "Y1,Y2,Y3,Y4,X1,X2,X3,X4,X5,X6,X7,X8");
  const DataSet back = dataset_from_csv(csv);
  EXPECT_EQ(back.Y, sim.data.Y);
  EXPECT_EQ(back.X, sim.data.X);
  EXPECT_EQ(dataset_to_csv(back), csv);
}

TEST(DataCsv, NamedHeaderMapsPlatforms) {
  const std::string csv =
      "TP53:ME,KRAS:GE,TP53:GE,KRAS:CN,TP53:CN,KRAS:ME\n"
      "1,2,3,4,5,6\n"
      "7,8,9,10,11,12\r\n";
  const DataSet d = dataset_from_csv(csv);
  EXPECT_EQ(d.genes, (std::vector<std::string>{"KRAS", "TP53"}));
  EXPECT_EQ(d.Y(0, 0), 2);
  EXPECT_EQ(d.Y(0, 1), 3);
  EXPECT_EQ(d.X(0, 0), 4);  // KRAS copy number
  EXPECT_EQ(d.X(0, 1), 6);  // KRAS methylation
  EXPECT_EQ(d.X(1, 2), 11);
  EXPECT_EQ(d.X(1, 3), 7);
}

TEST(DataCsv, ErrorsNameTheLine) {
  const std::string bad = "Y1,X1,X2\n1,2,3\n4,oops,6\n";
  try {
    dataset_from_csv(bad, "d.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("d.csv: line 3"), std::string::npos);
  }
  EXPECT_THROW(dataset_from_csv("Y1,X1,X2\n1,2\n"), IoError);
  EXPECT_THROW(dataset_from_csv("Y1,X2,X1\n1,2,3\n"), IoError);
  EXPECT_THROW(dataset_from_csv("Y1,Y2,X1,X2\n"), IoError);
  EXPECT_THROW(dataset_from_csv("A:GE,A:CN\n1,2\n"), IoError);
  EXPECT_THROW(dataset_from_csv("Y1,X1,X2\n1,nan,3\n"), NumericalError);
  EXPECT_THROW(dataset_from_csv(""), IoError);
}

TEST(GraphJson, RoundTrip) {
  ReciprocalGraph g(4, {{1, 2}, {2, 1}, {3, 1}}, {{2, 4}});
  const json doc = graph_to_json(g);
  EXPECT_EQ(doc["p"], 4);
  EXPECT_TRUE(graph_from_json(doc) == g);
  EXPECT_TRUE(graph_from_json(json::parse(doc.dump())) == g);
  EXPECT_THROW(graph_from_json(json{{"p", 2}}), IoError);
}

TEST(ParametersJson, RoundTripIsExact) {
  ScenarioSpec spec = ScenarioSpec::defaults(1);
  const Simulation sim = simulate(spec);
  SemParameters params = sim.truth;
  params.sigma(0) = 0.1 + 1e-17;
  const SemParameters back = parameters_from_json(json::parse(parameters_to_json(params).dump()));
  EXPECT_EQ(back.A, params.A);
  EXPECT_EQ(back.B, params.B);
  EXPECT_EQ(back.sigma, params.sigma);
  json broken = parameters_to_json(params);
  broken["B"][0][5] = 1.0;
  EXPECT_THROW(parameters_from_json(broken), ValidationError);
}

TEST(ScenarioJson, RoundTrip) {
  ScenarioSpec s = ScenarioSpec::defaults(2);
  s.seed = 12345678901234ull;
  s.n = 100;
  const ScenarioSpec back = scenario_from_json(scenario_to_json(s));
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_EQ(back.n, 100);
  EXPECT_EQ(back.noise_variance, 1.0);
}

TEST(SamplesCsv, RoundTripIsExact) {
  const SampleStore store = small_fit();
  const std::string csv = samples_to_csv(store);
  SampleStore back = samples_from_csv(csv);
  ASSERT_EQ(back.chains.size(), 2u);
  EXPECT_EQ(back.size(), store.size());
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t k = 0; k < store.chains[c].draws.size(); ++k) {
      const auto& a = store.chains[c].draws[k];
      const auto& b = back.chains[c].draws[k];
      EXPECT_EQ(a.iteration, b.iteration);
      EXPECT_EQ(a.log_posterior, b.log_posterior);
      EXPECT_EQ(a.state.a_tilde, b.state.a_tilde);
      EXPECT_EQ(a.state.b_tilde, b.state.b_tilde);
      EXPECT_EQ(a.state.t, b.state.t);
      EXPECT_EQ(a.state.tau, b.state.tau);
      EXPECT_EQ(a.state.nu, b.state.nu);
      EXPECT_EQ(a.state.sigma, b.state.sigma);
    }
  EXPECT_EQ(samples_to_csv(back), csv);
  const std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_NE(header.find("a_1_2"), std::string::npos);
  EXPECT_NE(header.find("b_3_6"), std::string::npos);
  EXPECT_EQ(header.find("b_1_3"), std::string::npos);
  EXPECT_THROW(samples_from_csv("chain,x\n"), IoError);
}

TEST(Summary, RestoresSeedsAndAcceptance) {
  const SampleStore store = small_fit();
  const json summary = json::parse(diagnostics_to_json(store, diagnose(store)).dump());
  SampleStore back = samples_from_csv(samples_to_csv(store));
  apply_summary(back, summary);
  EXPECT_EQ(back.chains[1].seed, store.chains[1].seed);
  EXPECT_EQ(back.chains[0].acceptance.a.accepted, store.chains[0].acceptance.a.accepted);
  EXPECT_EQ(back.genes, store.genes);
  EXPECT_EQ(summary["chains"].size(), 2u);
  EXPECT_EQ(summary["pooled"]["parameters"][0]["name"], "log_posterior");
  EXPECT_EQ(summary["chains"][0]["parameters"].size(), 1u + 12u + 3u + 3u);
}

TEST(EdgeTable, RoundTrip) {
  const EdgeProbabilityTable t = edge_probabilities(small_fit());
  const std::string csv = edge_table_to_csv(t);
  EXPECT_EQ(static_cast<int>(std::count(csv.begin(), csv.end(), '\n')), 1 + 12);
  const EdgeProbabilityTable back = edge_table_from_csv(csv);
  ASSERT_EQ(back.edges.size(), t.edges.size());
  EXPECT_EQ(back.p, 3);
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    EXPECT_EQ(back.edges[k].edge, t.edges[k].edge);
    EXPECT_EQ(back.edges[k].probability, t.edges[k].probability);
    EXPECT_EQ(back.edges[k].conditional_mean, t.edges[k].conditional_mean);
  }
  EXPECT_EQ(edge_table_to_csv(back), csv);
}

TEST(EstimateJson, RoundTripAndDot) {
  const EdgeProbabilityTable t = edge_probabilities(small_fit());
  const GraphEstimate g = select_fdr(t, 0.2);
  const json doc = json::parse(estimate_to_json(g).dump());
  const GraphEstimate back = estimate_from_json(doc);
  EXPECT_EQ(estimate_to_json(back).dump(), doc.dump());
  EXPECT_EQ(doc["rule"], "fdr");

  GraphEstimate signed_graph;
  signed_graph.p = 2;
  signed_graph.genes = {"A", "B"};
  signed_graph.edges = {{{EdgeKind::GeneToGene, 2, 1}, 0.5, -0.3, EffectSign::Negative},
                        {{EdgeKind::DnaToGene, 1, 2}, 1.0, 0.7, EffectSign::Positive}};
  const std::string dot = estimate_to_dot(signed_graph);
  EXPECT_NE(dot.find("\"A\" -> \"B\" [arrowhead=tee, style=dashed, penwidth=1.5]"), std::string::npos);
  EXPECT_NE(dot.find("\"A:m\" -> \"A\" [arrowhead=normal, style=solid, penwidth=3]"), std::string::npos);
}

TEST(ReferenceOrdering, GroupsPerLine) {
  const auto groups = parse_reference_ordering("{A, B}\n\nC\nD E F\n");
  EXPECT_EQ(groups.at("A"), 0);
  EXPECT_EQ(groups.at("B"), 0);
  EXPECT_EQ(groups.at("C"), 1);
  EXPECT_EQ(groups.at("F"), 2);
  EXPECT_THROW(parse_reference_ordering("A\nA\n"), ValidationError);
}

TEST(Diagnostics, BatchMeansEss) {
  Rng rng = make_rng(3);
  std::vector<double> iid(10000), sticky(10000);
  double x = 0.0;
  for (std::size_t k = 0; k < iid.size(); ++k) {
    iid[k] = standard_normal(rng);
    x = 0.95 * x + standard_normal(rng);
    sticky[k] = x;
  }
  EXPECT_NEAR(effective_sample_size(iid) / 10000.0, 1.0, 0.3);
  // AR(1) with rho = 0.95: n (1 - rho) / (1 + rho) ≈ 256.
  EXPECT_NEAR(effective_sample_size(sticky), 10000.0 * 0.05 / 1.95, 120.0);
  std::vector<double> constant(100, 2.0);
  EXPECT_EQ(effective_sample_size(constant), 100.0);
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_THROW(read_text("/nonexistent/path/file.csv"), IoError);
  EXPECT_THROW(write_text("/proc/forbidden/x.txt", "x"), IoError);
}
