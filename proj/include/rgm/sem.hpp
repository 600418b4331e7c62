#pragma once

// Gaussian simultaneous equation model Y = AY + BX + E with diagonal error
// covariance, its path diagram, and the simulation-study data generators.
//
// Column convention: X column 2i-1 (1-based) is the copy number of gene i and
// column 2i its methylation. B is restricted to that intragenic mask.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rgm/errors.hpp"
#include "rgm/graph.hpp"
#include "rgm/random.hpp"

namespace rgm {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// |det(I - A)| below this is treated as singular.
inline constexpr double kSingularDeterminant = 1e-12;

// Instrumentation for linear-algebra work done on the current thread. The
// sampler path only ever factorizes; explicit inverses are reserved for the
// reporting path (conditional_moments).
struct LinalgCounters {
  std::uint64_t lu_factorizations = 0;
  std::uint64_t inversions = 0;
};
inline thread_local LinalgCounters linalg_counters;

// True iff X column `x_col` (0-based) belongs to gene `gene` (0-based).
constexpr bool on_intragenic_mask(int gene, int x_col) { return x_col / 2 == gene; }

enum class EdgeKind { GeneToGene, DnaToGene };

// A candidate edge source -> target. Indices are 1-based: target is a gene,
// source is a gene (GeneToGene) or an X column (DnaToGene).
struct Edge {
  EdgeKind kind = EdgeKind::GeneToGene;
  int target = 0;
  int source = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;

  std::string name() const {
    return (kind == EdgeKind::GeneToGene ? "Y" : "X") + std::to_string(source) + "->Y" +
           std::to_string(target);
  }
};

// Every off-diagonal entry of A (row-major by target) followed by every masked
// entry of B. There are p(p-1) + 2p of them.
inline std::vector<Edge> candidate_edges(int p) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * (p - 1) + 2 * p));
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j)
      if (i != j) edges.push_back({EdgeKind::GeneToGene, i, j});
  for (int i = 1; i <= p; ++i) {
    edges.push_back({EdgeKind::DnaToGene, i, 2 * i - 1});
    edges.push_back({EdgeKind::DnaToGene, i, 2 * i});
  }
  return edges;
}

struct SemParameters {
  int p = 0;
  MatrixXd A;      // p x p, zero diagonal
  MatrixXd B;      // p x 2p, intragenic mask
  VectorXd sigma;  // diagonal of the error covariance

  static SemParameters zeros(int p) {
    return {p, MatrixXd::Zero(p, p), MatrixXd::Zero(p, 2 * p), VectorXd::Ones(p)};
  }

  double coefficient(const Edge& e) const {
    return e.kind == EdgeKind::GeneToGene ? A(e.target - 1, e.source - 1)
                                          : B(e.target - 1, e.source - 1);
  }

  void validate() const {
    if (p < 1) throw ValidationError("SemParameters: p must be positive");
    if (A.rows() != p || A.cols() != p) throw ValidationError("SemParameters: A must be p x p");
    if (B.rows() != p || B.cols() != 2 * p) throw ValidationError("SemParameters: B must be p x 2p");
    if (sigma.size() != p) throw ValidationError("SemParameters: sigma must have length p");
    for (int i = 0; i < p; ++i) {
      if (A(i, i) != 0.0) throw ValidationError("SemParameters: A has a nonzero diagonal");
      if (!(sigma(i) > 0.0) || !std::isfinite(sigma(i)))
        throw ValidationError("SemParameters: sigma must be positive");
      for (int k = 0; k < 2 * p; ++k)
        if (B(i, k) != 0.0 && !on_intragenic_mask(i, k))
          throw ValidationError("SemParameters: B entry (" + std::to_string(i + 1) + "," +
                                std::to_string(k + 1) + ") is off the intragenic mask");
    }
    if (!A.allFinite() || !B.allFinite()) throw ValidationError("SemParameters: non-finite coefficient");
  }
};

struct DataSet {
  MatrixXd Y;  // n x p
  MatrixXd X;  // n x 2p
  std::vector<std::string> genes;

  int n() const { return static_cast<int>(Y.rows()); }
  int p() const { return static_cast<int>(Y.cols()); }

  void validate() const {
    if (p() < 1) throw ValidationError("DataSet: no genes");
    if (X.cols() != 2 * p()) throw ValidationError("DataSet: X must have 2p columns");
    if (X.rows() != Y.rows()) throw ValidationError("DataSet: Y and X row counts differ");
    if (!genes.empty() && static_cast<int>(genes.size()) != p())
      throw ValidationError("DataSet: gene label count differs from p");
    if (!Y.allFinite() || !X.allFinite()) throw NumericalError("DataSet: non-finite entries");
  }

  std::vector<std::string> gene_labels() const {
    if (!genes.empty()) return genes;
    std::vector<std::string> labels;
    for (int i = 1; i <= p(); ++i) labels.push_back("Y" + std::to_string(i));
    return labels;
  }
};

// Centres every column and scales it to unit sample standard deviation.
// Constant columns are only centred.
inline DataSet standardized(const DataSet& data) {
  DataSet out = data;
  auto fix = [n = data.n()](MatrixXd& m) {
    if (n < 1) return;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double mean = m.col(c).mean();
      m.col(c).array() -= mean;
      if (n < 2) continue;
      const double sd = std::sqrt(m.col(c).squaredNorm() / (n - 1));
      if (sd > 0) m.col(c) /= sd;
    }
  };
  fix(out.Y);
  fix(out.X);
  return out;
}

// log|det(I - A)| via partial-pivot LU, or nullopt when the pivot product is
// below kSingularDeterminant.
inline std::optional<double> log_abs_det_i_minus_a(const MatrixXd& A) {
  const Eigen::Index p = A.rows();
  MatrixXd m = MatrixXd::Identity(p, p) - A;
  Eigen::PartialPivLU<MatrixXd> lu(m);
  ++linalg_counters.lu_factorizations;
  double log_det = 0.0;
  const auto& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < p; ++i) {
    const double pivot = std::abs(packed(i, i));
    if (pivot == 0.0 || !std::isfinite(pivot)) return std::nullopt;
    log_det += std::log(pivot);
  }
  if (log_det < std::log(kSingularDeterminant)) return std::nullopt;
  return log_det;
}

// log p(y | x) for one observation, in determinant/residual form. Returns -inf
// when I - A is singular. Never inverts I - A.
inline double log_density(const SemParameters& params, const VectorXd& y, const VectorXd& x) {
  if (y.size() != params.p || x.size() != 2 * params.p)
    throw ValidationError("log_density: dimension mismatch");
  if (!y.allFinite() || !x.allFinite()) throw NumericalError("log_density: non-finite input");
  auto log_det = log_abs_det_i_minus_a(params.A);
  if (!log_det) return -std::numeric_limits<double>::infinity();
  VectorXd residual = y - params.A * y - params.B * x;
  double value = *log_det;
  for (int i = 0; i < params.p; ++i) {
    value -= 0.5 * (std::log(2.0 * std::numbers::pi * params.sigma(i)) +
                    residual(i) * residual(i) / params.sigma(i));
  }
  return value;
}

struct ConditionalMoments {
  VectorXd mean;
  MatrixXd covariance;
};

// Mean (I-A)^{-1} B x and covariance (I-A)^{-1} Σ (I-A)^{-T} of Y given X = x.
inline ConditionalMoments conditional_moments(const SemParameters& params, const VectorXd& x) {
  if (x.size() != 2 * params.p) throw ValidationError("conditional_moments: x must have length 2p");
  if (!log_abs_det_i_minus_a(params.A)) throw NumericalError("conditional_moments: I - A is singular");
  const MatrixXd inverse = (MatrixXd::Identity(params.p, params.p) - params.A).inverse();
  ++linalg_counters.inversions;
  ConditionalMoments out;
  out.mean = inverse * (params.B * x);
  out.covariance = inverse * params.sigma.asDiagonal() * inverse.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

// Path diagram on 3p vertices: 1..p are Y, p+1..3p are X. Directed j -> i for
// each nonzero a_ij, (p+k) -> i for each nonzero b_ik, and undirected edges
// among the X vertices of each block of `psi_blocks` (1-based X indices).
inline ReciprocalGraph path_diagram(const SemParameters& params,
                                    const std::vector<std::vector<int>>& psi_blocks = {}) {
  const int p = params.p;
  std::vector<DirectedEdge> directed;
  std::vector<UndirectedEdge> undirected;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j)
      if (params.A(i, j) != 0.0) directed.push_back({j + 1, i + 1});
    for (int k = 0; k < 2 * p; ++k)
      if (params.B(i, k) != 0.0) directed.push_back({p + k + 1, i + 1});
  }
  std::vector<char> used(2 * p + 1, 0);
  for (const auto& block : psi_blocks) {
    for (int k : block) {
      if (k < 1 || k > 2 * p) throw ValidationError("path_diagram: X index out of range");
      if (used[k]) throw ValidationError("path_diagram: psi blocks overlap");
      used[k] = 1;
    }
    for (std::size_t a = 0; a < block.size(); ++a)
      for (std::size_t b = a + 1; b < block.size(); ++b)
        undirected.push_back({p + block[a], p + block[b]});
  }
  return ReciprocalGraph(3 * p, directed, undirected);
}

struct ScenarioSpec {
  int scenario = 1;
  int n = 276;
  int p = 10;
  double effect_magnitude = 0.5;
  double noise_variance = 0.25;
  double a_density = 0.2;        // inclusion probability per off-diagonal A entry
  double b_density = 2.0 / 3.0;  // inclusion probability per masked B entry
  double df = 3.0;               // scenario 3 only
  std::uint64_t seed = 1;

  static ScenarioSpec defaults(int scenario) {
    ScenarioSpec s;
    s.scenario = scenario;
    if (scenario == 2) {
      s.effect_magnitude = 0.4;
      s.noise_variance = 1.0;
    }
    return s;
  }

  void validate() const {
    if (scenario < 1 || scenario > 3) throw ValidationError("scenario must be 1, 2 or 3");
    if (n < 1) throw ValidationError("scenario: n must be positive");
    if (p < 1) throw ValidationError("scenario: p must be positive");
    if (scenario == 2 && p < 2) throw ValidationError("scenario 2 needs p >= 2");
    if (!(effect_magnitude > 0)) throw ValidationError("scenario: effect magnitude must be positive");
    if (!(noise_variance > 0)) throw ValidationError("scenario: noise variance must be positive");
    if (!(a_density >= 0 && a_density <= 1) || !(b_density >= 0 && b_density <= 1))
      throw ValidationError("scenario: densities must lie in [0, 1]");
    if (scenario == 3 && !(df > 2)) throw ValidationError("scenario 3 requires df > 2");
  }
};

// Ground-truth parameters for a scenario. A is redrawn until I - A is
// invertible. Scenarios 1 and 3 give every gene at least one DNA-level edge;
// scenario 2 leaves exactly one gene without any.
inline SemParameters generate_parameters(const ScenarioSpec& spec, Rng& rng) {
  spec.validate();
  const int p = spec.p;
  const double m = spec.effect_magnitude;
  std::bernoulli_distribution coin(0.5);
  auto signed_effect = [&] { return coin(rng) ? m : -m; };

  SemParameters params = SemParameters::zeros(p);
  std::bernoulli_distribution a_in(spec.a_density), b_in(spec.b_density);
  do {
    params.A.setZero();
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (i != j && a_in(rng)) params.A(i, j) = signed_effect();
  } while (!log_abs_det_i_minus_a(params.A));

  for (int i = 0; i < p; ++i)
    for (int k = 2 * i; k < 2 * i + 2; ++k)
      if (b_in(rng)) params.B(i, k) = signed_effect();

  int orphan = -1;
  if (spec.scenario == 2) {
    orphan = std::uniform_int_distribution<int>(0, p - 1)(rng);
    params.B.row(orphan).setZero();
  }
  for (int i = 0; i < p; ++i) {
    if (i == orphan) continue;
    if (params.B(i, 2 * i) == 0.0 && params.B(i, 2 * i + 1) == 0.0) {
      const int k = 2 * i + std::uniform_int_distribution<int>(0, 1)(rng);
      params.B(i, k) = signed_effect();
    }
  }
  params.sigma = VectorXd::Constant(p, spec.noise_variance);
  return params;
}

// n observations with X ~ N(0, I_2p) and Y solved from (I - A) Y = B X + E.
// With t_df set, E is N(0, Σ) divided by sqrt(χ²_df / df), giving Y | X
// multivariate-t with the Gaussian model's location and scale.
inline DataSet sample_dataset(const SemParameters& params, int n, Rng& rng,
                              std::optional<double> t_df = std::nullopt) {
  params.validate();
  const int p = params.p;
  if (!log_abs_det_i_minus_a(params.A)) throw NumericalError("sample_dataset: I - A is singular");
  Eigen::PartialPivLU<MatrixXd> lu(MatrixXd::Identity(p, p) - params.A);
  ++linalg_counters.lu_factorizations;
  const VectorXd sd = params.sigma.array().sqrt();
  DataSet data{MatrixXd(n, p), MatrixXd(n, 2 * p), {}};
  VectorXd x(2 * p), e(p);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < 2 * p; ++k) x(k) = standard_normal(rng);
    for (int i = 0; i < p; ++i) e(i) = sd(i) * standard_normal(rng);
    if (t_df) e /= std::sqrt(chi_squared(rng, *t_df) / *t_df);
    data.X.row(r) = x.transpose();
    data.Y.row(r) = lu.solve(params.B * x + e).transpose();
  }
  return data;
}

struct Simulation {
  DataSet data;
  SemParameters truth;
};

inline Simulation simulate(const ScenarioSpec& spec, Rng& rng) {
  SemParameters truth = generate_parameters(spec, rng);
  std::optional<double> df;
  if (spec.scenario == 3) df = spec.df;
  DataSet data = sample_dataset(truth, spec.n, rng, df);
  return {std::move(data), std::move(truth)};
}

inline Simulation simulate(const ScenarioSpec& spec) {
  Rng rng = make_rng(spec.seed);
  return simulate(spec, rng);
}

}  // namespace rgm
