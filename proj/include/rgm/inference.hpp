#pragma once

// Thresholded-prior hierarchy over (A, B) and a Metropolis-within-Gibbs
// sampler for its posterior.
//
//   a_ij = ã_ij 1(|ã_ij| > t_i),   b_ik = b̃_ik 1(|b̃_ik| > t_i)
//   ã_ij ~ N(0, τ_ij),  b̃_ik ~ N(0, ν_ik),  t_i ~ U(0, t0)
//   τ_ij ~ IG(α_τ, β_τ),  ν_ik ~ IG(α_ν, β_ν),  σ_i ~ IG(α_σ, β_σ)
//
// One sweep: random-walk Metropolis on every latent ã and masked b̃, reflected
// random walk on every t_i, then exact Gibbs draws of τ, ν, σ. The likelihood
// is evaluated from the scatter matrix of Z = [Y X], so a coefficient proposal
// costs O(1) for the residual term plus one LU of I - A when an A entry
// actually changes. I - A is never inverted.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rgm/errors.hpp"
#include "rgm/random.hpp"
#include "rgm/sem.hpp"

namespace rgm {

struct Hyperparameters {
  double alpha_tau = 0.01;
  double beta_tau = 0.01;
  double alpha_nu = 0.01;
  double beta_nu = 0.01;
  double alpha_sigma = 0.01;
  double beta_sigma = 0.01;
  double t0 = 1.0;

  void validate() const {
    for (double v : {alpha_tau, beta_tau, alpha_nu, beta_nu, alpha_sigma, beta_sigma, t0})
      if (!(v > 0) || !std::isfinite(v)) throw ValidationError("hyperparameters must be positive and finite");
  }
};

struct PriorState {
  int p = 0;
  MatrixXd a_tilde;  // p x p, zero diagonal
  MatrixXd b_tilde;  // p x 2p, zero off the intragenic mask
  VectorXd t;        // thresholds in (0, t0)
  MatrixXd tau;      // p x p, diagonal unused
  MatrixXd nu;       // p x 2p, used on the mask only
  VectorXd sigma;

  double latent(const Edge& e) const {
    return e.kind == EdgeKind::GeneToGene ? a_tilde(e.target - 1, e.source - 1)
                                          : b_tilde(e.target - 1, e.source - 1);
  }
  double& latent(const Edge& e) {
    return e.kind == EdgeKind::GeneToGene ? a_tilde(e.target - 1, e.source - 1)
                                          : b_tilde(e.target - 1, e.source - 1);
  }
  bool included(const Edge& e) const { return std::abs(latent(e)) > t(e.target - 1); }

  MatrixXd effective_A() const {
    MatrixXd A = a_tilde;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (!(std::abs(A(i, j)) > t(i))) A(i, j) = 0.0;
    return A;
  }
  MatrixXd effective_B() const {
    MatrixXd B = b_tilde;
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < 2 * p; ++k)
        if (!(std::abs(B(i, k)) > t(i))) B(i, k) = 0.0;
    return B;
  }
  SemParameters effective_parameters() const { return {p, effective_A(), effective_B(), sigma}; }

  void validate(const Hyperparameters& hyper) const {
    if (p < 1) throw ValidationError("PriorState: p must be positive");
    if (a_tilde.rows() != p || a_tilde.cols() != p || tau.rows() != p || tau.cols() != p ||
        b_tilde.rows() != p || b_tilde.cols() != 2 * p || nu.rows() != p || nu.cols() != 2 * p ||
        t.size() != p || sigma.size() != p)
      throw ValidationError("PriorState: dimension mismatch");
    for (int i = 0; i < p; ++i) {
      if (a_tilde(i, i) != 0.0) throw ValidationError("PriorState: nonzero diagonal latent");
      if (!(t(i) > 0 && t(i) < hyper.t0)) throw ValidationError("PriorState: threshold outside (0, t0)");
      if (!(sigma(i) > 0)) throw ValidationError("PriorState: sigma must be positive");
      for (int j = 0; j < p; ++j)
        if (i != j && !(tau(i, j) > 0)) throw ValidationError("PriorState: tau must be positive");
      for (int k = 0; k < 2 * p; ++k) {
        if (on_intragenic_mask(i, k) && !(nu(i, k) > 0)) throw ValidationError("PriorState: nu must be positive");
        if (!on_intragenic_mask(i, k) && b_tilde(i, k) != 0.0)
          throw ValidationError("PriorState: latent B entry off the intragenic mask");
      }
    }
  }
};

struct McmcConfig {
  int iterations = 50000;
  int burn_in = 25000;
  int thin = 5;
  double a_proposal_sd = 0.1;
  double b_proposal_sd = 0.1;
  double t_proposal_scale = 0.05;  // threshold proposal sd as a fraction of t0
  bool adapt = true;               // tune proposal sds during burn-in, frozen after
  std::uint64_t seed = 1;
  int chains = 1;

  void validate() const {
    if (iterations < 1) throw ValidationError("iterations must be positive");
    if (burn_in < 0 || burn_in >= iterations) throw ValidationError("burn-in must lie in [0, iterations)");
    if (thin < 1) throw ValidationError("thin must be at least 1");
    if (!(a_proposal_sd > 0) || !(b_proposal_sd > 0) || !(t_proposal_scale > 0))
      throw ValidationError("proposal scales must be positive");
    if (chains < 1) throw ValidationError("chain count must be at least 1");
  }

  int retained_count() const { return (iterations - burn_in) / thin; }
};

namespace detail {

inline double log_inverse_gamma(double x, double shape, double scale) {
  if (!(x > 0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(x) - scale / x;
}

inline double log_normal0(double x, double variance) {
  return -0.5 * std::log(2.0 * std::numbers::pi * variance) - 0.5 * x * x / variance;
}

}  // namespace detail

// Scatter matrix of Z = [Y X]; everything the likelihood needs from the data.
struct SufficientStats {
  int n = 0;
  int p = 0;
  MatrixXd scatter;  // 3p x 3p

  explicit SufficientStats(const DataSet& data) : n(data.n()), p(data.p()) {
    data.validate();
    MatrixXd z(n, 3 * p);
    z << data.Y, data.X;
    scatter = z.transpose() * z;
  }
};

namespace detail {

// r_i = e_i - A_i. - B_i. laid out over Z's columns; residual_i = Z r_i.
inline VectorXd row_coefficients(const MatrixXd& A, const MatrixXd& B, int i) {
  const int p = static_cast<int>(A.rows());
  VectorXd r(3 * p);
  r.head(p) = -A.row(i).transpose();
  r(i) += 1.0;
  r.tail(2 * p) = -B.row(i).transpose();
  return r;
}

inline double log_prior(const PriorState& s, const Hyperparameters& h) {
  double lp = 0.0;
  for (int i = 0; i < s.p; ++i) {
    lp += (s.t(i) > 0 && s.t(i) < h.t0) ? -std::log(h.t0) : -std::numeric_limits<double>::infinity();
    lp += log_inverse_gamma(s.sigma(i), h.alpha_sigma, h.beta_sigma);
    for (int j = 0; j < s.p; ++j) {
      if (i == j) continue;
      lp += log_normal0(s.a_tilde(i, j), s.tau(i, j)) + log_inverse_gamma(s.tau(i, j), h.alpha_tau, h.beta_tau);
    }
    for (int k = 2 * i; k < 2 * i + 2; ++k)
      lp += log_normal0(s.b_tilde(i, k), s.nu(i, k)) + log_inverse_gamma(s.nu(i, k), h.alpha_nu, h.beta_nu);
  }
  return lp;
}

inline double log_likelihood(const SufficientStats& stats, const MatrixXd& A, const MatrixXd& B,
                             const VectorXd& sigma) {
  if (stats.n == 0) return 0.0;
  auto log_det = log_abs_det_i_minus_a(A);
  if (!log_det) return -std::numeric_limits<double>::infinity();
  double ll = stats.n * *log_det;
  for (int i = 0; i < stats.p; ++i) {
    VectorXd r = row_coefficients(A, B, i);
    const double rss = r.dot(stats.scatter * r);
    ll -= 0.5 * (stats.n * std::log(2.0 * std::numbers::pi * sigma(i)) + rss / sigma(i));
  }
  return ll;
}

}  // namespace detail

// Joint log density of the data (at the thresholded A, B) and all prior
// terms. With n = 0 this is the log prior alone; a singular I - A gives -inf.
inline double log_posterior(const PriorState& state, const SufficientStats& stats, const Hyperparameters& hyper) {
  return detail::log_likelihood(stats, state.effective_A(), state.effective_B(), state.sigma) +
         detail::log_prior(state, hyper);
}

inline double log_posterior(const PriorState& state, const DataSet& data, const Hyperparameters& hyper) {
  return log_posterior(state, SufficientStats(data), hyper);
}

// Zero graph start: latent coefficients 0, thresholds t0/2, prior variances 1,
// σ_i at the sample variance of Y column i (1 when undefined).
inline PriorState initial_state(const DataSet& data, const Hyperparameters& hyper) {
  const int p = data.p();
  PriorState s;
  s.p = p;
  s.a_tilde = MatrixXd::Zero(p, p);
  s.b_tilde = MatrixXd::Zero(p, 2 * p);
  s.t = VectorXd::Constant(p, hyper.t0 / 2.0);
  s.tau = MatrixXd::Ones(p, p);
  s.tau.diagonal().setZero();
  s.nu = MatrixXd::Zero(p, 2 * p);
  for (int i = 0; i < p; ++i) s.nu.block(i, 2 * i, 1, 2).setOnes();
  s.sigma = VectorXd::Ones(p);
  const int n = data.n();
  if (n >= 2) {
    for (int i = 0; i < p; ++i) {
      const double mean = data.Y.col(i).mean();
      const double var = (data.Y.col(i).array() - mean).square().sum() / (n - 1);
      if (var > 0 && std::isfinite(var)) s.sigma(i) = var;
    }
  }
  return s;
}

struct AcceptanceCounts {
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
  double rate() const { return proposed ? static_cast<double>(accepted) / proposed : 0.0; }
};

struct AcceptanceStats {
  AcceptanceCounts a;
  AcceptanceCounts b;
  AcceptanceCounts t;
};

// Holds the current state plus cached log|det(I - A)|, per-row residual sums
// of squares and S r_i, and performs the individual updates.
class ChainSampler {
 public:
  ChainSampler(const SufficientStats& stats, const Hyperparameters& hyper, PriorState state)
      : stats_(stats), hyper_(hyper), state_(std::move(state)) {
    hyper_.validate();
    state_.validate(hyper_);
    if (state_.p != stats_.p) throw ValidationError("sampler: state and data dimensions differ");
    refresh();
  }

  const PriorState& state() const { return state_; }
  const MatrixXd& effective_A() const { return a_eff_; }
  const MatrixXd& effective_B() const { return b_eff_; }
  const VectorXd& residual_sums() const { return rss_; }
  const SufficientStats& stats() const { return stats_; }
  const Hyperparameters& hyper() const { return hyper_; }

  // Recomputes the cached quantities from the state.
  void refresh() {
    const int p = state_.p;
    a_eff_ = state_.effective_A();
    b_eff_ = state_.effective_B();
    if (stats_.n > 0) {
      auto ld = log_abs_det_i_minus_a(a_eff_);
      if (!ld) throw NumericalError("sampler: current state has singular I - A");
      log_det_ = *ld;
    } else {
      log_det_ = 0.0;
    }
    rss_.resize(p);
    s_r_.resize(3 * p, p);
    for (int i = 0; i < p; ++i) {
      VectorXd r = detail::row_coefficients(a_eff_, b_eff_, i);
      s_r_.col(i) = stats_.scatter * r;
      rss_(i) = r.dot(s_r_.col(i));
    }
  }

  double log_posterior() const {
    return detail::log_likelihood(stats_, a_eff_, b_eff_, state_.sigma) + detail::log_prior(state_, hyper_);
  }

  // Log Metropolis ratio for moving the latent coefficient of `e` to
  // `proposed`. -inf when the move makes I - A singular (n > 0).
  double coefficient_log_ratio(const Edge& e, double proposed, double* new_log_det = nullptr) const {
    const int i = e.target - 1;
    const double current = state_.latent(e);
    const double variance = e.kind == EdgeKind::GeneToGene ? state_.tau(i, e.source - 1) : state_.nu(i, e.source - 1);
    double ratio = (current * current - proposed * proposed) / (2.0 * variance);
    const double threshold = state_.t(i);
    const double eff_old = std::abs(current) > threshold ? current : 0.0;
    const double eff_new = std::abs(proposed) > threshold ? proposed : 0.0;
    if (eff_new == eff_old || stats_.n == 0) {
      if (new_log_det) *new_log_det = log_det_;
      return ratio;
    }
    if (e.kind == EdgeKind::GeneToGene) {
      MatrixXd a_new = a_eff_;
      a_new(i, e.source - 1) = eff_new;
      auto ld = log_abs_det_i_minus_a(a_new);
      if (!ld) return -std::numeric_limits<double>::infinity();
      ratio += stats_.n * (*ld - log_det_);
      if (new_log_det) *new_log_det = *ld;
    } else if (new_log_det) {
      *new_log_det = log_det_;
    }
    const int c = column_of(e);
    const double delta = -(eff_new - eff_old);  // change in r_i at column c
    const double rss_delta = 2.0 * delta * s_r_(c, i) + delta * delta * stats_.scatter(c, c);
    ratio -= 0.5 * rss_delta / state_.sigma(i);
    return ratio;
  }

  // Metropolis step towards an explicit proposal, accepting iff log_u < ratio.
  bool try_coefficient(const Edge& e, double proposed, double log_u) {
    double new_log_det = log_det_;
    const double ratio = coefficient_log_ratio(e, proposed, &new_log_det);
    if (!(log_u < ratio)) return false;
    const int i = e.target - 1;
    const double threshold = state_.t(i);
    const double current = state_.latent(e);
    const double eff_old = std::abs(current) > threshold ? current : 0.0;
    const double eff_new = std::abs(proposed) > threshold ? proposed : 0.0;
    state_.latent(e) = proposed;
    if (eff_new != eff_old) {
      const int c = column_of(e);
      const double delta = -(eff_new - eff_old);
      rss_(i) += 2.0 * delta * s_r_(c, i) + delta * delta * stats_.scatter(c, c);
      s_r_.col(i) += delta * stats_.scatter.col(c);
      if (e.kind == EdgeKind::GeneToGene) {
        a_eff_(i, e.source - 1) = eff_new;
        log_det_ = new_log_det;
      } else {
        b_eff_(i, e.source - 1) = eff_new;
      }
    }
    return true;
  }

  // Gaussian random-walk Metropolis on one latent coefficient.
  bool update_coefficient(const Edge& e, double proposal_sd, Rng& rng) {
    const double proposed = state_.latent(e) + proposal_sd * standard_normal(rng);
    return try_coefficient(e, proposed, std::log(uniform01(rng)));
  }

  // Log Metropolis ratio for moving t_i to `proposed` (inside (0, t0)).
  double threshold_log_ratio(int gene, double proposed, MatrixXd* a_row_out = nullptr,
                             MatrixXd* b_row_out = nullptr, double* new_log_det = nullptr,
                             double* new_rss = nullptr) const {
    const int i = gene - 1;
    const int p = state_.p;
    if (!(proposed > 0 && proposed < hyper_.t0)) return -std::numeric_limits<double>::infinity();
    MatrixXd a_row = state_.a_tilde.row(i);
    MatrixXd b_row = state_.b_tilde.row(i);
    bool a_changed = false, b_changed = false;
    for (int j = 0; j < p; ++j) {
      if (!(std::abs(a_row(0, j)) > proposed)) a_row(0, j) = 0.0;
      a_changed |= a_row(0, j) != a_eff_(i, j);
    }
    for (int k = 0; k < 2 * p; ++k) {
      if (!(std::abs(b_row(0, k)) > proposed)) b_row(0, k) = 0.0;
      b_changed |= b_row(0, k) != b_eff_(i, k);
    }
    if (a_row_out) *a_row_out = a_row;
    if (b_row_out) *b_row_out = b_row;
    if (new_log_det) *new_log_det = log_det_;
    if (new_rss) *new_rss = rss_(i);
    if ((!a_changed && !b_changed) || stats_.n == 0) return 0.0;
    double ratio = 0.0;
    MatrixXd a_new = a_eff_;
    a_new.row(i) = a_row;
    if (a_changed) {
      auto ld = log_abs_det_i_minus_a(a_new);
      if (!ld) return -std::numeric_limits<double>::infinity();
      ratio += stats_.n * (*ld - log_det_);
      if (new_log_det) *new_log_det = *ld;
    }
    MatrixXd b_new = b_eff_;
    b_new.row(i) = b_row;
    VectorXd r = detail::row_coefficients(a_new, b_new, i);
    const double rss = r.dot(stats_.scatter * r);
    if (new_rss) *new_rss = rss;
    ratio -= 0.5 * (rss - rss_(i)) / state_.sigma(i);
    return ratio;
  }

  bool try_threshold(int gene, double proposed, double log_u) {
    MatrixXd a_row, b_row;
    double new_log_det = log_det_, new_rss = 0.0;
    const double ratio = threshold_log_ratio(gene, proposed, &a_row, &b_row, &new_log_det, &new_rss);
    if (!(log_u < ratio)) return false;
    const int i = gene - 1;
    state_.t(i) = proposed;
    a_eff_.row(i) = a_row;
    b_eff_.row(i) = b_row;
    log_det_ = new_log_det;
    VectorXd r = detail::row_coefficients(a_eff_, b_eff_, i);
    s_r_.col(i) = stats_.scatter * r;
    rss_(i) = stats_.n > 0 ? new_rss : r.dot(s_r_.col(i));
    return true;
  }

  // Random walk on t_i, reflected into (0, t0).
  bool update_threshold(int gene, double proposal_sd, Rng& rng) {
    const double proposed =
        reflect_into(state_.t(gene - 1) + proposal_sd * standard_normal(rng), 0.0, hyper_.t0);
    return try_threshold(gene, proposed, std::log(uniform01(rng)));
  }

  // Exact conjugate draws of τ, ν and σ. The determinant term does not involve
  // σ, so σ_i | rest ~ IG(α_σ + n/2, β_σ + RSS_i / 2).
  void update_variances(Rng& rng) {
    const int p = state_.p;
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        if (i == j) continue;
        const double a = state_.a_tilde(i, j);
        state_.tau(i, j) = inverse_gamma(rng, hyper_.alpha_tau + 0.5, hyper_.beta_tau + 0.5 * a * a);
      }
      for (int k = 2 * i; k < 2 * i + 2; ++k) {
        const double b = state_.b_tilde(i, k);
        state_.nu(i, k) = inverse_gamma(rng, hyper_.alpha_nu + 0.5, hyper_.beta_nu + 0.5 * b * b);
      }
    }
    for (int i = 0; i < p; ++i) {
      state_.sigma(i) =
          inverse_gamma(rng, hyper_.alpha_sigma + 0.5 * stats_.n, hyper_.beta_sigma + 0.5 * std::max(rss_(i), 0.0));
    }
  }

 private:
  int column_of(const Edge& e) const {
    return e.kind == EdgeKind::GeneToGene ? e.source - 1 : state_.p + e.source - 1;
  }

  SufficientStats stats_;
  Hyperparameters hyper_;
  PriorState state_;
  MatrixXd a_eff_;
  MatrixXd b_eff_;
  double log_det_ = 0.0;
  VectorXd rss_;
  MatrixXd s_r_;  // column i holds S r_i
};

struct Draw {
  int iteration = 0;  // 1-based sweep index
  double log_posterior = 0.0;
  PriorState state;
};

struct ChainResult {
  std::uint64_t seed = 0;
  std::vector<Draw> draws;
  AcceptanceStats acceptance;  // post burn-in
};

struct SampleStore {
  int p = 0;
  std::vector<std::string> genes;
  std::vector<ChainResult> chains;

  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& c : chains) total += c.draws.size();
    return total;
  }
  bool empty() const { return size() == 0; }

  template <class F>
  void for_each_draw(F&& f) const {
    for (const auto& c : chains)
      for (const auto& d : c.draws) f(d);
  }
};

namespace detail {

// Per-parameter proposal scales, adapted in batches during burn-in.
struct ProposalScales {
  MatrixXd a, b;
  VectorXd t;
  MatrixXd a_acc, b_acc;
  VectorXd t_acc;

  ProposalScales(int p, const McmcConfig& c, double t0)
      : a(MatrixXd::Constant(p, p, c.a_proposal_sd)),
        b(MatrixXd::Constant(p, 2 * p, c.b_proposal_sd)),
        t(VectorXd::Constant(p, c.t_proposal_scale * t0)),
        a_acc(MatrixXd::Zero(p, p)),
        b_acc(MatrixXd::Zero(p, 2 * p)),
        t_acc(VectorXd::Zero(p)) {}

  static void tune(double& sd, double& accepted, int batch) {
    const double rate = accepted / batch;
    if (rate < 0.2) sd *= 0.8;
    else if (rate > 0.5) sd *= 1.25;
    accepted = 0;
  }

  void adapt(int batch, double t0) {
    for (Eigen::Index i = 0; i < a.size(); ++i) tune(a.data()[i], a_acc.data()[i], batch);
    for (Eigen::Index i = 0; i < b.size(); ++i) tune(b.data()[i], b_acc.data()[i], batch);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      tune(t(i), t_acc(i), batch);
      t(i) = std::min(t(i), t0);
    }
  }
};

}  // namespace detail

inline constexpr int kAdaptBatch = 50;

// One chain from the zero-graph start. Sweeps are systematic scans: every ã,
// every masked b̃, every t_i, then τ, ν, σ. Deterministic given `seed`.
inline ChainResult run_chain(const DataSet& data, const Hyperparameters& hyper, const McmcConfig& config,
                             std::uint64_t seed) {
  config.validate();
  hyper.validate();
  const SufficientStats stats(data);
  const int p = stats.p;
  ChainSampler sampler(stats, hyper, initial_state(data, hyper));
  detail::ProposalScales scales(p, config, hyper.t0);
  Rng rng = make_rng(seed);
  const auto edges = candidate_edges(p);

  ChainResult result;
  result.seed = seed;
  result.draws.reserve(static_cast<std::size_t>(config.retained_count()));
  for (int iter = 1; iter <= config.iterations; ++iter) {
    const bool sampling = iter > config.burn_in;
    sampler.refresh();
    for (const Edge& e : edges) {
      const int i = e.target - 1, j = e.source - 1;
      const bool gene = e.kind == EdgeKind::GeneToGene;
      const double sd = gene ? scales.a(i, j) : scales.b(i, j);
      const bool ok = sampler.update_coefficient(e, sd, rng);
      (gene ? scales.a_acc(i, j) : scales.b_acc(i, j)) += ok;
      if (sampling) {
        auto& counts = gene ? result.acceptance.a : result.acceptance.b;
        ++counts.proposed;
        counts.accepted += ok;
      }
    }
    for (int gene = 1; gene <= p; ++gene) {
      const bool ok = sampler.update_threshold(gene, scales.t(gene - 1), rng);
      scales.t_acc(gene - 1) += ok;
      if (sampling) {
        ++result.acceptance.t.proposed;
        result.acceptance.t.accepted += ok;
      }
    }
    sampler.update_variances(rng);

    if (!sampling && iter % kAdaptBatch == 0) {
      if (config.adapt) scales.adapt(kAdaptBatch, hyper.t0);
      else {
        scales.a_acc.setZero();
        scales.b_acc.setZero();
        scales.t_acc.setZero();
      }
    }
    if (sampling && (iter - config.burn_in) % config.thin == 0) {
      result.draws.push_back({iter, sampler.log_posterior(), sampler.state()});
    }
  }
  return result;
}

// Independent chains with seeds seed, seed + 1, ...; executed concurrently.
inline SampleStore run_chains(const DataSet& data, const Hyperparameters& hyper, const McmcConfig& config) {
  config.validate();
  data.validate();
  SampleStore store;
  store.p = data.p();
  store.genes = data.gene_labels();
  std::vector<std::future<ChainResult>> jobs;
  for (int c = 0; c < config.chains; ++c) {
    jobs.push_back(std::async(std::launch::async, [&, c] {
      return run_chain(data, hyper, config, config.seed + static_cast<std::uint64_t>(c));
    }));
  }
  for (auto& job : jobs) store.chains.push_back(job.get());
  return store;
}

}  // namespace rgm
