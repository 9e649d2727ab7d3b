#pragma once

// Contextual combinatorial UCB learner (C2UCB): one ridge-regression estimate
// shared by every arm, UCB scores from that estimate, and per-round updates
// from semi-bandit feedback.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "indextune/schema.hpp"

namespace indextune {

/// Raised when the scatter matrix cannot be factorised. Unreachable for
/// lambda > 0 unless the state was corrupted by non-finite contexts.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Observation {
  Eigen::VectorXd context;
  double reward = 0.0;  // seconds of time gained; may be negative
};

/// V (scatter), b (reward-weighted context sum), lambda and the number of
/// completed update rounds. V starts at lambda * I and only ever grows by
/// outer products, so it stays symmetric positive-definite.
class LinearModelState {
 public:
  LinearModelState(std::size_t dim, double lambda);

  std::size_t dim() const { return static_cast<std::size_t>(response_.size()); }
  double lambda() const { return lambda_; }
  std::uint64_t rounds() const { return rounds_; }
  const Eigen::MatrixXd& scatter() const { return scatter_; }
  const Eigen::VectorXd& response() const { return response_; }

  /// Adds one round of observations; the round counter advances even when the
  /// list is empty.
  void absorb(std::span<const Observation> observations);
  /// Back to lambda * I and zero response; dim, lambda and rounds survive.
  void reset();

 private:
  double lambda_;
  std::uint64_t rounds_ = 0;
  Eigen::MatrixXd scatter_;
  Eigen::VectorXd response_;
};

/// Exploration boost per round. `constant` returns alpha; `sqrt_log` returns
/// alpha * sqrt(log t), which is 0 at t = 1.
struct AlphaSchedule {
  enum class Kind { constant, sqrt_log };
  Kind kind = Kind::constant;
  double alpha = 1.0;

  double at(std::uint64_t round) const;
};

struct UcbParameters {
  AlphaSchedule alpha;
  double lambda = 1.0;
};

struct ArmScore {
  ArmId arm_id;
  double expected = 0.0;
  double ucb = 0.0;
};

Eigen::VectorXd estimate_theta(const LinearModelState& state);

ArmScore ucb_score(const LinearModelState& state, const UcbParameters& params,
                   const Eigen::VectorXd& context, ArmId arm_id = {});

LinearModelState update(LinearModelState state, std::span<const Observation> observations);

LinearModelState forget(LinearModelState state);

/// Factorises V once and scores any number of contexts against it; the
/// harness scores the whole arm pool of a round through one of these.
class UcbScorer {
 public:
  UcbScorer(const LinearModelState& state, const UcbParameters& params);

  ArmScore score(const Eigen::VectorXd& context, ArmId arm_id = {}) const;
  const Eigen::VectorXd& theta() const { return theta_; }
  double alpha() const { return alpha_; }

 private:
  Eigen::LLT<Eigen::MatrixXd> factor_;
  Eigen::VectorXd theta_;
  double alpha_;
};

}  // namespace indextune
