#include "indextune/bandit_core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace indextune {

namespace {

void check_dim(const LinearModelState& state, const Eigen::VectorXd& context) {
  if (static_cast<std::size_t>(context.size()) != state.dim()) {
    throw std::invalid_argument(fmt::format("context has dimension {}, model expects {}",
                                            context.size(), state.dim()));
  }
}

}  // namespace

LinearModelState::LinearModelState(std::size_t dim, double lambda)
    : lambda_(lambda),
      scatter_(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim),
                                         static_cast<Eigen::Index>(dim)) *
               lambda),
      response_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim))) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be a finite value > 0");
  }
  if (dim == 0) throw std::invalid_argument("context dimension must be >= 1");
}

void LinearModelState::absorb(std::span<const Observation> observations) {
  for (const auto& obs : observations) check_dim(*this, obs.context);
  // Canonical order so the floating-point sums do not depend on list order.
  std::vector<const Observation*> ordered;
  ordered.reserve(observations.size());
  for (const auto& obs : observations) ordered.push_back(&obs);
  std::sort(ordered.begin(), ordered.end(), [](const Observation* a, const Observation* b) {
    const auto& x = a->context;
    const auto& y = b->context;
    if (std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end())) return true;
    if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end())) return false;
    return a->reward < b->reward;
  });
  for (const Observation* obs : ordered) {
    scatter_.selfadjointView<Eigen::Lower>().rankUpdate(obs->context);
    response_ += obs->reward * obs->context;
  }
  // rankUpdate only writes the lower triangle.
  scatter_.triangularView<Eigen::StrictlyUpper>() = scatter_.transpose();
  ++rounds_;
}

void LinearModelState::reset() {
  scatter_.setIdentity();
  scatter_ *= lambda_;
  response_.setZero();
}

double AlphaSchedule::at(std::uint64_t round) const {
  switch (kind) {
    case Kind::constant:
      return alpha;
    case Kind::sqrt_log:
      return round <= 1 ? 0.0 : alpha * std::sqrt(std::log(static_cast<double>(round)));
  }
  return alpha;
}

UcbScorer::UcbScorer(const LinearModelState& state, const UcbParameters& params)
    : factor_(state.scatter()), alpha_(params.alpha.at(state.rounds() + 1)) {
  if (factor_.info() != Eigen::Success) {
    throw NumericalError("scatter matrix is not positive-definite");
  }
  theta_ = factor_.solve(state.response());
  if (!theta_.allFinite()) throw NumericalError("ridge estimate is not finite");
  if (alpha_ < 0.0) throw std::invalid_argument("exploration boost must be >= 0");
}

ArmScore UcbScorer::score(const Eigen::VectorXd& context, ArmId arm_id) const {
  if (context.size() != theta_.size()) {
    throw std::invalid_argument(fmt::format("context has dimension {}, model expects {}",
                                            context.size(), theta_.size()));
  }
  const double expected = theta_.dot(context);
  // x' V^-1 x = |L^-1 x|^2 with V = L L'.
  const Eigen::VectorXd half = factor_.matrixL().solve(context);
  const double width = std::sqrt(std::max(0.0, half.squaredNorm()));
  return ArmScore{std::move(arm_id), expected, expected + alpha_ * width};
}

Eigen::VectorXd estimate_theta(const LinearModelState& state) {
  Eigen::LLT<Eigen::MatrixXd> factor(state.scatter());
  if (factor.info() != Eigen::Success) {
    throw NumericalError("scatter matrix is not positive-definite");
  }
  return factor.solve(state.response());
}

ArmScore ucb_score(const LinearModelState& state, const UcbParameters& params,
                   const Eigen::VectorXd& context, ArmId arm_id) {
  check_dim(state, context);
  return UcbScorer(state, params).score(context, std::move(arm_id));
}

LinearModelState update(LinearModelState state, std::span<const Observation> observations) {
  state.absorb(observations);
  return state;
}

LinearModelState forget(LinearModelState state) {
  state.reset();
  return state;
}

}  // namespace indextune
