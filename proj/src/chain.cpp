#include "lorawan/chain.hpp"

#include <cmath>
#include <string>

#include "lorawan/errors.hpp"
#include "lorawan/rng.hpp"

namespace lorawan {

namespace {

constexpr double kProbabilitySlack = 1e-12;

// Probabilities may drift past [0, 1] by rounding; anything further means a
// formula regression.
double checked_probability(double p, const char* what) {
  if (p < -kProbabilitySlack || p > 1.0 + kProbabilitySlack)
    throw SolverError(std::string("transition probability out of range: ") +
                      what + " = " + std::to_string(p));
  return std::min(std::max(p, 0.0), 1.0);
}

}  // namespace

double MacParams::gamma(int attempt) const {
  if (slot_choice.empty()) return 1.0;
  return slot_choice.at(static_cast<std::size_t>(attempt - 1));
}

void MacParams::validate() const {
  if (device_count < 1) throw ParameterError("device_count must be >= 1");
  if (max_transmissions < 1 || max_transmissions > 8)
    throw ParameterError("max_transmissions must be in [1, 8]");
  if (!(duty_cycle > 0.0) || duty_cycle > 1.0)
    throw ParameterError("duty_cycle must be in (0, 1]");
  if (channel_count < 1) throw ParameterError("channel_count must be >= 1");
  if (max_transmissions >= 2 && channel_count < 2)
    throw ParameterError(
        "channel_count must be >= 2 when max_transmissions >= 2 "
        "(retransmissions exclude the previous channel)");
  if (channel_quality < 0.0 || channel_quality > 1.0)
    throw ParameterError("channel_quality must be in [0, 1]");
  if (!slot_choice.empty() &&
      slot_choice.size() != static_cast<std::size_t>(max_transmissions))
    throw ParameterError("slot_choice must have one entry per attempt");
  for (double g : slot_choice)
    if (g < 0.0 || g > 1.0)
      throw ParameterError("slot_choice entries must be in [0, 1]");
  if (traffic_intensity != 1.0)
    throw ParameterError("traffic_intensity is fixed at 1");
  if (!(ack_timeout_mean > 0.0))
    throw ParameterError("ack_timeout_mean must be positive");
}

ChannelAccess channel_access_probs(const MacParams& params, int attempt) {
  if (attempt < 1 || attempt > params.max_transmissions)
    throw ParameterError("attempt out of range");
  ChannelAccess a;
  if (attempt == 1) {
    a.x = params.duty_cycle / params.channel_count;
  } else {
    if (params.channel_count < 2)
      throw ParameterError("retransmission requires channel_count >= 2");
    a.x = params.duty_cycle / (params.channel_count - 1);
  }
  a.y = 1.0 - a.x;
  return a;
}

double ack_history_factor(const MacParams& params, int attempt) {
  if (attempt < 1 || attempt > params.max_transmissions)
    throw ParameterError("attempt out of range");
  if (attempt == 1) return 1.0;
  const ChannelAccess retry = channel_access_probs(params, 2);
  const double y_a = std::pow(retry.y, params.device_count);
  const double g = params.gamma(attempt);
  const double sent_per_attempt =
      params.channel_quality * y_a * (g * y_a + (1.0 - g));
  return std::pow(1.0 - sent_per_attempt, attempt - 1);
}

std::string state_label(int index, int max_transmissions) {
  if (index == ack_index(max_transmissions)) return "ack";
  static const char* kind_names[8] = {"s",  "r1", "p1", "c1",
                                      "r2", "p2", "c2", "w"};
  const int attempt = index / 8 + 1;
  const int kind = index % 8;
  return std::string(kind_names[kind]) + "_" + std::to_string(attempt);
}

std::vector<std::string> state_labels(int max_transmissions) {
  std::vector<std::string> labels;
  const int dim = chain_dimension(max_transmissions);
  labels.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) labels.push_back(state_label(i, max_transmissions));
  return labels;
}

AttemptTransitions attempt_transitions(const MacParams& params, int attempt,
                                       double beta) {
  const ChannelAccess access = channel_access_probs(params, attempt);
  const double A = params.device_count;
  const double alpha = params.channel_quality;
  const double g = params.gamma(attempt);
  const double y_a = std::pow(access.y, A);
  const double pr = params.ack_policy == AckPolicy::Case1
                        ? ack_history_factor(params, attempt)
                        : 1.0;
  // Gateway-transmission factors for RS1 and RS2. Under Case 1 both carry
  // the probability that the ACK is still pending at this attempt.
  const double gw1 = pr * alpha * g * y_a;
  const double gw2 = pr * alpha * (1.0 - g) * y_a;

  AttemptTransitions t;
  t.recv1_to_recv2 = checked_probability((1.0 - gw1) * y_a, "recv1->recv2");
  t.recv1_to_pre1 = 1.0 - t.recv1_to_recv2;
  const double joint_pre1_chk1 =
      gw1 * y_a +
      (1.0 - gw1) * std::pow(access.y, A - 1.0) * access.x * A;
  // Conditional denominator 1 - (1 - gw1) y^A rewritten as
  // (1 - y^A) + gw1 y^A; the direct complement cancels catastrophically for
  // duty cycles near zero and would push the ratio past 1.
  const double one_minus_y_a = -std::expm1(A * std::log1p(-access.x));
  const double detect_prob = one_minus_y_a + gw1 * y_a;
  t.pre1_to_chk1 =
      detect_prob > 0.0
          ? checked_probability(joint_pre1_chk1 / detect_prob, "pre1->chk1")
          : 0.0;
  t.pre1_to_recv2 = 1.0 - t.pre1_to_chk1;
  t.chk1_to_ack = checked_probability(gw1 * alpha * y_a, "chk1->ack");
  t.chk1_to_recv2 =
      checked_probability(beta * gw1 * (1.0 - alpha) * y_a, "chk1->recv2");
  t.chk1_to_wait =
      checked_probability(1.0 - t.chk1_to_ack - t.chk1_to_recv2, "chk1->wait");
  t.recv2_to_pre2 = checked_probability(gw2, "recv2->pre2");
  t.recv2_to_wait = 1.0 - t.recv2_to_pre2;
  t.chk2_to_ack = alpha;
  t.chk2_to_wait = 1.0 - alpha;
  return t;
}

Eigen::MatrixXd transition_matrix(const MacParams& params,
                                  const std::vector<AttemptTiming>& timings) {
  params.validate();
  const int n_max = params.max_transmissions;
  if (timings.size() != static_cast<std::size_t>(n_max))
    throw ParameterError("one AttemptTiming required per attempt");
  const int dim = chain_dimension(n_max);
  const int ack = ack_index(n_max);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n <= n_max; ++n) {
    const AttemptTransitions t =
        attempt_transitions(params, n, timings[static_cast<std::size_t>(n - 1)].beta);
    const int s = state_index(n, StateKind::Send);
    const int r1 = state_index(n, StateKind::Recv1);
    const int p1 = state_index(n, StateKind::Pre1);
    const int c1 = state_index(n, StateKind::Chk1);
    const int r2 = state_index(n, StateKind::Recv2);
    const int p2 = state_index(n, StateKind::Pre2);
    const int c2 = state_index(n, StateKind::Chk2);
    const int w = state_index(n, StateKind::Wait);
    P(s, r1) = 1.0;
    P(r1, r2) = t.recv1_to_recv2;
    P(r1, p1) = t.recv1_to_pre1;
    P(p1, c1) = t.pre1_to_chk1;
    P(p1, r2) = t.pre1_to_recv2;
    P(c1, ack) = t.chk1_to_ack;
    P(c1, r2) = t.chk1_to_recv2;
    P(c1, w) = t.chk1_to_wait;
    P(r2, p2) = t.recv2_to_pre2;
    P(r2, w) = t.recv2_to_wait;
    P(p2, c2) = 1.0;
    P(c2, ack) = t.chk2_to_ack;
    P(c2, w) = t.chk2_to_wait;
    // Wait leads to the next attempt; the last attempt drops the frame and
    // the saturated device immediately starts the next one.
    P(w, n < n_max ? state_index(n + 1, StateKind::Send)
                   : state_index(1, StateKind::Send)) = 1.0;
  }
  P(ack, state_index(1, StateKind::Send)) = 1.0;
  return P;
}

Eigen::VectorXd steady_state(const Eigen::MatrixXd& matrix) {
  const int dim = static_cast<int>(matrix.rows());
  if (matrix.cols() != dim) throw ParameterError("matrix must be square");
  for (int i = 0; i < dim; ++i) {
    const double row_sum = matrix.row(i).sum();
    if (std::abs(row_sum - 1.0) > 1e-12)
      throw ParameterError("matrix is not row-stochastic at row " +
                           std::to_string(i));
    if (matrix.row(i).minCoeff() < -1e-12 || matrix.row(i).maxCoeff() > 1.0 + 1e-12)
      throw ParameterError("matrix entries must lie in [0, 1]");
  }
  // pi P = pi  <=>  (P^T - I) pi = 0; replace one equation by sum(pi) = 1.
  Eigen::MatrixXd system = matrix.transpose() - Eigen::MatrixXd::Identity(dim, dim);
  system.row(0).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  rhs(0) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible())
    throw SolverError("steady-state system is numerically singular (rank " +
                      std::to_string(lu.rank()) + " of " + std::to_string(dim) +
                      ")");
  Eigen::VectorXd pi = lu.solve(rhs);
  const double residual = (pi.transpose() * matrix - pi.transpose()).cwiseAbs().maxCoeff();
  if (residual > 1e-9)
    throw SolverError("steady-state residual too large: " +
                      std::to_string(residual));
  for (int i = 0; i < dim; ++i) {
    if (pi(i) < -1e-9)
      throw SolverError("steady-state distribution has negative mass at " +
                        state_label(i, (dim - 1) / 8));
    pi(i) = std::max(pi(i), 0.0);
  }
  pi /= pi.sum();
  return pi;
}

AbsorbingStats absorbing_stats(const ChainModel& model) {
  const int n_max = model.params.max_transmissions;
  const int dim = chain_dimension(n_max);
  const int ack = ack_index(n_max);
  const int w_last = state_index(n_max, StateKind::Wait);
  if (model.matrix.rows() != dim)
    throw ParameterError("model matrix has wrong dimension");

  // Transient sub-chain: drop the renewal edges ack->s1 and w_N->s1; the
  // remaining transitions strictly increase the state index, so expected
  // visit counts follow from one forward pass (the fundamental matrix of an
  // upper-triangular Q).
  Eigen::VectorXd visits = Eigen::VectorXd::Zero(ack);
  visits(state_index(1, StateKind::Send)) = 1.0;
  for (int j = 1; j < ack; ++j) {
    double nu = 0.0;
    for (int i = 0; i < j; ++i) {
      if (i == w_last) continue;
      nu += visits(i) * model.matrix(i, j);
    }
    visits(j) += nu;
  }

  AbsorbingStats stats;
  for (int n = 1; n <= n_max; ++n) {
    stats.expected_attempts += visits(state_index(n, StateKind::Send));
    stats.success_probability +=
        visits(state_index(n, StateKind::Chk1)) *
            model.matrix(state_index(n, StateKind::Chk1), ack) +
        visits(state_index(n, StateKind::Chk2)) *
            model.matrix(state_index(n, StateKind::Chk2), ack);
  }
  stats.expected_delay = visits.dot(model.delay.head(ack));
  stats.expected_energy = visits.dot(model.energy.head(ack));
  return stats;
}

ChainSimStats simulate_chain(const ChainModel& model, std::uint64_t seed,
                             std::int64_t frames) {
  if (frames < 1) throw ParameterError("frames must be >= 1");
  const int n_max = model.params.max_transmissions;
  const int dim = chain_dimension(n_max);
  const int ack = ack_index(n_max);
  const int start = state_index(1, StateKind::Send);
  const int w_last = state_index(n_max, StateKind::Wait);

  // Row-wise cumulative distributions for sampling.
  std::vector<std::vector<std::pair<double, int>>> rows(
      static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double p = model.matrix(i, j);
      if (p > 0.0) {
        acc += p;
        rows[static_cast<std::size_t>(i)].emplace_back(acc, j);
      }
    }
    if (!rows[static_cast<std::size_t>(i)].empty())
      rows[static_cast<std::size_t>(i)].back().first = 1.0;
  }

  Rng rng(seed);
  ChainSimStats stats;
  stats.visit_frequency = Eigen::VectorXd::Zero(dim);
  stats.delay_samples.reserve(static_cast<std::size_t>(frames));
  stats.energy_samples.reserve(static_cast<std::size_t>(frames));
  stats.attempt_samples.reserve(static_cast<std::size_t>(frames));
  stats.success_samples.reserve(static_cast<std::size_t>(frames));

  int state = start;
  double frame_delay = 0.0;
  double frame_energy = 0.0;
  std::int64_t frame_attempts = 0;
  double total_attempts = 0.0;
  double total_delay = 0.0;
  double total_energy = 0.0;

  while (stats.frames < frames) {
    stats.visit_frequency(state) += 1.0;
    ++stats.steps;
    frame_delay += model.delay(state);
    frame_energy += model.energy(state);
    if (state % 8 == static_cast<int>(StateKind::Send) && state != ack)
      ++frame_attempts;

    const bool at_ack = state == ack;
    const auto& row = rows[static_cast<std::size_t>(state)];
    const double u = rng.uniform();
    int next = row.back().second;
    for (const auto& [cum, j] : row) {
      if (u < cum) {
        next = j;
        break;
      }
    }
    const bool dropped = state == w_last && next == start;
    if (at_ack || dropped) {
      ++stats.frames;
      if (at_ack) ++stats.successes;
      total_attempts += static_cast<double>(frame_attempts);
      total_delay += frame_delay;
      total_energy += frame_energy;
      stats.delay_samples.push_back(frame_delay);
      stats.energy_samples.push_back(frame_energy);
      stats.attempt_samples.push_back(static_cast<int>(frame_attempts));
      stats.success_samples.push_back(at_ack ? 1 : 0);
      frame_delay = 0.0;
      frame_energy = 0.0;
      frame_attempts = 0;
    }
    state = next;
  }
  stats.visit_frequency /= static_cast<double>(stats.steps);
  stats.mean_attempts = total_attempts / static_cast<double>(stats.frames);
  stats.mean_delay = total_delay / static_cast<double>(stats.frames);
  stats.mean_energy = total_energy / static_cast<double>(stats.frames);
  return stats;
}

}  // namespace lorawan
