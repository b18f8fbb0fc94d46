#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "lorawan/airtime.hpp"

namespace lorawan {

enum class AckPolicy { Case1, Case2 };

// MAC-level model parameters for one network scenario.
struct MacParams {
  int device_count = 50;            // A, total devices including the sender
  int max_transmissions = 2;        // N in [1, 8]
  double duty_cycle = 0.01;         // Delta in (0, 1]
  int channel_count = 3;            // m_c uplink channels
  double channel_quality = 0.9;     // alpha in [0, 1]
  std::vector<double> slot_choice;  // gamma_n per attempt; empty = all RS1
  AckPolicy ack_policy = AckPolicy::Case2;
  double traffic_intensity = 1.0;   // fixed at 1 (saturated devices)
  double ack_timeout_mean = 2.0;    // seconds, floor for the wait state

  // gamma for attempt n (1-based); defaults to 1 when slot_choice is empty.
  double gamma(int attempt) const;

  void validate() const;  // throws ParameterError
};

// Probability that device a transmits (x) / stays silent (y) on a given
// channel. Attempt 1 spreads over m_c channels, retransmissions over m_c - 1
// because the previous channel is excluded.
struct ChannelAccess {
  double x = 0.0;
  double y = 1.0;
};
ChannelAccess channel_access_probs(const MacParams& params, int attempt);

// Case-1 probability that the gateway still owes an ACK at attempt n, i.e.
// no ACK went out during the first n-1 attempts:
//   [1 - alpha y'^A (gamma_n y'^A + (1 - gamma_n))]^(n-1)
double ack_history_factor(const MacParams& params, int attempt);

// State layout: 8 states per attempt plus the shared ACK state. The linear
// index is 8 (n - 1) + kind, ACK sits at 8 N, so the matrix is (8N+1)^2.
enum class StateKind : int {
  Send = 0,
  Recv1 = 1,
  Pre1 = 2,
  Chk1 = 3,
  Recv2 = 4,
  Pre2 = 5,
  Chk2 = 6,
  Wait = 7,
};

inline int state_index(int attempt, StateKind kind) {
  return 8 * (attempt - 1) + static_cast<int>(kind);
}
inline int ack_index(int max_transmissions) { return 8 * max_transmissions; }
inline int chain_dimension(int max_transmissions) {
  return 8 * max_transmissions + 1;
}
std::string state_label(int index, int max_transmissions);
std::vector<std::string> state_labels(int max_transmissions);

// Transition probabilities within one attempt. Complements are computed so
// that every row sums to exactly 1.
struct AttemptTransitions {
  double recv1_to_recv2 = 0.0;
  double recv1_to_pre1 = 0.0;
  double pre1_to_chk1 = 0.0;
  double pre1_to_recv2 = 0.0;
  double chk1_to_ack = 0.0;
  double chk1_to_recv2 = 0.0;
  double chk1_to_wait = 0.0;
  double recv2_to_pre2 = 0.0;
  double recv2_to_wait = 0.0;
  double chk2_to_ack = 0.0;
  double chk2_to_wait = 0.0;
};
AttemptTransitions attempt_transitions(const MacParams& params, int attempt,
                                       double beta);

// Markov chain of one device's confirmed-uplink lifecycle: row-stochastic
// transition matrix plus per-state delay (s) and energy (J) vectors.
struct ChainModel {
  MacParams params;
  std::vector<AttemptTiming> timings;  // one per attempt
  Eigen::MatrixXd matrix;
  Eigen::VectorXd delay;
  Eigen::VectorXd energy;

  int dimension() const { return static_cast<int>(matrix.rows()); }
};

// Builds the transition matrix alone; beta per attempt comes from timings.
Eigen::MatrixXd transition_matrix(const MacParams& params,
                                  const std::vector<AttemptTiming>& timings);

// Stationary distribution: solves pi P = pi, sum(pi) = 1 as a dense linear
// system on the transposed matrix.
Eigen::VectorXd steady_state(const Eigen::MatrixXd& matrix);

// Per-frame view of the same chain: ACK and the Wait_N exit are absorbing,
// expectations accumulate over the transient prefix starting from Send_1.
struct AbsorbingStats {
  double success_probability = 0.0;
  double expected_attempts = 0.0;
  double expected_delay = 0.0;   // to ACK or drop, whichever comes first
  double expected_energy = 0.0;
};
AbsorbingStats absorbing_stats(const ChainModel& model);

// Chain-level Monte Carlo: walks the matrix with a seeded generator until
// `frames` frames complete (ACK or drop). Used as the statistical oracle for
// the solvers.
struct ChainSimStats {
  std::int64_t steps = 0;
  Eigen::VectorXd visit_frequency;       // per state, over all steps
  std::int64_t frames = 0;
  std::int64_t successes = 0;
  double mean_attempts = 0.0;            // over all frames
  double mean_delay = 0.0;               // over all frames, ACK'd or dropped
  double mean_energy = 0.0;
  // Per-frame samples, aligned by index.
  std::vector<double> delay_samples;
  std::vector<double> energy_samples;
  std::vector<int> attempt_samples;
  std::vector<std::uint8_t> success_samples;
};
ChainSimStats simulate_chain(const ChainModel& model, std::uint64_t seed,
                             std::int64_t frames);

}  // namespace lorawan
