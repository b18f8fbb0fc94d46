#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lorawan/airtime.hpp"
#include "lorawan/chain.hpp"

namespace lorawan {

// Semtech SX1272/73 current draw at 1.5 V, PA-Boost on, RFOP 17 dBm.
struct EnergyProfile {
  double voltage = 1.5;          // V
  double current_tx = 0.090;     // A
  double current_rx = 0.0108;    // A
  double current_idle = 1.5e-6;  // A
  double current_sleep = 1e-7;   // A, exposed for sensitivity studies

  void validate() const;  // throws ParameterError
};

// Expected resources per acknowledged frame, renewal-reward view.
struct ResourceMetrics {
  double expected_delay_per_ack = 0.0;   // s
  double expected_energy_per_ack = 0.0;  // J
  double success_probability = 0.0;
  double expected_attempts = 0.0;
  std::vector<double> per_attempt_slot_probabilities;
};

// Time the device sits out after attempt n before it may transmit again:
// max(T_off - E[elapsed since uplink end at Wait entry], ack_timeout_mean),
// with T_off = t_tx (1 - duty) / duty and the elapsed time averaged over the
// chain's entry paths into Wait_n (from Chk1, Recv2 and Chk2).
double wait_duration(const MacParams& params, const RadioConfig& radio,
                     int attempt, bool dr_stepping = false);

// Per-state delay (s) and energy (J) vectors of length 8N+1.
Eigen::VectorXd delay_vector(const MacParams& params, const RadioConfig& radio,
                             bool dr_stepping = false);
Eigen::VectorXd energy_vector(const MacParams& params, const RadioConfig& radio,
                              const EnergyProfile& profile,
                              bool dr_stepping = false);

// Assembles matrix + delay + energy into a ChainModel.
ChainModel build_chain_model(const MacParams& params, const RadioConfig& radio,
                             const EnergyProfile& profile = EnergyProfile{},
                             bool dr_stepping = false);

// Renewal-reward conversion: expected delay/energy accumulated per visit to
// the ACK state. Throws NoSuccessError when pi[ack] == 0 (no ACK path).
ResourceMetrics expected_resources(const ChainModel& model,
                                   const Eigen::VectorXd& pi);

// Builds, solves and converts in one step.
ResourceMetrics evaluate_model(const MacParams& params, const RadioConfig& radio,
                               const EnergyProfile& profile = EnergyProfile{},
                               bool dr_stepping = false);

// Mixed receive-slot estimate: the gateway picks RS1 at attempt n with
// probability slot_probs[n]. Evaluated as the mixture over the 2^N pure slot
// sequences, each sequence being one chain with gamma_n in {0, 1}; this is
// the estimator that simulator-measured slot probabilities feed.
ResourceMetrics mixed_slot_estimate(const MacParams& params,
                                    const RadioConfig& radio,
                                    const EnergyProfile& profile,
                                    const std::vector<double>& slot_probs);

}  // namespace lorawan
