#include "lorawan/metrics.hpp"

#include <cmath>
#include <string>

#include "lorawan/errors.hpp"

namespace lorawan {

void EnergyProfile::validate() const {
  if (!(voltage > 0.0)) throw ParameterError("voltage must be positive");
  if (!(current_tx > 0.0) || !(current_rx > 0.0) || !(current_idle > 0.0) ||
      !(current_sleep > 0.0))
    throw ParameterError("currents must be positive");
  if (!(current_tx > current_rx && current_rx > current_idle &&
        current_idle >= current_sleep))
    throw ParameterError(
        "expected current_tx > current_rx > current_idle >= current_sleep");
}

namespace {

// Expected elapsed time between the end of the uplink and entry into Wait_n,
// weighted by the chain's entry paths (Chk1, Recv2, Chk2).
double expected_elapsed_at_wait(const AttemptTransitions& t,
                                const AttemptTiming& timing) {
  const double reach_chk1 = t.recv1_to_pre1 * t.pre1_to_chk1;
  const double reach_recv2 = t.recv1_to_recv2 +
                             t.recv1_to_pre1 * t.pre1_to_recv2 +
                             reach_chk1 * t.chk1_to_recv2;
  const double reach_chk2 = reach_recv2 * t.recv2_to_pre2;
  const double from_chk1 = reach_chk1 * t.chk1_to_wait;
  const double from_recv2 = reach_recv2 * t.recv2_to_wait;
  const double from_chk2 = reach_chk2 * t.chk2_to_wait;
  const double elapsed_chk1 = 1.0 + timing.t_ack1;
  const double elapsed_recv2 = 2.0 + timing.t_pr2;
  const double elapsed_chk2 = 2.0 + timing.t_ack2;
  const double total = from_chk1 + from_recv2 + from_chk2;
  if (total <= 0.0) {
    // Wait is unreachable; any finite value works, use the plain average.
    return (elapsed_chk1 + elapsed_recv2 + elapsed_chk2) / 3.0;
  }
  return (from_chk1 * elapsed_chk1 + from_recv2 * elapsed_recv2 +
          from_chk2 * elapsed_chk2) /
         total;
}

double wait_duration_for(const MacParams& params, const AttemptTiming& timing,
                         int attempt) {
  const AttemptTransitions t = attempt_transitions(params, attempt, timing.beta);
  const double t_off =
      timing.t_tx * (1.0 - params.duty_cycle) / params.duty_cycle;
  const double elapsed = expected_elapsed_at_wait(t, timing);
  return std::max(t_off - elapsed, params.ack_timeout_mean);
}

}  // namespace

double wait_duration(const MacParams& params, const RadioConfig& radio,
                     int attempt, bool dr_stepping) {
  params.validate();
  if (attempt < 1 || attempt > params.max_transmissions)
    throw ParameterError("attempt out of range");
  return wait_duration_for(params, attempt_timing(radio, attempt, dr_stepping),
                           attempt);
}

Eigen::VectorXd delay_vector(const MacParams& params, const RadioConfig& radio,
                             bool dr_stepping) {
  params.validate();
  radio.validate();
  const int n_max = params.max_transmissions;
  Eigen::VectorXd d = Eigen::VectorXd::Zero(chain_dimension(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const AttemptTiming timing = attempt_timing(radio, n, dr_stepping);
    const ChannelAccess access = channel_access_probs(params, n);
    const double y_2a = std::pow(access.y, 2.0 * params.device_count);
    d(state_index(n, StateKind::Send)) = 1.0 + timing.t_tx;
    d(state_index(n, StateKind::Recv1)) = timing.t_pr1;
    d(state_index(n, StateKind::Chk1)) =
        params.gamma(n) * y_2a * params.channel_quality *
        ((timing.t_ack1 - timing.t_pr1) + std::max(1.0 - timing.t_ack1, 0.0));
    d(state_index(n, StateKind::Recv2)) = timing.t_pr2;
    d(state_index(n, StateKind::Chk2)) = timing.t_ack2 - timing.t_pr2;
    d(state_index(n, StateKind::Wait)) = wait_duration_for(params, timing, n);
  }
  return d;
}

Eigen::VectorXd energy_vector(const MacParams& params, const RadioConfig& radio,
                              const EnergyProfile& profile, bool dr_stepping) {
  params.validate();
  radio.validate();
  profile.validate();
  const int n_max = params.max_transmissions;
  const double v = profile.voltage;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(chain_dimension(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const AttemptTiming timing = attempt_timing(radio, n, dr_stepping);
    const ChannelAccess access = channel_access_probs(params, n);
    const double y_2a = std::pow(access.y, 2.0 * params.device_count);
    e(state_index(n, StateKind::Send)) =
        v * (profile.current_tx * timing.t_tx + profile.current_idle * 1.0);
    e(state_index(n, StateKind::Recv1)) = v * profile.current_rx * timing.t_pr1;
    e(state_index(n, StateKind::Chk1)) =
        params.gamma(n) * y_2a * params.channel_quality * v *
        (profile.current_rx * (timing.t_ack1 - timing.t_pr1) +
         profile.current_idle * std::max(1.0 - timing.t_ack1, 0.0));
    e(state_index(n, StateKind::Recv2)) = v * profile.current_rx * timing.t_pr2;
    e(state_index(n, StateKind::Chk2)) =
        v * profile.current_rx * (timing.t_ack2 - timing.t_pr2);
    e(state_index(n, StateKind::Wait)) =
        v * profile.current_idle * wait_duration_for(params, timing, n);
  }
  return e;
}

ChainModel build_chain_model(const MacParams& params, const RadioConfig& radio,
                             const EnergyProfile& profile, bool dr_stepping) {
  params.validate();
  radio.validate();
  profile.validate();
  ChainModel model;
  model.params = params;
  model.timings = attempt_timings(radio, params.max_transmissions, dr_stepping);
  model.matrix = transition_matrix(params, model.timings);
  model.delay = delay_vector(params, radio, dr_stepping);
  model.energy = energy_vector(params, radio, profile, dr_stepping);
  return model;
}

ResourceMetrics expected_resources(const ChainModel& model,
                                   const Eigen::VectorXd& pi) {
  const int dim = model.dimension();
  if (pi.size() != dim)
    throw ParameterError("pi dimension does not match the model");
  const int ack = ack_index(model.params.max_transmissions);
  const double pi_ack = pi(ack);
  if (pi_ack <= 0.0)
    throw NoSuccessError(
        "chain never reaches the ACK state; delay per ACK is unbounded");
  ResourceMetrics m;
  m.expected_delay_per_ack = pi.dot(model.delay) / pi_ack;
  m.expected_energy_per_ack = pi.dot(model.energy) / pi_ack;
  const AbsorbingStats abs = absorbing_stats(model);
  m.success_probability = abs.success_probability;
  m.expected_attempts = abs.expected_attempts;
  m.per_attempt_slot_probabilities.reserve(
      static_cast<std::size_t>(model.params.max_transmissions));
  for (int n = 1; n <= model.params.max_transmissions; ++n)
    m.per_attempt_slot_probabilities.push_back(model.params.gamma(n));
  return m;
}

ResourceMetrics evaluate_model(const MacParams& params, const RadioConfig& radio,
                               const EnergyProfile& profile, bool dr_stepping) {
  const ChainModel model = build_chain_model(params, radio, profile, dr_stepping);
  return expected_resources(model, steady_state(model.matrix));
}

ResourceMetrics mixed_slot_estimate(const MacParams& params,
                                    const RadioConfig& radio,
                                    const EnergyProfile& profile,
                                    const std::vector<double>& slot_probs) {
  params.validate();
  const int n_max = params.max_transmissions;
  if (slot_probs.size() != static_cast<std::size_t>(n_max))
    throw ParameterError("slot_probs must have one entry per attempt");
  for (double p : slot_probs)
    if (p < 0.0 || p > 1.0)
      throw ParameterError("slot_probs entries must be in [0, 1]");

  ResourceMetrics out;
  out.per_attempt_slot_probabilities = slot_probs;
  double weight_sum = 0.0;
  for (unsigned mask = 0; mask < (1u << n_max); ++mask) {
    double weight = 1.0;
    MacParams pure = params;
    pure.slot_choice.assign(static_cast<std::size_t>(n_max), 0.0);
    for (int n = 0; n < n_max; ++n) {
      const bool rs1 = (mask >> n) & 1u;
      const double p = slot_probs[static_cast<std::size_t>(n)];
      weight *= rs1 ? p : 1.0 - p;
      pure.slot_choice[static_cast<std::size_t>(n)] = rs1 ? 1.0 : 0.0;
    }
    if (weight <= 0.0) continue;
    const ResourceMetrics r = evaluate_model(pure, radio, profile);
    out.expected_delay_per_ack += weight * r.expected_delay_per_ack;
    out.expected_energy_per_ack += weight * r.expected_energy_per_ack;
    out.success_probability += weight * r.success_probability;
    out.expected_attempts += weight * r.expected_attempts;
    weight_sum += weight;
  }
  if (weight_sum <= 0.0) throw SolverError("mixture weights vanished");
  out.expected_delay_per_ack /= weight_sum;
  out.expected_energy_per_ack /= weight_sum;
  out.success_probability /= weight_sum;
  out.expected_attempts /= weight_sum;
  return out;
}

}  // namespace lorawan
