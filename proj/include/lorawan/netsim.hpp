#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lorawan/airtime.hpp"
#include "lorawan/chain.hpp"
#include "lorawan/metrics.hpp"

namespace lorawan {

enum class GatewayPolicy { PreferRS1ElseRS2, ForceRS1, ForceRS2 };

struct SimConfig {
  MacParams mac;
  RadioConfig radio;
  EnergyProfile profile;
  double sim_duration = 7200.0;  // bounds frame starts; started frames finish
  int runs = 20;
  std::uint64_t base_seed = 1;   // run r uses base_seed + r
  GatewayPolicy gateway_policy = GatewayPolicy::PreferRS1ElseRS2;
  bool dr_stepping = false;
  // Model assumption: the RS2 reserved channel has no duty-cycle restriction
  // for the gateway. When false the gateway books RS2 airtime against a
  // duty-cycle budget and skips the ACK if the budget is exhausted.
  bool reserved_channel_rdc_free = true;
  // Uniform scheduling delay added on top of the earliest permitted
  // transmission time. Exactly periodic devices otherwise lock into
  // permanent phase-registered collision pairs, a clock-ideal artifact with
  // no counterpart in the memoryless model or in hardware. Zero disables.
  double tx_jitter_s = 3.0;

  void validate() const;  // throws ParameterError
};

// Fraction of simulated time discarded as warm-up before aggregating.
inline constexpr double kWarmupFraction = 0.1;

struct FrameRecord {
  int run = 0;
  int device = 0;
  std::int64_t frame_counter = 0;
  int attempts = 0;
  double delay_s = 0.0;   // first send start to ACK end (or to drop)
  double energy_j = 0.0;
  bool dropped = false;
  std::string slots_used;     // one char per attempt: '1' RS1, '2' RS2, '0' none
  std::string channels_used;  // one digit per attempt, not serialized
};

struct RunSummary {
  int run = 0;
  std::int64_t generated = 0;  // frames started, warm-up included
  std::int64_t acked = 0;
  std::int64_t dropped = 0;
  std::int64_t in_flight = 0;  // always 0: started frames run to completion
  double mean_ack_delay = 0.0;
  double energy_per_ack = 0.0;  // all completed-frame energy / ACK count
  double drop_rate = 0.0;
  std::vector<double> device_airtime;        // per device, seconds transmitted
  std::vector<double> device_elapsed;        // per device, first send..last event
  std::vector<std::int64_t> device_generated;
  std::vector<std::int64_t> device_acked;
  std::vector<std::int64_t> device_dropped;
};

struct SimStats {
  SimConfig config;
  std::vector<FrameRecord> frames;  // post-warm-up, all runs, run-major order
  std::vector<RunSummary> runs;
  // ACK transmissions by the gateway, per attempt index (0-based) and slot.
  std::vector<std::int64_t> acks_sent_rs1;
  std::vector<std::int64_t> acks_sent_rs2;
  // Aggregates across runs (means of per-run means, 1.96-sigma half-widths).
  double mean_ack_delay = 0.0;
  double ci95_ack_delay = 0.0;
  double mean_energy_per_ack = 0.0;
  double ci95_energy_per_ack = 0.0;
  double drop_rate = 0.0;
  std::int64_t total_acked = 0;
  std::int64_t total_dropped = 0;
};

SimStats run_simulation(const SimConfig& config);

// Fraction of gateway ACKs sent via RS1 at each attempt. Attempts that saw
// no ACK at all fall back to the configured gamma and are flagged.
struct SlotProbabilities {
  std::vector<double> value;
  std::vector<bool> measured;  // false where the fallback was used
};
SlotProbabilities estimate_slot_probabilities(const SimStats& stats);

// Line-per-frame CSV: run,device,frame_counter,attempts,delay_s,energy_j,
// dropped,slots_used.
void write_frames_csv(const SimStats& stats, std::ostream& out);

// Aggregate summary as a JSON object.
std::string aggregate_json(const SimStats& stats);

}  // namespace lorawan
