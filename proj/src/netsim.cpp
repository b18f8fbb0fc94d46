#include "lorawan/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
#include <queue>
#include <sstream>

#include "lorawan/errors.hpp"
#include "lorawan/rng.hpp"

namespace lorawan {

void SimConfig::validate() const {
  mac.validate();
  radio.validate();
  profile.validate();
  if (!(sim_duration > 0.0)) throw ParameterError("sim_duration must be positive");
  if (runs < 1) throw ParameterError("runs must be >= 1");
  if (tx_jitter_s < 0.0) throw ParameterError("tx_jitter_s must be >= 0");
}

namespace {

struct Uplink {
  double start = 0.0;
  double end = 0.0;
  int channel = 0;
  int sf = 0;
  int device = 0;
};

enum class EventKind { TxStart, UplinkEnd, AckEnd };

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::TxStart;
  int device = 0;
  // UplinkEnd: uplink index; AckEnd: slot (1/2) and loss flag.
  std::size_t uplink = 0;
  int slot = 0;
  bool lost = false;

  bool operator>(const Event& other) const {
    if (time != other.time) return time > other.time;
    return seq > other.seq;
  }
};

struct DeviceState {
  int channel = 0;
  int attempt = 1;
  std::int64_t frame_counter = 0;
  double frame_start = 0.0;
  double tx_time = 0.0;
  double rx_time = 0.0;
  double uplink_end = 0.0;  // end of the current attempt's transmission
  std::string slots;
  std::string channels;
  std::int64_t ack_sent_for_frame = -1;  // Case 1: last frame counter ACK'd
  double airtime = 0.0;
  double last_event = 0.0;
  std::int64_t generated = 0;
  std::int64_t acked = 0;
  std::int64_t dropped = 0;
};

class SingleRun {
 public:
  SingleRun(const SimConfig& config, int run_index)
      : cfg_(config),
        run_(run_index),
        rng_(config.base_seed + static_cast<std::uint64_t>(run_index)),
        timings_(attempt_timings(config.radio, config.mac.max_transmissions,
                                 config.dr_stepping)),
        devices_(static_cast<std::size_t>(config.mac.device_count)) {
    max_uplink_span_ = 0.0;
    for (const AttemptTiming& t : timings_)
      max_uplink_span_ = std::max(max_uplink_span_, t.t_tx);
  }

  void execute(SimStats& stats) {
    const double t_off_factor =
        (1.0 - cfg_.mac.duty_cycle) / cfg_.mac.duty_cycle;
    const double cycle = timings_.front().t_tx * (1.0 + t_off_factor);
    for (int d = 0; d < cfg_.mac.device_count; ++d) {
      DeviceState& dev = devices_[static_cast<std::size_t>(d)];
      dev.channel = rng_.uniform_below(cfg_.mac.channel_count);
      const double t0 = rng_.uniform(0.0, cycle);
      dev.frame_start = t0;
      ++dev.generated;
      push(t0, EventKind::TxStart, d);
    }
    while (!events_.empty()) {
      const Event ev = events_.top();
      events_.pop();
      devices_[static_cast<std::size_t>(ev.device)].last_event = ev.time;
      switch (ev.kind) {
        case EventKind::TxStart:
          on_tx_start(ev);
          break;
        case EventKind::UplinkEnd:
          on_uplink_end(ev);
          break;
        case EventKind::AckEnd:
          on_ack_end(ev);
          break;
      }
    }
    finalize(stats);
  }

 private:
  void push(double time, EventKind kind, int device, std::size_t uplink = 0,
            int slot = 0, bool lost = false) {
    events_.push(Event{time, seq_++, kind, device, uplink, slot, lost});
  }

  // Earliest permitted time plus the scheduling jitter.
  double schedule_tx(double ready) {
    return cfg_.tx_jitter_s > 0.0 ? ready + rng_.uniform(0.0, cfg_.tx_jitter_s)
                                  : ready;
  }

  const AttemptTiming& timing(int attempt) const {
    return timings_[static_cast<std::size_t>(attempt - 1)];
  }

  bool overlaps_device_uplink(double lo, double hi, int channel, int sf,
                              int exclude_device) const {
    for (auto it = uplinks_.rbegin(); it != uplinks_.rend(); ++it) {
      if (it->start >= hi) continue;
      if (it->start < lo - max_uplink_span_) break;  // sorted by start
      if (it->device != exclude_device && it->channel == channel &&
          it->sf == sf && it->end > lo) {
        return true;
      }
    }
    return false;
  }

  void on_tx_start(const Event& ev) {
    DeviceState& dev = devices_[static_cast<std::size_t>(ev.device)];
    if (dev.attempt == 1) dev.frame_start = ev.time;
    const AttemptTiming& t = timing(dev.attempt);
    const double end = ev.time + t.t_tx;
    uplinks_.push_back(Uplink{ev.time, end, dev.channel, t.uplink_sf, ev.device});
    dev.tx_time += t.t_tx;
    dev.airtime += t.t_tx;
    dev.uplink_end = end;
    dev.channels.push_back(static_cast<char>('0' + dev.channel));
    push(end, EventKind::UplinkEnd, ev.device, uplinks_.size() - 1);
  }

  void on_uplink_end(const Event& ev) {
    DeviceState& dev = devices_[static_cast<std::size_t>(ev.device)];
    const Uplink& up = uplinks_[ev.uplink];
    const AttemptTiming& t = timing(dev.attempt);
    const double te = ev.time;
    const bool collided =
        overlaps_device_uplink(up.start, up.end, up.channel, up.sf, ev.device);
    const bool received =
        !collided && rng_.bernoulli(cfg_.mac.channel_quality);

    int slot = 0;
    if (received) {
      const bool ack_pending =
          !(cfg_.mac.ack_policy == AckPolicy::Case1 &&
            dev.ack_sent_for_frame == dev.frame_counter);
      if (ack_pending) slot = choose_slot(te, t);
      if (slot != 0) {
        record_ack_sent(dev.attempt, slot);
        if (cfg_.mac.ack_policy == AckPolicy::Case1)
          dev.ack_sent_for_frame = dev.frame_counter;
      }
    }
    dev.slots.push_back(static_cast<char>('0' + slot));

    if (slot == 1) {
      const bool lost = !rng_.bernoulli(cfg_.mac.channel_quality);
      dev.rx_time += t.t_ack1;
      push(te + 1.0 + t.t_ack1, EventKind::AckEnd, ev.device, 0, 1, lost);
    } else if (slot == 2) {
      const bool lost = !rng_.bernoulli(cfg_.mac.channel_quality);
      dev.rx_time += t.t_pr1 + t.t_ack2;
      push(te + 2.0 + t.t_ack2, EventKind::AckEnd, ev.device, 0, 2, lost);
    } else {
      // Nothing addressed to this device; it listens for a preamble in both
      // slots and gives up.
      dev.rx_time += t.t_pr1 + t.t_pr2;
      fail_attempt(ev.device, te + 2.0 + t.t_pr2);
    }
  }

  // Gateway slot decision at uplink end. RS1 needs the (single, half-duplex)
  // downlink radio free over the whole ACK and duty-cycle budget on the
  // shared sub-band; RS2 runs on the reserved channel.
  int choose_slot(double te, const AttemptTiming& t) {
    if (cfg_.gateway_policy == GatewayPolicy::ForceRS1) return 1;
    if (cfg_.gateway_policy == GatewayPolicy::PreferRS1ElseRS2) {
      const double a1s = te + 1.0;
      const double a1e = a1s + t.t_ack1;
      bool radio_free = true;
      for (auto it = rs1_reservations_.rbegin();
           it != rs1_reservations_.rend(); ++it) {
        if (it->second <= a1s) continue;
        if (it->first < a1e) {
          radio_free = false;
          break;
        }
      }
      if (radio_free && a1s >= gw_rs1_rdc_free_at_) {
        rs1_reservations_.emplace_back(a1s, a1e);
        prune_reservations(a1s);
        gw_rs1_rdc_free_at_ =
            a1e + t.t_ack1 * (1.0 - cfg_.mac.duty_cycle) / cfg_.mac.duty_cycle;
        return 1;
      }
    }
    // RS2, whether forced or as the fallback. The reserved channel is
    // normally exempt from duty cycling; when it is not, an exhausted budget
    // silently swallows the ACK.
    if (!cfg_.reserved_channel_rdc_free) {
      const double a2s = te + 2.0;
      if (a2s < gw_rs2_rdc_free_at_) return 0;
      gw_rs2_rdc_free_at_ = a2s + t.t_ack2 +
                            t.t_ack2 * (1.0 - cfg_.mac.duty_cycle) /
                                cfg_.mac.duty_cycle;
    }
    return 2;
  }

  void prune_reservations(double now) {
    while (!rs1_reservations_.empty() &&
           rs1_reservations_.front().second + 8.0 < now)
      rs1_reservations_.pop_front();
  }

  void record_ack_sent(int attempt, int slot) {
    auto& counts = slot == 1 ? acks_rs1_ : acks_rs2_;
    counts[static_cast<std::size_t>(attempt - 1)] += 1;
  }

  void on_ack_end(const Event& ev) {
    DeviceState& dev = devices_[static_cast<std::size_t>(ev.device)];
    const AttemptTiming& t = timing(dev.attempt);
    const double te = dev.uplink_end;
    if (ev.slot == 1) {
      const double a1s = te + 1.0;
      const double a1e = a1s + t.t_ack1;
      const bool corrupted =
          overlaps_device_uplink(a1s, a1e, dev.channel, t.rs1_sf, ev.device);
      if (!corrupted && !ev.lost) {
        finish_frame(ev.device, a1e, true);
        return;
      }
      if (a1e <= te + 2.0) {
        // The corrupted ACK still fit before RS2; the device opens RS2,
        // hears nothing (this attempt's ACK went to RS1) and gives up.
        dev.rx_time += t.t_pr2;
        fail_attempt(ev.device, te + 2.0 + t.t_pr2);
      } else {
        fail_attempt(ev.device, a1e);
      }
    } else {
      const double a2e = te + 2.0 + t.t_ack2;
      if (!ev.lost) {
        finish_frame(ev.device, a2e, true);
        return;
      }
      fail_attempt(ev.device, a2e);
    }
  }

  void fail_attempt(int device, double path_end) {
    DeviceState& dev = devices_[static_cast<std::size_t>(device)];
    const AttemptTiming& t = timing(dev.attempt);
    const double timeout = rng_.uniform(1.0, 3.0);
    const double t_off =
        t.t_tx * (1.0 - cfg_.mac.duty_cycle) / cfg_.mac.duty_cycle;
    const double ready = std::max(dev.uplink_end + t_off, path_end + timeout);
    if (dev.attempt < cfg_.mac.max_transmissions) {
      ++dev.attempt;
      // Retransmissions must leave the channel of the previous attempt.
      const int pick = rng_.uniform_below(cfg_.mac.channel_count - 1);
      dev.channel = pick < dev.channel ? pick : pick + 1;
      push(schedule_tx(ready), EventKind::TxStart, device);
    } else {
      finish_frame(device, ready, false);
    }
  }

  void finish_frame(int device, double end_time, bool acked) {
    DeviceState& dev = devices_[static_cast<std::size_t>(device)];
    if (acked)
      ++dev.acked;
    else
      ++dev.dropped;
    if (dev.frame_start >= kWarmupFraction * cfg_.sim_duration) {
      FrameRecord rec;
      rec.run = run_;
      rec.device = device;
      rec.frame_counter = dev.frame_counter;
      rec.attempts = dev.attempt;
      rec.delay_s = end_time - dev.frame_start;
      const double idle = std::max(rec.delay_s - dev.tx_time - dev.rx_time, 0.0);
      rec.energy_j = cfg_.profile.voltage *
                     (cfg_.profile.current_tx * dev.tx_time +
                      cfg_.profile.current_rx * dev.rx_time +
                      cfg_.profile.current_idle * idle);
      rec.dropped = !acked;
      rec.slots_used = dev.slots;
      rec.channels_used = dev.channels;
      records_.push_back(std::move(rec));
    }
    // Saturated source: the next frame is ready immediately; the duty cycle
    // decides when it may actually leave.
    const double t_off = timing(dev.attempt).t_tx *
                         (1.0 - cfg_.mac.duty_cycle) / cfg_.mac.duty_cycle;
    const double next_start =
        acked ? std::max(dev.uplink_end + t_off, end_time) : end_time;
    dev.attempt = 1;
    ++dev.frame_counter;
    dev.channel = rng_.uniform_below(cfg_.mac.channel_count);
    dev.frame_start = next_start;
    dev.tx_time = 0.0;
    dev.rx_time = 0.0;
    dev.slots.clear();
    dev.channels.clear();
    if (next_start <= cfg_.sim_duration) {
      ++dev.generated;
      push(schedule_tx(next_start), EventKind::TxStart, device);
    }
  }

  void finalize(SimStats& stats) {
    RunSummary summary;
    summary.run = run_;
    double delay_sum = 0.0;
    double energy_sum = 0.0;
    std::int64_t acked = 0;
    std::int64_t dropped = 0;
    for (const FrameRecord& rec : records_) {
      energy_sum += rec.energy_j;
      if (rec.dropped) {
        ++dropped;
      } else {
        ++acked;
        delay_sum += rec.delay_s;
      }
    }
    summary.acked = acked;
    summary.dropped = dropped;
    summary.mean_ack_delay = acked > 0 ? delay_sum / static_cast<double>(acked)
                                       : std::nan("");
    summary.energy_per_ack = acked > 0
                                 ? energy_sum / static_cast<double>(acked)
                                 : std::nan("");
    summary.drop_rate =
        acked + dropped > 0
            ? static_cast<double>(dropped) / static_cast<double>(acked + dropped)
            : 0.0;
    for (const DeviceState& dev : devices_) {
      summary.generated += dev.generated;
      summary.in_flight += dev.generated - dev.acked - dev.dropped;
      summary.device_airtime.push_back(dev.airtime);
      summary.device_elapsed.push_back(dev.last_event);
      summary.device_generated.push_back(dev.generated);
      summary.device_acked.push_back(dev.acked);
      summary.device_dropped.push_back(dev.dropped);
    }
    stats.runs.push_back(std::move(summary));
    for (std::size_t n = 0; n < acks_rs1_.size(); ++n) {
      stats.acks_sent_rs1[n] += acks_rs1_[n];
      stats.acks_sent_rs2[n] += acks_rs2_[n];
    }
    stats.frames.insert(stats.frames.end(), records_.begin(), records_.end());
  }

  const SimConfig& cfg_;
  int run_ = 0;
  Rng rng_;
  std::vector<AttemptTiming> timings_;
  std::vector<DeviceState> devices_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
  std::uint64_t seq_ = 0;
  std::vector<Uplink> uplinks_;
  std::deque<std::pair<double, double>> rs1_reservations_;
  double gw_rs1_rdc_free_at_ = 0.0;
  double gw_rs2_rdc_free_at_ = 0.0;
  double max_uplink_span_ = 0.0;
  std::vector<FrameRecord> records_;
  std::vector<std::int64_t> acks_rs1_ = std::vector<std::int64_t>(8, 0);
  std::vector<std::int64_t> acks_rs2_ = std::vector<std::int64_t>(8, 0);
};

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nan("");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double ci95_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
}

}  // namespace

SimStats run_simulation(const SimConfig& config) {
  config.validate();
  SimStats stats;
  stats.config = config;
  stats.acks_sent_rs1.assign(
      static_cast<std::size_t>(config.mac.max_transmissions), 0);
  stats.acks_sent_rs2.assign(
      static_cast<std::size_t>(config.mac.max_transmissions), 0);
  // acks vectors inside SingleRun are sized 8; trim on merge below.
  stats.acks_sent_rs1.resize(8, 0);
  stats.acks_sent_rs2.resize(8, 0);
  for (int r = 0; r < config.runs; ++r) {
    SingleRun run(config, r);
    run.execute(stats);
  }
  stats.acks_sent_rs1.resize(
      static_cast<std::size_t>(config.mac.max_transmissions));
  stats.acks_sent_rs2.resize(
      static_cast<std::size_t>(config.mac.max_transmissions));

  std::vector<double> delays;
  std::vector<double> energies;
  std::int64_t acked = 0;
  std::int64_t dropped = 0;
  for (const RunSummary& run : stats.runs) {
    if (run.acked > 0) {
      delays.push_back(run.mean_ack_delay);
      energies.push_back(run.energy_per_ack);
    }
    acked += run.acked;
    dropped += run.dropped;
  }
  stats.total_acked = acked;
  stats.total_dropped = dropped;
  stats.mean_ack_delay = mean_of(delays);
  stats.ci95_ack_delay = ci95_of(delays);
  stats.mean_energy_per_ack = mean_of(energies);
  stats.ci95_energy_per_ack = ci95_of(energies);
  stats.drop_rate = acked + dropped > 0
                        ? static_cast<double>(dropped) /
                              static_cast<double>(acked + dropped)
                        : 0.0;
  return stats;
}

SlotProbabilities estimate_slot_probabilities(const SimStats& stats) {
  if (stats.runs.empty())
    throw ParameterError("no simulation runs in SimStats");
  const int n_max = stats.config.mac.max_transmissions;
  SlotProbabilities probs;
  probs.value.resize(static_cast<std::size_t>(n_max));
  probs.measured.resize(static_cast<std::size_t>(n_max));
  for (int n = 0; n < n_max; ++n) {
    const std::int64_t rs1 = stats.acks_sent_rs1[static_cast<std::size_t>(n)];
    const std::int64_t rs2 = stats.acks_sent_rs2[static_cast<std::size_t>(n)];
    if (rs1 + rs2 > 0) {
      probs.value[static_cast<std::size_t>(n)] =
          static_cast<double>(rs1) / static_cast<double>(rs1 + rs2);
      probs.measured[static_cast<std::size_t>(n)] = true;
    } else {
      probs.value[static_cast<std::size_t>(n)] = stats.config.mac.gamma(n + 1);
      probs.measured[static_cast<std::size_t>(n)] = false;
    }
  }
  return probs;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void write_frames_csv(const SimStats& stats, std::ostream& out) {
  out << "run,device,frame_counter,attempts,delay_s,energy_j,dropped,slots_used\n";
  for (const FrameRecord& rec : stats.frames) {
    out << rec.run << ',' << rec.device << ',' << rec.frame_counter << ','
        << rec.attempts << ',' << format_double(rec.delay_s) << ','
        << format_double(rec.energy_j) << ',' << (rec.dropped ? 1 : 0) << ','
        << rec.slots_used << '\n';
  }
}

std::string aggregate_json(const SimStats& stats) {
  std::ostringstream out;
  auto num = [](double v) {
    return std::isnan(v) ? std::string("null") : format_double(v);
  };
  out << "{\n";
  out << "  \"runs\": " << stats.runs.size() << ",\n";
  out << "  \"acked_frames\": " << stats.total_acked << ",\n";
  out << "  \"dropped_frames\": " << stats.total_dropped << ",\n";
  out << "  \"mean_ack_delay_s\": " << num(stats.mean_ack_delay) << ",\n";
  out << "  \"ci95_ack_delay_s\": " << num(stats.ci95_ack_delay) << ",\n";
  out << "  \"mean_energy_per_ack_j\": " << num(stats.mean_energy_per_ack)
      << ",\n";
  out << "  \"ci95_energy_per_ack_j\": " << num(stats.ci95_energy_per_ack)
      << ",\n";
  out << "  \"drop_rate\": " << num(stats.drop_rate) << ",\n";
  out << "  \"acks_sent_rs1\": [";
  for (std::size_t n = 0; n < stats.acks_sent_rs1.size(); ++n)
    out << (n ? "," : "") << stats.acks_sent_rs1[n];
  out << "],\n  \"acks_sent_rs2\": [";
  for (std::size_t n = 0; n < stats.acks_sent_rs2.size(); ++n)
    out << (n ? "," : "") << stats.acks_sent_rs2[n];
  out << "]\n}\n";
  return out.str();
}

}  // namespace lorawan
