#pragma once

#include <vector>

namespace lorawan {

// LoRa PHY timing inputs. Defaults follow the DR0 (SF12 / 125 kHz) profile
// commonly used for confirmed uplink studies: 21-byte confirmed PHY payload,
// 12-byte ACK, 12.25-symbol preamble, coding rate 4/7, implicit header,
// low-data-rate optimization off.
struct RadioConfig {
  int spreading_factor = 12;        // symbol exponent, 7..12
  double bandwidth_hz = 125000.0;   // 125k / 250k / 500k
  int coding_rate_denominator = 7;  // 5..8, i.e. 4/5 .. 4/8
  double preamble_symbols = 12.25;  // total preamble symbols incl. sync
  int data_payload_bytes = 21;
  int ack_payload_bytes = 12;
  bool implicit_header = true;
  bool low_dr_optimize = false;
  int rs1_dr_offset = 0;  // shifts the RS1 downlink rate from the uplink rate
  // Uplink data frames carry the 16-bit PHY CRC; downlink ACKs do not.
  bool uplink_crc = true;
  bool ack_crc = false;

  void validate() const;  // throws ParameterError
};

// Largest PHY payload a single frame may carry.
inline constexpr int kMaxPayloadBytes = 255;

// Duration of one chirp symbol: 2^sf / bw.
double symbol_duration(int spreading_factor, double bandwidth_hz);

// Preamble airtime at the configured rate: preamble_symbols * symbol time.
double preamble_duration(const RadioConfig& radio);
double preamble_duration(const RadioConfig& radio, int spreading_factor,
                         double bandwidth_hz);

// Full frame airtime from the SX1272 symbol-count formula:
//   n = 8 + max(ceil((8 PL - 4 SF + 28 + 16 CRC - 20 H) / (4 (SF - 2 DE)))
//               * cr_denominator, 0)
// with H = 1 for implicit header and DE = 1 with low-data-rate optimization.
double time_on_air(int payload_bytes, const RadioConfig& radio);
double time_on_air(int payload_bytes, const RadioConfig& radio,
                   int spreading_factor, double bandwidth_hz, bool crc);

// Per-attempt airtimes for one transmission attempt of a confirmed frame.
// RS1 runs at the uplink rate shifted by rs1_dr_offset; RS2 always runs at
// the minimum rate (SF12 / 125 kHz) on the reserved channel.
struct AttemptTiming {
  int uplink_sf = 12;
  int rs1_sf = 12;
  int rs2_sf = 12;
  double t_tx = 0.0;    // uplink data frame airtime
  double t_pr1 = 0.0;   // preamble airtime in RS1
  double t_ack1 = 0.0;  // ACK airtime in RS1
  double t_pr2 = 0.0;   // preamble airtime in RS2
  double t_ack2 = 0.0;  // ACK airtime in RS2
  // 1 when the RS1 ACK fits before the RS2 slot opens (t_ack1 < 1 s).
  double beta = 0.0;
};

// dr_stepping mirrors the LoRaWAN retransmission behavior of dropping the
// data rate one step every two attempts (uplink SF grows toward 12).
AttemptTiming attempt_timing(const RadioConfig& radio, int attempt,
                             bool dr_stepping = false);

std::vector<AttemptTiming> attempt_timings(const RadioConfig& radio,
                                           int max_transmissions,
                                           bool dr_stepping = false);

}  // namespace lorawan
