#include "lorawan/airtime.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorawan/errors.hpp"

namespace lorawan {

namespace {

constexpr int kMinRateSf = 12;
constexpr double kMinRateBandwidthHz = 125000.0;

bool valid_bandwidth(double bw) {
  return bw == 125000.0 || bw == 250000.0 || bw == 500000.0;
}

}  // namespace

void RadioConfig::validate() const {
  if (spreading_factor < 7 || spreading_factor > 12)
    throw ParameterError("spreading_factor must be in [7, 12], got " +
                         std::to_string(spreading_factor));
  if (!valid_bandwidth(bandwidth_hz))
    throw ParameterError("bandwidth_hz must be 125000, 250000 or 500000");
  if (coding_rate_denominator < 5 || coding_rate_denominator > 8)
    throw ParameterError("coding_rate_denominator must be in [5, 8]");
  if (!(preamble_symbols > 0.0))
    throw ParameterError("preamble_symbols must be positive");
  if (data_payload_bytes < 1 || ack_payload_bytes < 1)
    throw ParameterError("payload byte counts must be >= 1");
  if (rs1_dr_offset < 0 || rs1_dr_offset > 5)
    throw ParameterError("rs1_dr_offset must be in [0, 5]");
}

double symbol_duration(int spreading_factor, double bandwidth_hz) {
  if (spreading_factor < 7 || spreading_factor > 12)
    throw ParameterError("spreading_factor must be in [7, 12], got " +
                         std::to_string(spreading_factor));
  if (!(bandwidth_hz > 0.0)) throw ParameterError("bandwidth must be positive");
  return static_cast<double>(1 << spreading_factor) / bandwidth_hz;
}

double preamble_duration(const RadioConfig& radio, int spreading_factor,
                         double bandwidth_hz) {
  if (!(radio.preamble_symbols >= 0.0))
    throw ParameterError("preamble_symbols must be nonnegative");
  return radio.preamble_symbols * symbol_duration(spreading_factor, bandwidth_hz);
}

double preamble_duration(const RadioConfig& radio) {
  return preamble_duration(radio, radio.spreading_factor, radio.bandwidth_hz);
}

double time_on_air(int payload_bytes, const RadioConfig& radio,
                   int spreading_factor, double bandwidth_hz, bool crc) {
  if (payload_bytes < 1)
    throw ParameterError("payload_bytes must be >= 1");
  if (payload_bytes > kMaxPayloadBytes)
    throw ParameterError("payload of " + std::to_string(payload_bytes) +
                         " bytes does not fit a single frame");
  const int h = radio.implicit_header ? 1 : 0;
  const int de = radio.low_dr_optimize ? 1 : 0;
  const int crc_bits = crc ? 16 : 0;
  const double numerator =
      8.0 * payload_bytes - 4.0 * spreading_factor + 28.0 + crc_bits - 20.0 * h;
  const double denominator = 4.0 * (spreading_factor - 2 * de);
  const double blocks = std::ceil(numerator / denominator);
  const double payload_symbols =
      8.0 + std::max(blocks * radio.coding_rate_denominator, 0.0);
  return preamble_duration(radio, spreading_factor, bandwidth_hz) +
         payload_symbols * symbol_duration(spreading_factor, bandwidth_hz);
}

double time_on_air(int payload_bytes, const RadioConfig& radio) {
  return time_on_air(payload_bytes, radio, radio.spreading_factor,
                     radio.bandwidth_hz, radio.uplink_crc);
}

AttemptTiming attempt_timing(const RadioConfig& radio, int attempt,
                             bool dr_stepping) {
  radio.validate();
  if (attempt < 1) throw ParameterError("attempt must be >= 1");
  AttemptTiming t;
  const int step = dr_stepping ? (attempt - 1) / 2 : 0;
  t.uplink_sf = std::min(radio.spreading_factor + step, kMinRateSf);
  t.rs1_sf = std::min(t.uplink_sf + radio.rs1_dr_offset, kMinRateSf);
  t.rs2_sf = kMinRateSf;
  t.t_tx = time_on_air(radio.data_payload_bytes, radio, t.uplink_sf,
                       radio.bandwidth_hz, radio.uplink_crc);
  t.t_pr1 = preamble_duration(radio, t.rs1_sf, radio.bandwidth_hz);
  t.t_ack1 = time_on_air(radio.ack_payload_bytes, radio, t.rs1_sf,
                         radio.bandwidth_hz, radio.ack_crc);
  t.t_pr2 = preamble_duration(radio, t.rs2_sf, kMinRateBandwidthHz);
  t.t_ack2 = time_on_air(radio.ack_payload_bytes, radio, t.rs2_sf,
                         kMinRateBandwidthHz, radio.ack_crc);
  t.beta = t.t_ack1 < 1.0 ? 1.0 : 0.0;
  return t;
}

std::vector<AttemptTiming> attempt_timings(const RadioConfig& radio,
                                           int max_transmissions,
                                           bool dr_stepping) {
  if (max_transmissions < 1)
    throw ParameterError("max_transmissions must be >= 1");
  std::vector<AttemptTiming> out;
  out.reserve(static_cast<std::size_t>(max_transmissions));
  for (int n = 1; n <= max_transmissions; ++n)
    out.push_back(attempt_timing(radio, n, dr_stepping));
  return out;
}

}  // namespace lorawan
