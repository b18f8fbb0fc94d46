#pragma once

#include <string>

#include "lorawan/netsim.hpp"

namespace lorawan {

// One named what-if: MAC + radio + energy parameters plus simulator settings.
struct Scenario {
  std::string name = "default";
  MacParams mac;
  RadioConfig radio;
  EnergyProfile profile;
  SimConfig sim;  // sim.mac/radio/profile mirror the fields above

  void validate() const;
};

// Built-in defaults: DR0 radio profile, SX1272 energy constants, and the
// use-case MAC setting (A=50, N=2, m_c=3, alpha=0.9, duty 1%, gamma=RS1).
Scenario default_scenario();

// Parses a scenario file: '#' comments, [mac] / [radio] / [profile] / [sim]
// sections, key = value lines. Unknown sections or keys are errors. Throws
// ParameterError with file:line diagnostics.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin);

}  // namespace lorawan
