#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qceq/rewrite.hpp"

namespace qceq {

// Platform-independent draws on top of mt19937_64.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : g_(seed) {}

  std::uint64_t next() { return g_(); }
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int below(int n) { return static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }
  bool coin() { return (g_() >> 63) != 0; }
  double angle() { return uniform(-2 * kTwoPi, 2 * kTwoPi); }

private:
  std::mt19937_64 g_;
};

struct RandomCircuitOptions {
  bool gphase = true;
  // RX, X, Z and, on two or more wires, MCP/MCRX.
  bool macros = false;
  bool swaps = true;
};

Circuit random_circuit(Rng& rng, int n, int length, const RandomCircuitOptions& opts = {});
std::vector<double> random_params(Rng& rng, int count);

// Picks a random applicable step of one of `rules` (in either direction) on a circuit
// without ancillas. Supported: S2PI, S0, SPLUS, H2, P0, P2PI, EH, PPLUS, XPX, C, E, RXDEF.
std::optional<Step> random_step(Rng& rng, const Circuit& c, const std::vector<std::string>& rules);

}  // namespace qceq
