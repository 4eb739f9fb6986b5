#pragma once

#include <string>
#include <vector>

namespace cosetmac {

// Two-user memoryless channel with per-user states known at the encoders.
// Kernel layout: [s1][s2][x1][x2][y]; state layout: [s1][s2];
// cost layout: [x][s] per user.
struct MacChannel {
  std::string name;
  int S1 = 2, S2 = 2, X1 = 2, X2 = 2, Y = 2;
  std::vector<double> state;
  std::vector<double> kernel;
  std::vector<double> cost1, cost2;

  double state_at(int s1, int s2) const { return state[s1 * S2 + s2]; }
  double kernel_at(int s1, int s2, int x1, int x2, int y) const {
    return kernel[(((s1 * S2 + s2) * X1 + x1) * X2 + x2) * Y + y];
  }
  double cost_at(int user, int x, int s) const {
    const auto& c = user == 0 ? cost1 : cost2;
    return c[x * (user == 0 ? S1 : S2) + s];
  }
  std::vector<double> state_marginal(int user) const;

  void validate() const;  // kernel rows sum to 1 within 1e-12, costs >= 0
};

// Single-user variant (state known at the transmitter). Kernel [s][x][y].
struct PtpChannel {
  std::string name;
  int S = 2, X = 2, Y = 2;
  std::vector<double> state;
  std::vector<double> kernel;
  std::vector<double> cost;

  double kernel_at(int s, int x, int y) const { return kernel[(s * X + x) * Y + y]; }
  double cost_at(int x, int s) const { return cost[x * S + s]; }
  void validate() const;
};

// Built-in channels: bdd, example1, example5 (alias example2), example3,
// blackwell, qdd.
MacChannel channel_catalog(const std::string& name);
std::vector<std::string> channel_catalog_names();

// Plain-text channel description; see README for the grammar.
MacChannel load_channel_config(const std::string& path);
MacChannel parse_channel_config(const std::string& text);

}  // namespace cosetmac
