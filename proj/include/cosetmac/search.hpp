#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cosetmac/info.hpp"
#include "cosetmac/regions.hpp"
#include "cosetmac/test_channel.hpp"

namespace cosetmac {

enum class Family { alpha, beta_f };

struct BudgetExceeded : std::runtime_error {
  std::uint64_t required;
  explicit BudgetExceeded(std::uint64_t req)
      : std::runtime_error("search budget exceeded: " + std::to_string(req) +
                           " pair evaluations required"),
        required(req) {}
};

struct SearchOptions {
  double step = 0.05;          // simplex grid step (rounded to 1/round(1/step))
  int aux_size = 2;            // |U| for alpha, |V| for beta_f
  std::uint64_t max_pairs = 400'000'000;
  int workers = 0;             // 0 = hardware default
};

// One grid point of a user's strategy: a conditional pmf on the step grid and
// a deterministic input map.
struct UserConfig {
  std::vector<double> p_given_s;  // [s][a]
  std::vector<int> map;           // [a][s] -> x
  double cost = 0.0;
  double h_a = 0.0;        // H(A_j) under this config
  double h_a_given_s = 0.0;
  double i_a_s = 0.0;      // I(A_j;S_j)
};

// Deterministic stream of candidate test channels for the grid search.
// Yields every (pmf grid point x deterministic map) pair per user, filtered
// by the per-user expected cost, as full TestChannel objects.
class TestChannelEnumerator {
 public:
  TestChannelEnumerator(const MacChannel& ch, Family family, const SearchOptions& opt, double tau1,
                        double tau2);

  std::uint64_t size() const;
  TestChannel at(std::uint64_t i) const;

  const std::vector<UserConfig>& user_configs(int user) const { return configs_[user]; }
  std::uint64_t raw_pairs() const;  // before the cost filter

 private:
  MacChannel ch_;
  Family family_;
  SearchOptions opt_;
  std::optional<Field> field_;
  std::vector<UserConfig> configs_[2];
};

struct RateCurve {
  std::string method;
  std::vector<double> tau;
  std::vector<double> raw;  // pointwise best sum bound
  Envelope envelope;
};

// For each tau, the best family sum bound over the enumerated test channels,
// then the upper convex envelope across costs (time sharing).
RateCurve best_sum_rate(const MacChannel& ch, Family family, const std::vector<double>& taus,
                        const SearchOptions& opt = {});

// Evaluate the family sum bound for a pair of user configs without building a
// JointPmf; exact match with the generic evaluators is covered by tests.
double pair_sum_bound(const MacChannel& ch, Family family, const Field* field, const UserConfig& a,
                      const UserConfig& b);

std::vector<double> parse_tau_grid(const std::string& spec);  // "lo:hi:step"

int default_workers();

}  // namespace cosetmac
