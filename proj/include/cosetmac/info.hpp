#pragma once

#include <utility>
#include <vector>

#include "cosetmac/group.hpp"
#include "cosetmac/pmf.hpp"

namespace cosetmac {

// Probabilities below this are treated as exact zeros wherever support
// membership matters (typicality bans, worst-case exponents, sum matching).
inline constexpr double kSupportEps = 1e-15;

// Per-symbol robust typicality: x^n passes iff for every symbol a,
// |N(a|x^n)/n - p(a)| <= delta p(a) / log2(|alphabet|).
struct TypicalityContext {
  std::vector<double> probs;
  double delta = 0.0;

  bool is_typical(const std::vector<int>& seq) const;
  bool counts_typical(const std::vector<std::int64_t>& counts, std::int64_t n) const;

  // Inclusive per-symbol count windows for sequences of length n, matching
  // is_typical exactly. Symbols with an empty window get lo > hi.
  struct CountWindow {
    std::int64_t lo, hi;
  };
  std::vector<CountWindow> count_windows(int n) const;
};

// Interleave two symbol streams into the product alphabet (a-major).
std::vector<int> zip_symbols(const std::vector<int>& a, const std::vector<int>& b, int b_size);

// 2^{-n lambda delta^2}, lambda = min{p(a)^2 : p(a) > 0} / log2(|alphabet|)^2,
// clamped to [0,1].
double sanov_bound(const std::vector<double>& probs, double delta, int n);

// Least concave majorant of sampled points, linear between knots.
class Envelope {
 public:
  Envelope() = default;
  Envelope(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {}
  double operator()(double x) const;
  const std::vector<double>& knots_x() const { return xs_; }
  const std::vector<double>& knots_y() const { return ys_; }

 private:
  std::vector<double> xs_, ys_;  // hull vertices, xs increasing
};

Envelope upper_convex_envelope(std::vector<std::pair<double, double>> points);

// Group-constrained bin rate for V over a single-factor Z_{p^r} group:
//   max_{theta=1..r} [ r log p - (r/theta) H([V]_theta | C) ]
// where [V]_theta labels the coset of the subgroup p^theta Z_{p^r}.
double group_mi_source_zpr(const JointPmf& p, const std::string& v_var, VarMask cond,
                           const Group& g);

// General Abelian version: grid search over factor weights w (sum 1) of
//   max_{theta != 0} [ log|coset alphabet of theta| - H([V]_theta|C) ] / (1 - w_theta)
// with w_theta = sum_i w_i (r_i - theta_i) / r_i.
double group_mi_source_abelian(const JointPmf& p, const std::string& v_var, VarMask cond,
                               const Group& g, int weight_grid = 201);

// log|V| minus the applicable bin rate; dispatches on the factor count.
double group_entropy_source(const JointPmf& p, const std::string& v_var, VarMask cond,
                            const Group& g, int weight_grid = 201);

// min_{theta=0..r-1} (r/(r-theta)) I(V;Y|[V]_theta) for single-factor Z_{p^r}.
double group_mi_channel_zpr(const JointPmf& p, const std::string& v_var, VarMask y_vars,
                            const Group& g);

}  // namespace cosetmac
