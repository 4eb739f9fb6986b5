#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cosetmac {

// Finite Abelian group given as a direct sum of cyclic p-power factors.
// Elements are indices 0..order-1, mixed radix over the factor moduli
// (first factor most significant).
class Group {
 public:
  struct Factor {
    int p, r, modulus;  // modulus = p^r
  };

  static Group make(const std::vector<std::pair<int, int>>& factors);
  // "2^2" -> Z4, "2,2^2" -> Z2 + Z4, "3^2" -> Z9
  static Group parse(const std::string& spec);

  int order() const { return order_; }
  int factor_count() const { return static_cast<int>(factors_.size()); }
  const Factor& factor(int i) const { return factors_[i]; }
  std::string to_string() const;

  std::vector<int> to_tuple(int x) const;
  int from_tuple(const std::vector<int>& t) const;

  int add(int x, int y) const;
  int neg(int x) const;
  int zero() const { return 0; }

  // theta_i in [0, r_i]; the subgroup is the direct sum of p_i^{theta_i} Z_{p_i^{r_i}}.
  bool theta_valid(const std::vector<int>& theta) const;
  int subgroup_order(const std::vector<int>& theta) const;
  int coset_count(const std::vector<int>& theta) const;
  // Canonical label of x's coset: equal labels iff the difference is in the subgroup.
  int coset_label(const std::vector<int>& theta, int x) const;
  std::vector<int> subgroup_elements(const std::vector<int>& theta) const;

  // All theta vectors, including all-zero (whole group) and all-r (trivial).
  std::vector<std::vector<int>> all_thetas() const;

 private:
  std::vector<Factor> factors_;
  int order_ = 1;
};

}  // namespace cosetmac
