#pragma once

#include <cstdint>
#include <vector>

namespace cosetmac {

using felem = std::uint8_t;

bool is_prime(int n);
bool is_prime_power(int n);

// min{k >= a : k is a prime power}
int smallest_prime_power_geq(int a);

// GF(p^e) with dense operation tables. Elements are 0..q-1; for e > 1 the
// integer encodes the polynomial coefficients base p, lowest degree first,
// so GF(4) = {0, 1, x, x+1} is {0, 1, 2, 3}.
class Field {
 public:
  static constexpr int kMaxOrder = 8;

  Field() = default;  // empty; assign from make()

  // Uses the stock reduction polynomial for e > 1 (x^2+x+1 for GF(4),
  // x^3+x+1 for GF(8)).
  static Field make(int p, int e);
  // poly has e+1 coefficients over GF(p), lowest degree first, monic.
  static Field make(int p, int e, const std::vector<int>& poly);

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return e_; }

  felem add(felem a, felem b) const { return add_[a * q_ + b]; }
  felem mul(felem a, felem b) const { return mul_[a * q_ + b]; }
  felem neg(felem a) const { return neg_[a]; }
  felem sub(felem a, felem b) const { return add_[a * q_ + neg_[b]]; }
  felem inv(felem a) const;  // throws on 0
  felem div(felem a, felem b) const { return mul(a, inv(b)); }

  // Exhaustive associativity/commutativity/distributivity/inverse check.
  bool axioms_ok() const;

  bool operator==(const Field& o) const { return p_ == o.p_ && e_ == o.e_ && add_ == o.add_; }

 private:
  int p_ = 0, e_ = 0, q_ = 0;
  std::vector<felem> add_, mul_, neg_, inv_;
};

}  // namespace cosetmac
