#include "cosetmac/field.hpp"

#include <stdexcept>
#include <string>

namespace cosetmac {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_prime_power(int n) {
  if (n < 2) return false;
  for (int p = 2; p <= n; ++p) {
    if (!is_prime(p)) continue;
    int m = n;
    while (m % p == 0) m /= p;
    if (m == 1) return true;
    if (p * p > n) break;
  }
  return is_prime(n);
}

int smallest_prime_power_geq(int a) {
  if (a < 1) throw std::invalid_argument("smallest_prime_power_geq: a must be >= 1");
  int k = a < 2 ? 2 : a;
  while (!is_prime_power(k)) ++k;
  return k;
}

namespace {

std::vector<int> default_poly(int p, int e) {
  if (p == 2 && e == 2) return {1, 1, 1};     // x^2 + x + 1
  if (p == 2 && e == 3) return {1, 1, 0, 1};  // x^3 + x + 1
  throw std::invalid_argument("Field::make: no stock reduction polynomial for GF(" +
                              std::to_string(p) + "^" + std::to_string(e) + ")");
}

// polynomial coefficients of element a, base-p digits low to high
void digits(int a, int p, int e, int* out) {
  for (int i = 0; i < e; ++i) {
    out[i] = a % p;
    a /= p;
  }
}

int undigits(const int* d, int p, int e) {
  int v = 0;
  for (int i = e - 1; i >= 0; --i) v = v * p + d[i];
  return v;
}

}  // namespace

Field Field::make(int p, int e) {
  if (e > 1) return make(p, e, default_poly(p, e));
  return make(p, e, std::vector<int>{});
}

Field Field::make(int p, int e, const std::vector<int>& poly) {
  if (!is_prime(p)) throw std::invalid_argument("Field::make: p must be prime");
  if (e < 1) throw std::invalid_argument("Field::make: e must be >= 1");
  long q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  if (q > kMaxOrder)
    throw std::invalid_argument("Field::make: order " + std::to_string(q) +
                                " exceeds the supported cap of " + std::to_string(kMaxOrder));

  Field f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = static_cast<int>(q);
  f.add_.resize(q * q);
  f.mul_.resize(q * q);
  f.neg_.resize(q);
  f.inv_.assign(q, 0);

  if (e == 1) {
    for (int a = 0; a < q; ++a) {
      f.neg_[a] = static_cast<felem>((p - a) % p);
      for (int b = 0; b < q; ++b) {
        f.add_[a * q + b] = static_cast<felem>((a + b) % p);
        f.mul_[a * q + b] = static_cast<felem>((a * b) % p);
      }
    }
  } else {
    if (static_cast<int>(poly.size()) != e + 1 || poly[e] % p != 1)
      throw std::invalid_argument("Field::make: reduction polynomial must be monic of degree e");
    int da[8], db[8], prod[16];
    for (int a = 0; a < q; ++a) {
      digits(a, p, e, da);
      for (int i = 0; i < e; ++i) da[i] = (p - da[i]) % p;
      f.neg_[a] = static_cast<felem>(undigits(da, p, e));
    }
    for (int a = 0; a < q; ++a) {
      digits(a, p, e, da);
      for (int b = 0; b < q; ++b) {
        digits(b, p, e, db);
        int ds[8];
        for (int i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
        f.add_[a * q + b] = static_cast<felem>(undigits(ds, p, e));

        for (int i = 0; i < 2 * e; ++i) prod[i] = 0;
        for (int i = 0; i < e; ++i)
          for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        // reduce modulo the monic polynomial
        for (int d = 2 * e - 2; d >= e; --d) {
          int c = prod[d];
          if (c == 0) continue;
          prod[d] = 0;
          for (int i = 0; i < e; ++i) {
            int idx = d - e + i;
            prod[idx] = (prod[idx] + c * (p - poly[i] % p)) % p;
          }
        }
        f.mul_[a * q + b] = static_cast<felem>(undigits(prod, p, e));
      }
    }
  }

  for (int a = 1; a < q; ++a) {
    bool found = false;
    for (int b = 1; b < q; ++b)
      if (f.mul_[a * q + b] == 1) {
        f.inv_[a] = static_cast<felem>(b);
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("Field::make: reduction polynomial is not irreducible");
  }
  return f;
}

felem Field::inv(felem a) const {
  if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
  return inv_[a];
}

bool Field::axioms_ok() const {
  const int q = q_;
  for (int a = 0; a < q; ++a) {
    if (add(static_cast<felem>(a), 0) != a) return false;
    if (mul(static_cast<felem>(a), 1) != a) return false;
    if (add(static_cast<felem>(a), neg(static_cast<felem>(a))) != 0) return false;
    if (a != 0 && mul(static_cast<felem>(a), inv(static_cast<felem>(a))) != 1) return false;
    for (int b = 0; b < q; ++b) {
      if (add(a, b) != add(b, a)) return false;
      if (mul(a, b) != mul(b, a)) return false;
      for (int c = 0; c < q; ++c) {
        if (add(add(a, b), static_cast<felem>(c)) != add(a, add(b, c))) return false;
        if (mul(mul(a, b), static_cast<felem>(c)) != mul(a, mul(b, c))) return false;
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, static_cast<felem>(c)))) return false;
      }
    }
  }
  return true;
}

}  // namespace cosetmac
