#include "cosetmac/group.hpp"

#include <stdexcept>

#include "cosetmac/field.hpp"

namespace cosetmac {

Group Group::make(const std::vector<std::pair<int, int>>& factors) {
  if (factors.empty()) throw std::invalid_argument("Group::make: at least one cyclic factor required");
  Group g;
  for (auto [p, r] : factors) {
    if (!is_prime(p)) throw std::invalid_argument("Group::make: factor base must be prime");
    if (r < 1) throw std::invalid_argument("Group::make: factor exponent must be >= 1");
    long m = 1;
    for (int i = 0; i < r; ++i) m *= p;
    g.factors_.push_back({p, r, static_cast<int>(m)});
    g.order_ *= static_cast<int>(m);
    if (g.order_ > 1 << 20) throw std::invalid_argument("Group::make: order exceeds cap");
  }
  return g;
}

Group Group::parse(const std::string& spec) {
  std::vector<std::pair<int, int>> factors;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t caret = tok.find('^');
    int p = std::stoi(tok.substr(0, caret));
    int r = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
    factors.emplace_back(p, r);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return make(factors);
}

std::string Group::to_string() const {
  std::string s;
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += "+";
    s += "Z" + std::to_string(factors_[i].modulus);
  }
  return s;
}

std::vector<int> Group::to_tuple(int x) const {
  std::vector<int> t(factors_.size());
  for (int i = factor_count() - 1; i >= 0; --i) {
    t[i] = x % factors_[i].modulus;
    x /= factors_[i].modulus;
  }
  return t;
}

int Group::from_tuple(const std::vector<int>& t) const {
  if (static_cast<int>(t.size()) != factor_count())
    throw std::invalid_argument("Group: tuple arity mismatch");
  int x = 0;
  for (int i = 0; i < factor_count(); ++i) {
    if (t[i] < 0 || t[i] >= factors_[i].modulus)
      throw std::invalid_argument("Group: tuple entry out of range");
    x = x * factors_[i].modulus + t[i];
  }
  return x;
}

int Group::add(int x, int y) const {
  if (x < 0 || x >= order_ || y < 0 || y >= order_)
    throw std::invalid_argument("Group::add: element out of range");
  int out = 0;
  int mul = 1;
  // componentwise modular addition, working from the least significant factor
  for (int i = factor_count() - 1; i >= 0; --i) {
    int m = factors_[i].modulus;
    out += ((x % m + y % m) % m) * mul;
    x /= m;
    y /= m;
    mul *= m;
  }
  return out;
}

int Group::neg(int x) const {
  int out = 0;
  int mul = 1;
  for (int i = factor_count() - 1; i >= 0; --i) {
    int m = factors_[i].modulus;
    out += ((m - x % m) % m) * mul;
    x /= m;
    mul *= m;
  }
  return out;
}

bool Group::theta_valid(const std::vector<int>& theta) const {
  if (static_cast<int>(theta.size()) != factor_count()) return false;
  for (int i = 0; i < factor_count(); ++i)
    if (theta[i] < 0 || theta[i] > factors_[i].r) return false;
  return true;
}

int Group::subgroup_order(const std::vector<int>& theta) const {
  int n = 1;
  for (int i = 0; i < factor_count(); ++i) {
    int m = 1;
    for (int j = 0; j < factors_[i].r - theta[i]; ++j) m *= factors_[i].p;
    n *= m;
  }
  return n;
}

int Group::coset_count(const std::vector<int>& theta) const { return order_ / subgroup_order(theta); }

int Group::coset_label(const std::vector<int>& theta, int x) const {
  if (!theta_valid(theta)) throw std::invalid_argument("Group::coset_label: invalid theta");
  if (x < 0 || x >= order_) throw std::invalid_argument("Group::coset_label: element out of range");
  // Component i contributes x_i mod p_i^{theta_i}.
  std::vector<int> rem(factor_count());
  for (int i = factor_count() - 1; i >= 0; --i) {
    int m = factors_[i].modulus;
    int pt = 1;
    for (int j = 0; j < theta[i]; ++j) pt *= factors_[i].p;
    rem[i] = (x % m) % pt;
    x /= m;
  }
  int label = 0;
  for (int i = 0; i < factor_count(); ++i) {
    int pt = 1;
    for (int j = 0; j < theta[i]; ++j) pt *= factors_[i].p;
    label = label * pt + rem[i];
  }
  return label;
}

std::vector<int> Group::subgroup_elements(const std::vector<int>& theta) const {
  std::vector<int> out;
  for (int x = 0; x < order_; ++x)
    if (coset_label(theta, x) == coset_label(theta, 0)) out.push_back(x);
  return out;
}

std::vector<std::vector<int>> Group::all_thetas() const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(factor_count(), 0);
  while (true) {
    out.push_back(cur);
    int i = factor_count() - 1;
    while (i >= 0 && cur[i] == factors_[i].r) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

}  // namespace cosetmac
