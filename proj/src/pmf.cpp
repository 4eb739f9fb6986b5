#include "cosetmac/pmf.hpp"

#include <cmath>
#include <stdexcept>

namespace cosetmac {

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entropy_of(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

JointPmf JointPmf::zeros(std::vector<Var> vars) {
  JointPmf p;
  std::size_t n = 1;
  for (const auto& v : vars) {
    if (v.size < 1) throw std::invalid_argument("JointPmf: alphabet size must be >= 1");
    n *= static_cast<std::size_t>(v.size);
    if (n > kMaxCells) throw std::length_error("JointPmf: table exceeds cell cap");
  }
  p.vars_ = std::move(vars);
  p.table_.assign(n, 0.0);
  return p;
}

JointPmf JointPmf::from_table(std::vector<Var> vars, std::vector<double> table) {
  JointPmf p = zeros(std::move(vars));
  if (table.size() != p.table_.size()) throw std::invalid_argument("JointPmf: table size mismatch");
  p.table_ = std::move(table);
  p.validate();
  return p;
}

void JointPmf::validate() const {
  double sum = 0.0;
  for (double v : table_) {
    if (v < 0.0) throw std::invalid_argument("JointPmf: negative probability entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("JointPmf: probabilities sum to " + std::to_string(sum));
}

int JointPmf::var_index(const std::string& name) const {
  for (int i = 0; i < var_count(); ++i)
    if (vars_[i].name == name) return i;
  return -1;
}

VarMask JointPmf::mask_of(const std::vector<std::string>& names) const {
  VarMask m = 0;
  for (const auto& n : names) {
    int i = var_index(n);
    if (i < 0) throw std::invalid_argument("JointPmf: unknown variable " + n);
    m |= VarMask(1) << i;
  }
  return m;
}

std::size_t JointPmf::flat_index(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (int i = 0; i < var_count(); ++i) f = f * vars_[i].size + idx[i];
  return f;
}

void JointPmf::unflatten(std::size_t flat, std::vector<int>& idx) const {
  idx.resize(vars_.size());
  for (int i = var_count() - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(flat % vars_[i].size);
    flat /= vars_[i].size;
  }
}

JointPmf JointPmf::marginal(VarMask keep) const {
  std::vector<Var> kv;
  for (int i = 0; i < var_count(); ++i)
    if (keep >> i & 1) kv.push_back(vars_[i]);
  if (kv.empty()) throw std::invalid_argument("JointPmf::marginal: empty variable subset");
  JointPmf out = zeros(kv);
  std::vector<int> idx;
  for (std::size_t f = 0; f < table_.size(); ++f) {
    if (table_[f] == 0.0) continue;
    unflatten(f, idx);
    std::size_t g = 0;
    for (int i = 0; i < var_count(); ++i)
      if (keep >> i & 1) g = g * vars_[i].size + idx[i];
    out.table_[g] += table_[f];
  }
  return out;
}

JointPmf JointPmf::derived(VarMask keep, const std::string& name, int size,
                           const std::function<int(const std::vector<int>&)>& fn) const {
  std::vector<Var> kv;
  for (int i = 0; i < var_count(); ++i)
    if (keep >> i & 1) kv.push_back(vars_[i]);
  kv.push_back({name, size});
  JointPmf out = zeros(kv);
  std::vector<int> idx;
  for (std::size_t f = 0; f < table_.size(); ++f) {
    if (table_[f] == 0.0) continue;
    unflatten(f, idx);
    std::size_t g = 0;
    for (int i = 0; i < var_count(); ++i)
      if (keep >> i & 1) g = g * vars_[i].size + idx[i];
    int w = fn(idx);
    if (w < 0 || w >= size) throw std::out_of_range("JointPmf::derived: value out of range");
    out.table_[g * size + w] += table_[f];
  }
  return out;
}

double JointPmf::entropy(VarMask vars) const {
  if (vars == 0) throw std::invalid_argument("JointPmf::entropy: empty variable subset");
  JointPmf m = marginal(vars);
  return entropy_of(m.table_);
}

double JointPmf::conditional_entropy(VarMask a, VarMask b) const {
  if (a & b) throw std::invalid_argument("JointPmf: overlapping variable subsets");
  if (b == 0) return entropy(a);
  return entropy(a | b) - entropy(b);
}

double JointPmf::mutual_information(VarMask a, VarMask b) const {
  if (a & b) throw std::invalid_argument("JointPmf: overlapping variable subsets");
  return entropy(a) + entropy(b) - entropy(a | b);
}

double JointPmf::conditional_mi(VarMask a, VarMask b, VarMask c) const {
  if ((a & b) || (a & c) || (b & c))
    throw std::invalid_argument("JointPmf: overlapping variable subsets");
  if (c == 0) return mutual_information(a, b);
  return entropy(a | c) + entropy(b | c) - entropy(a | b | c) - entropy(c);
}

double JointPmf::expect(const std::function<double(const std::vector<int>&)>& fn) const {
  double e = 0.0;
  std::vector<int> idx;
  for (std::size_t f = 0; f < table_.size(); ++f) {
    if (table_[f] == 0.0) continue;
    unflatten(f, idx);
    e += table_[f] * fn(idx);
  }
  return e;
}

}  // namespace cosetmac
