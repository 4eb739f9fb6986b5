#include "cosetmac/coset_code.hpp"

#include <algorithm>
#include <stdexcept>

namespace cosetmac {

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

fvec index_to_vec(std::uint64_t idx, int len, int q) {
  fvec v(len, 0);
  for (int i = len - 1; i >= 0; --i) {
    v[i] = static_cast<felem>(idx % q);
    idx /= q;
  }
  return v;
}

std::uint64_t vec_to_index(const fvec& v, int q) {
  std::uint64_t idx = 0;
  for (felem e : v) idx = idx * q + e;
  return idx;
}

void accumulate_vec_mat(const Field& f, const felem* x, const FieldMatrix& m, felem* result) {
  for (int r = 0; r < m.rows; ++r) {
    felem c = x[r];
    if (c == 0) continue;
    const felem* row = m.row(r);
    for (int j = 0; j < m.cols; ++j) result[j] = f.add(result[j], f.mul(c, row[j]));
  }
}

fvec NestedCosetCode::codeword(const fvec& a, const fvec& m) const {
  if (static_cast<int>(a.size()) != k || static_cast<int>(m.size()) != l)
    throw std::invalid_argument("NestedCosetCode::codeword: dimension mismatch");
  fvec v = bias;
  accumulate_vec_mat(field, a.data(), g_inner, v.data());
  accumulate_vec_mat(field, m.data(), g_outer_i, v.data());
  return v;
}

std::uint64_t NestedCosetCode::coset_size() const { return ipow(field.order(), k); }

void NestedCosetCode::for_each_in_coset(const fvec& m,
                                        const std::function<bool(std::uint64_t, const fvec&)>& fn) const {
  const int q = field.order();
  fvec v = bias;
  accumulate_vec_mat(field, m.data(), g_outer_i, v.data());
  const std::uint64_t total = coset_size();
  // Odometer over inner coefficients; step_index == lexicographic coefficient
  // index. Digit changes are applied incrementally (amortized O(1) row ops).
  fvec odo(k, 0);
  auto bump = [&](int pos, felem from, felem to) {
    const felem delta = field.sub(to, from);
    const felem* row = g_inner.row(pos);
    for (int j = 0; j < n; ++j) v[j] = field.add(v[j], field.mul(delta, row[j]));
  };
  for (std::uint64_t idx = 0;; ++idx) {
    if (!fn(idx, v)) return;
    if (idx + 1 == total) break;
    int pos = k - 1;
    while (odo[pos] == q - 1) {
      bump(pos, static_cast<felem>(q - 1), 0);
      odo[pos] = 0;
      --pos;
    }
    bump(pos, odo[pos], static_cast<felem>(odo[pos] + 1));
    odo[pos] = static_cast<felem>(odo[pos] + 1);
  }
}

std::vector<fvec> NestedCosetCode::enumerate_coset(const fvec& m, std::uint64_t cap) const {
  if (coset_size() > cap) throw std::length_error("NestedCosetCode::enumerate_coset: cap exceeded");
  std::vector<fvec> out;
  out.reserve(coset_size());
  for_each_in_coset(m, [&](std::uint64_t, const fvec& v) {
    out.push_back(v);
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NestedCosetCode MacCodePair::decoder_code() const {
  NestedCosetCode d;
  d.field = c2.field;
  d.n = c2.n;
  d.k = c2.k;
  d.l = c1.l + c2.l;
  d.g_inner = c2.g_inner;
  d.g_outer_i = FieldMatrix(d.l, d.n);
  for (int r = 0; r < c1.l; ++r)
    for (int j = 0; j < d.n; ++j) d.g_outer_i.at(r, j) = c1.g_outer_i.at(r, j);
  for (int r = 0; r < c2.l; ++r)
    for (int j = 0; j < d.n; ++j) d.g_outer_i.at(c1.l + r, j) = c2.g_outer_i.at(r, j);
  d.bias.resize(d.n);
  for (int j = 0; j < d.n; ++j) d.bias[j] = d.field.add(c1.bias[j], c2.bias[j]);
  return d;
}

bool MacCodePair::shared_rows_ok() const {
  if (c1.n != c2.n || c2.k < c1.k) return false;
  for (int r = 0; r < c1.k; ++r)
    for (int j = 0; j < c1.n; ++j)
      if (c1.g_inner.at(r, j) != c2.g_inner.at(r, j)) return false;
  return true;
}

}  // namespace cosetmac
