#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cosetmac/field.hpp"

namespace cosetmac {

using fvec = std::vector<felem>;

// Row-major dense matrix over a finite field.
struct FieldMatrix {
  int rows = 0, cols = 0;
  fvec data;

  FieldMatrix() = default;
  FieldMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0) {}
  felem& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  felem at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  const felem* row(int r) const { return data.data() + static_cast<size_t>(r) * cols; }
};

// result += x * m over the field (x is a row vector of length m.rows)
void accumulate_vec_mat(const Field& f, const felem* x, const FieldMatrix& m, felem* result);

// Nested pair of coset codes: the inner k x n generator refines the outer
// (k+l) x n one, so the q^l cosets of the inner code partition the outer code.
struct NestedCosetCode {
  Field field;
  int n = 0, k = 0, l = 0;
  FieldMatrix g_inner;    // k x n
  FieldMatrix g_outer_i;  // l x n, rows completing the outer generator
  fvec bias;              // length n

  // v(a, m) = a g_inner + m g_outer_i + bias
  fvec codeword(const fvec& a, const fvec& m) const;

  // All q^k codewords of the coset indexed by m, duplicates collapsed.
  // Throws if q^k exceeds cap.
  std::vector<fvec> enumerate_coset(const fvec& m, std::uint64_t cap = 1ull << 20) const;

  // Visit the coset of m in Gray order (one generator-row update per step);
  // fn(step_index, codeword) returns false to stop early. Step indices
  // enumerate inner-coefficient vectors bijectively.
  void for_each_in_coset(const fvec& m, const std::function<bool(std::uint64_t, const fvec&)>& fn) const;

  std::uint64_t coset_size() const;
};

// Two encoder codes sharing the first k1 inner rows, plus the derived decoder
// code (inner generator of user 2, stacked message rows, summed bias).
struct MacCodePair {
  NestedCosetCode c1, c2;  // c2.k = c1.k + k_plus; shared leading inner rows
  int k1() const { return c1.k; }
  int k_plus() const { return c2.k - c1.k; }

  NestedCosetCode decoder_code() const;
  bool shared_rows_ok() const;
};

std::uint64_t ipow(std::uint64_t base, int exp);

// Mixed-radix digits of idx, most significant first, length len, base q.
fvec index_to_vec(std::uint64_t idx, int len, int q);
std::uint64_t vec_to_index(const fvec& v, int q);

}  // namespace cosetmac
