#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cosetmac/field.hpp"

namespace cosetmac {

struct CheckReport {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

// Exact-count verification over every (g_inner, g_outer_i, bias) draw that the
// codewords are uniform and pairwise independent. With biasless_control the
// bias is pinned to zero, which must break uniformity.
CheckReport check_pairwise_independence(const Field& f, int n, int k, int l,
                                        bool biasless_control = false,
                                        std::uint64_t cap = 1ull << 22);

// Exact-count verification that a coset tuple is independent of any codeword
// in a different coset. With same_coset_control the competing codeword is
// taken from the same coset, which must break independence.
CheckReport check_coset_independence(const Field& f, int n, int k, int l,
                                     bool same_coset_control = false,
                                     std::uint64_t cap = 1ull << 22);

// Two-encoder variant with shared leading inner rows: the pair of encoder
// cosets must be independent of every decoder codeword in a competing coset.
CheckReport check_coset_independence_mac(const Field& f, int n, int k1, int k_plus, int l1, int l2,
                                         std::uint64_t cap = 1ull << 22);

// v(a1 0 + a2, m1 m2) == v1(a1,m1) + v2(a2,m2), exhaustive over arguments and
// every generator/bias draw of a tiny configuration.
CheckReport check_sum_identity(const Field& f, int n, int k1, int k_plus, int l1, int l2,
                               std::uint64_t cap = 1ull << 22);

// Typicality properties, used both by the verify battery and the tests.
CheckReport check_typical_logprob_sandwich(const std::vector<double>& pmf, double delta,
                                           const std::vector<int>& lengths, int samples,
                                           std::uint64_t seed);
CheckReport check_typical_set_size(double p1, double delta, int n_max);
CheckReport check_sanov_empirics(const std::vector<double>& pmf, double delta, int n, int trials,
                                 std::uint64_t seed);

struct VerifyOptions {
  bool negative_controls = false;
  std::uint64_t cap = 1ull << 22;
};

std::vector<CheckReport> run_verify_battery(const VerifyOptions& opt);

}  // namespace cosetmac
