#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cosetmac/coset_code.hpp"
#include "cosetmac/info.hpp"
#include "cosetmac/rng.hpp"
#include "cosetmac/search.hpp"
#include "cosetmac/test_channel.hpp"

namespace cosetmac {

NestedCosetCode sample_nested_code(const Field& f, int n, int k, int l, Rng& rng,
                                   std::uint64_t cap = 1ull << 20);

struct GpParams {
  int k = 0, l = 0;
  bool l_clamped = false;  // true when the blocklength cannot carry the rate
};

// k = ceil(n (1 - H(V|S)/log q + eta/(8 log q))),
// k + l = floor(n (1 - H(V|Y)/log q - eta/(8 log q))), l floored at 0.
GpParams gp_code_params(double h_v_given_s, double h_v_given_y, int q, int n, double eta);
GpParams gp_code_params(const PtpTestChannel& tc, int n, double eta);

struct EncodeResult {
  fvec v;
  bool failure = false;  // no coset member was jointly typical with the state
};

// Uniform pick from the jointly typical members of the coset of m; falls back
// to a uniform coset member (flagged) when the list is empty.
EncodeResult typicality_encode(const NestedCosetCode& code, const std::vector<double>& p_vs,
                               int s_alphabet, const fvec& m, const std::vector<int>& s_seq,
                               double delta, Rng& rng, std::uint64_t cap = 1ull << 20);

struct DecodeResult {
  bool decoded = false;
  fvec m1, m2;              // valid when decoded
  bool wrong_candidate = false;  // some message outside the decoded one hit the list
  bool empty = false;
};

// List decoder for the sum codeword: messages m whose coset contains a vector
// jointly typical with y under p_{V1+V2, Y}. Exact for any blocklength; when
// every output symbol pins a unique sum symbol the list is resolved by linear
// algebra, otherwise the decoder code is enumerated (subject to cap).
DecodeResult decode_sum(const MacCodePair& pair, const std::vector<double>& p_wy, int y_alphabet,
                        const std::vector<int>& y_seq, double delta, int l1,
                        std::uint64_t cap = 1ull << 20);

struct SimPoint {
  int n = 0;
  int k1 = 0, k_plus = 0, l1 = 0, l2 = 0;
};

struct SimConfig {
  std::uint64_t trials = 1000;
  double delta = 1.0;  // decoder radius; encoder uses delta/2, state check delta/4
  std::uint64_t seed = 1;
  int workers = 0;
  bool fixed_code = false;  // one code for all trials instead of per-trial draws
  std::uint64_t cap = 1ull << 20;
};

struct SimReport {
  SimPoint point;
  std::uint64_t trials = 0;
  std::uint64_t enc_fail[2] = {0, 0};
  std::uint64_t enc_fail_state_typical[2] = {0, 0};  // failure with a typical state, the bound's event
  std::uint64_t dec_err = 0;         // decoded pair != transmitted pair (or no decode)
  std::uint64_t dec_wrong_list = 0;  // some wrong message entered the decoder list
  double cost[2] = {0.0, 0.0};
  std::uint64_t seed = 0;
  double sum_rate = 0.0;  // (l1+l2) log q / n
};

SimReport simulate_mac(const TestChannel& tc, const SimPoint& pt, const SimConfig& cfg);

// 2^{-n log q (k/n - (1 - H(V|S)/log q + 3 delta/(2 log q)))} clamped to [0,1].
double encoder_failure_bound(double h_v_given_s, int q, int n, int k, double delta);
double encoder_failure_bound(const TestChannel& tc, int user, int n, int k, double delta);

// 2^{-n log q (1 - H/log q - 3 delta/(2 log q) - (k+l)/n)} clamped to [0,1];
// H is H(V|Y) for one user and H(V1+V2|Y) for the pair.
double decoder_error_bound(double h_v_given_y, int q, int n, int k, int l, double delta);
double decoder_error_bound(const TestChannel& tc, int n, int k, int l, double delta);

std::string sim_csv_header();
std::string sim_csv_row(const SimReport& r);

}  // namespace cosetmac
