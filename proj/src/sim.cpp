#include "cosetmac/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cosetmac {

NestedCosetCode sample_nested_code(const Field& f, int n, int k, int l, Rng& rng, std::uint64_t cap) {
  if (n < 0 || k < 0 || l < 0) throw std::invalid_argument("sample_nested_code: negative dimension");
  if (ipow(f.order(), k) > cap) throw std::length_error("sample_nested_code: coset size exceeds cap");
  NestedCosetCode c;
  c.field = f;
  c.n = n;
  c.k = k;
  c.l = l;
  c.g_inner = FieldMatrix(k, n);
  c.g_outer_i = FieldMatrix(l, n);
  c.bias.resize(n);
  const int q = f.order();
  for (auto& e : c.g_inner.data) e = static_cast<felem>(rng.next_below(q));
  for (auto& e : c.g_outer_i.data) e = static_cast<felem>(rng.next_below(q));
  for (auto& e : c.bias) e = static_cast<felem>(rng.next_below(q));
  return c;
}

GpParams gp_code_params(double h_v_given_s, double h_v_given_y, int q, int n, double eta) {
  if (n < 1 || eta < 0.0) throw std::invalid_argument("gp_code_params: need n >= 1 and eta >= 0");
  const double logq = std::log2(static_cast<double>(q));
  GpParams p;
  p.k = static_cast<int>(std::ceil(n * (1.0 - h_v_given_s / logq + eta / (8.0 * logq))));
  const int outer = static_cast<int>(std::floor(n * (1.0 - h_v_given_y / logq - eta / (8.0 * logq))));
  p.l = outer - p.k;
  if (p.l < 0) {
    p.l = 0;
    p.l_clamped = true;
  }
  return p;
}

GpParams gp_code_params(const PtpTestChannel& tc, int n, double eta) {
  JointPmf j = tc.joint();
  const double h_vs = j.conditional_entropy(j.mask_of({"V"}), j.mask_of({"S"}));
  const double h_vy = j.conditional_entropy(j.mask_of({"V"}), j.mask_of({"Y"}));
  return gp_code_params(h_vs, h_vy, tc.nv, n, eta);
}

EncodeResult typicality_encode(const NestedCosetCode& code, const std::vector<double>& p_vs,
                               int s_alphabet, const fvec& m, const std::vector<int>& s_seq,
                               double delta, Rng& rng, std::uint64_t cap) {
  const int n = code.n;
  if (static_cast<int>(s_seq.size()) != n) throw std::invalid_argument("typicality_encode: state length");
  for (int s : s_seq)
    if (s < 0 || s >= s_alphabet) throw std::invalid_argument("typicality_encode: state symbol out of range");
  if (code.coset_size() > cap) throw std::length_error("typicality_encode: coset size exceeds cap");

  TypicalityContext ctx{p_vs, delta};
  const auto win = ctx.count_windows(n);
  const int cells = static_cast<int>(p_vs.size());

  std::vector<std::int64_t> counts(cells);
  std::vector<std::uint64_t> typical;
  code.for_each_in_coset(m, [&](std::uint64_t idx, const fvec& v) {
    std::fill(counts.begin(), counts.end(), 0);
    bool ok = true;
    for (int t = 0; t < n; ++t) {
      const int cell = v[t] * s_alphabet + s_seq[t];
      if (++counts[cell] > win[cell].hi) {
        ok = false;
        break;
      }
    }
    if (ok)
      for (int c = 0; c < cells; ++c)
        if (counts[c] < win[c].lo) {
          ok = false;
          break;
        }
    if (ok) typical.push_back(idx);
    return true;
  });

  EncodeResult out;
  std::uint64_t pick;
  if (typical.empty()) {
    out.failure = true;
    pick = rng.next_below(code.coset_size());
  } else {
    pick = typical[rng.next_below(typical.size())];
  }
  out.v = code.codeword(index_to_vec(pick, code.k, code.field.order()), m);
  return out;
}

namespace {

// Row-reduce G (rows x n) over f, tracking the transform T with T G = R.
// Exposes rank, pivots, a solver for x G = t, and the left null space.
struct LeftSolver {
  const Field& f;
  int rows, n, rank = 0;
  FieldMatrix R, T;
  std::vector<int> pivot_col;

  LeftSolver(const Field& field, const FieldMatrix& g) : f(field), rows(g.rows), n(g.cols), R(g), T(g.rows, g.rows) {
    for (int i = 0; i < rows; ++i) T.at(i, i) = 1;
    int r = 0;
    for (int c = 0; c < n && r < rows; ++c) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (R.at(i, c) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      swap_rows(R, piv, r);
      swap_rows(T, piv, r);
      const felem inv = f.inv(R.at(r, c));
      scale_row(R, r, inv);
      scale_row(T, r, inv);
      for (int i = 0; i < rows; ++i) {
        if (i == r) continue;
        const felem coef = R.at(i, c);
        if (coef == 0) continue;
        axpy_row(R, i, r, f.neg(coef));
        axpy_row(T, i, r, f.neg(coef));
      }
      pivot_col.push_back(c);
      ++r;
    }
    rank = r;
  }

  void swap_rows(FieldMatrix& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
  }
  void scale_row(FieldMatrix& m, int r, felem c) {
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), c);
  }
  void axpy_row(FieldMatrix& m, int dst, int src, felem c) {
    for (int j = 0; j < m.cols; ++j) m.at(dst, j) = f.add(m.at(dst, j), f.mul(c, m.at(src, j)));
  }

  // Solve x G = t; returns false when t is outside the row space.
  bool solve(const fvec& t, fvec& x) const {
    fvec resid = t;
    x.assign(rows, 0);
    for (int i = 0; i < rank; ++i) {
      const felem coef = resid[pivot_col[i]];
      if (coef == 0) continue;
      for (int j = 0; j < n; ++j) resid[j] = f.sub(resid[j], f.mul(coef, R.at(i, j)));
      for (int j = 0; j < rows; ++j) x[j] = f.add(x[j], f.mul(coef, T.at(i, j)));
    }
    for (felem e : resid)
      if (e != 0) return false;
    return true;
  }

  // True when every left-null vector vanishes on coordinates [lo, hi).
  bool null_space_vanishes_on(int lo, int hi) const {
    for (int i = rank; i < rows; ++i)
      for (int j = lo; j < hi; ++j)
        if (T.at(i, j) != 0) return false;
    return true;
  }
};

// For each output symbol with positive probability, the unique positive-mass
// sum symbol, or nullopt if some output symbol mixes several.
std::optional<std::vector<int>> matched_sum_symbol(const std::vector<double>& p_wy, int nw, int ny) {
  std::vector<int> match(ny, -1);
  for (int y = 0; y < ny; ++y) {
    int found = -1;
    for (int w = 0; w < nw; ++w) {
      if (p_wy[w * ny + y] >= kSupportEps) {
        if (found >= 0) return std::nullopt;
        found = w;
      }
    }
    match[y] = found;  // -1 means the output symbol has zero probability
  }
  return match;
}

}  // namespace

DecodeResult decode_sum(const MacCodePair& pair, const std::vector<double>& p_wy, int y_alphabet,
                        const std::vector<int>& y_seq, double delta, int l1, std::uint64_t cap) {
  const NestedCosetCode d = pair.decoder_code();
  const Field& f = d.field;
  const int n = d.n;
  const int nw = static_cast<int>(p_wy.size()) / y_alphabet;
  if (static_cast<int>(y_seq.size()) != n) throw std::invalid_argument("decode_sum: output length");
  for (int y : y_seq)
    if (y < 0 || y >= y_alphabet) throw std::invalid_argument("decode_sum: output symbol out of range");

  TypicalityContext ctx{p_wy, delta};
  const auto win = ctx.count_windows(n);

  DecodeResult out;

  if (auto match = matched_sum_symbol(p_wy, nw, y_alphabet)) {
    // Candidates typical with y must equal the matched sum sequence exactly.
    std::vector<std::int64_t> counts(p_wy.size(), 0);
    fvec w(n);
    for (int t = 0; t < n; ++t) {
      const int ws = (*match)[y_seq[t]];
      if (ws < 0) {
        out.empty = true;
        return out;
      }
      w[t] = static_cast<felem>(ws);
      ++counts[ws * y_alphabet + y_seq[t]];
    }
    if (!ctx.counts_typical(counts, n)) {
      out.empty = true;
      return out;
    }
    FieldMatrix g(d.k + d.l, n);
    for (int r = 0; r < d.k; ++r)
      for (int j = 0; j < n; ++j) g.at(r, j) = d.g_inner.at(r, j);
    for (int r = 0; r < d.l; ++r)
      for (int j = 0; j < n; ++j) g.at(d.k + r, j) = d.g_outer_i.at(r, j);
    LeftSolver solver(f, g);
    fvec target(n);
    for (int j = 0; j < n; ++j) target[j] = f.sub(w[j], d.bias[j]);
    fvec x;
    if (!solver.solve(target, x)) {
      out.empty = true;
      return out;
    }
    if (!solver.null_space_vanishes_on(d.k, d.k + d.l)) {
      out.wrong_candidate = true;  // several distinct messages explain the list
      return out;
    }
    out.decoded = true;
    out.m1.assign(x.begin() + d.k, x.begin() + d.k + l1);
    out.m2.assign(x.begin() + d.k + l1, x.begin() + d.k + d.l);
    return out;
  }

  // General path: enumerate the decoder code per message coset.
  const std::uint64_t messages = ipow(f.order(), d.l);
  if (messages * d.coset_size() > cap) throw std::length_error("decode_sum: enumeration exceeds cap");
  const int cells = static_cast<int>(p_wy.size());
  std::vector<std::int64_t> counts(cells);
  fvec first_m;
  bool found = false;
  for (std::uint64_t mi = 0; mi < messages; ++mi) {
    const fvec m = index_to_vec(mi, d.l, f.order());
    bool hit = false;
    d.for_each_in_coset(m, [&](std::uint64_t, const fvec& v) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int t = 0; t < n; ++t) {
        const int cell = v[t] * y_alphabet + y_seq[t];
        if (++counts[cell] > win[cell].hi) return true;
      }
      for (int c = 0; c < cells; ++c)
        if (counts[c] < win[c].lo) return true;
      hit = true;
      return false;
    });
    if (!hit) continue;
    if (found) {
      out.wrong_candidate = true;
      return out;
    }
    found = true;
    first_m = m;
  }
  if (!found) {
    out.empty = true;
    return out;
  }
  out.decoded = true;
  out.m1.assign(first_m.begin(), first_m.begin() + l1);
  out.m2.assign(first_m.begin() + l1, first_m.end());
  return out;
}

namespace {

struct TrialCounts {
  std::uint64_t enc_fail[2] = {0, 0};
  std::uint64_t enc_fail_styp[2] = {0, 0};
  std::uint64_t dec_err = 0;
  std::uint64_t dec_wrong = 0;
  double cost[2] = {0.0, 0.0};

  void operator+=(const TrialCounts& o) {
    for (int j = 0; j < 2; ++j) {
      enc_fail[j] += o.enc_fail[j];
      enc_fail_styp[j] += o.enc_fail_styp[j];
      cost[j] += o.cost[j];
    }
    dec_err += o.dec_err;
    dec_wrong += o.dec_wrong;
  }
};

MacCodePair draw_pair(const Field& f, const SimPoint& pt, Rng& rng, std::uint64_t cap) {
  MacCodePair pair;
  const int q = f.order();
  const int k2 = pt.k1 + pt.k_plus;
  FieldMatrix shared(pt.k1, pt.n);
  for (auto& e : shared.data) e = static_cast<felem>(rng.next_below(q));
  FieldMatrix extra(pt.k_plus, pt.n);
  for (auto& e : extra.data) e = static_cast<felem>(rng.next_below(q));

  pair.c1.field = f;
  pair.c1.n = pt.n;
  pair.c1.k = pt.k1;
  pair.c1.l = pt.l1;
  pair.c1.g_inner = shared;
  pair.c1.g_outer_i = FieldMatrix(pt.l1, pt.n);
  for (auto& e : pair.c1.g_outer_i.data) e = static_cast<felem>(rng.next_below(q));
  pair.c1.bias.resize(pt.n);
  for (auto& e : pair.c1.bias) e = static_cast<felem>(rng.next_below(q));

  pair.c2.field = f;
  pair.c2.n = pt.n;
  pair.c2.k = k2;
  pair.c2.l = pt.l2;
  pair.c2.g_inner = FieldMatrix(k2, pt.n);
  for (int r = 0; r < pt.k1; ++r)
    for (int j = 0; j < pt.n; ++j) pair.c2.g_inner.at(r, j) = shared.at(r, j);
  for (int r = 0; r < pt.k_plus; ++r)
    for (int j = 0; j < pt.n; ++j) pair.c2.g_inner.at(pt.k1 + r, j) = extra.at(r, j);
  pair.c2.g_outer_i = FieldMatrix(pt.l2, pt.n);
  for (auto& e : pair.c2.g_outer_i.data) e = static_cast<felem>(rng.next_below(q));
  pair.c2.bias.resize(pt.n);
  for (auto& e : pair.c2.bias) e = static_cast<felem>(rng.next_below(q));

  if (ipow(q, pt.k1) > cap || ipow(q, k2) > cap)
    throw std::length_error("simulate_mac: encoder coset size exceeds cap");
  return pair;
}

}  // namespace

SimReport simulate_mac(const TestChannel& tc, const SimPoint& pt, const SimConfig& cfg) {
  if (tc.nu != 1) throw std::invalid_argument("simulate_mac: strategies with an unstructured auxiliary are not simulated");
  if (tc.vkind != VKind::field) throw std::invalid_argument("simulate_mac: simulation needs a field-structured strategy");
  if (cfg.trials == 0) throw std::invalid_argument("simulate_mac: trials must be positive");
  const Field& f = *tc.field;
  const MacChannel& ch = tc.ch;

  const std::vector<double> vs1 = vs_table(tc, 0);
  const std::vector<double> vs2 = vs_table(tc, 1);
  const std::vector<double> wy = wy_table(tc);
  const std::vector<double> s1_marg = ch.state_marginal(0);
  const std::vector<double> s2_marg = ch.state_marginal(1);

  const double d_dec = cfg.delta;
  const double d_enc = cfg.delta / 2.0;
  const double d_state = cfg.delta / 4.0;

  TypicalityContext s_ctx1{s1_marg, d_state};
  TypicalityContext s_ctx2{s2_marg, d_state};
  const auto s_win1 = s_ctx1.count_windows(pt.n);
  const auto s_win2 = s_ctx2.count_windows(pt.n);

  std::optional<MacCodePair> fixed;
  if (cfg.fixed_code) {
    Rng code_rng(cfg.seed, ~0ull);
    fixed = draw_pair(f, pt, code_rng, cfg.cap);
  }

  const int workers = cfg.workers > 0 ? cfg.workers : default_workers();
  const int nchunks = 128;
  std::vector<TrialCounts> chunk_counts(nchunks);
  std::atomic<int> next{0};
  std::exception_ptr worker_error;
  std::mutex error_mutex;

  auto run_chunk = [&](int c) {
    TrialCounts acc;
    const std::uint64_t lo = cfg.trials * c / nchunks;
    const std::uint64_t hi = cfg.trials * (c + 1) / nchunks;
    std::vector<int> s1(pt.n), s2(pt.n), y(pt.n);
    std::vector<std::int64_t> scount1(ch.S1), scount2(ch.S2);
    for (std::uint64_t trial = lo; trial < hi; ++trial) {
      Rng rng(cfg.seed, trial);
      MacCodePair pair = fixed ? *fixed : draw_pair(f, pt, rng, cfg.cap);

      std::fill(scount1.begin(), scount1.end(), 0);
      std::fill(scount2.begin(), scount2.end(), 0);
      for (int t = 0; t < pt.n; ++t) {
        const int joint = rng.next_categorical(ch.state.data(), ch.S1 * ch.S2);
        s1[t] = joint / ch.S2;
        s2[t] = joint % ch.S2;
        ++scount1[s1[t]];
        ++scount2[s2[t]];
      }
      const fvec m1 = index_to_vec(rng.next_below(ipow(f.order(), pt.l1)), pt.l1, f.order());
      const fvec m2 = index_to_vec(rng.next_below(ipow(f.order(), pt.l2)), pt.l2, f.order());

      EncodeResult e1 = typicality_encode(pair.c1, vs1, ch.S1, m1, s1, d_enc, rng, cfg.cap);
      EncodeResult e2 = typicality_encode(pair.c2, vs2, ch.S2, m2, s2, d_enc, rng, cfg.cap);
      if (e1.failure) {
        ++acc.enc_fail[0];
        bool styp = true;
        for (int s = 0; s < ch.S1; ++s)
          if (scount1[s] < s_win1[s].lo || scount1[s] > s_win1[s].hi) styp = false;
        if (styp) ++acc.enc_fail_styp[0];
      }
      if (e2.failure) {
        ++acc.enc_fail[1];
        bool styp = true;
        for (int s = 0; s < ch.S2; ++s)
          if (scount2[s] < s_win2[s].lo || scount2[s] > s_win2[s].hi) styp = false;
        if (styp) ++acc.enc_fail_styp[1];
      }

      double cost1 = 0.0, cost2 = 0.0;
      for (int t = 0; t < pt.n; ++t) {
        const double* px1 = tc.x_kernel[0].data() + ((0 * tc.nv + e1.v[t]) * ch.S1 + s1[t]) * ch.X1;
        const double* px2 = tc.x_kernel[1].data() + ((0 * tc.nv + e2.v[t]) * ch.S2 + s2[t]) * ch.X2;
        const int x1 = rng.next_categorical(px1, ch.X1);
        const int x2 = rng.next_categorical(px2, ch.X2);
        cost1 += ch.cost_at(0, x1, s1[t]);
        cost2 += ch.cost_at(1, x2, s2[t]);
        const double* py = ch.kernel.data() + (((s1[t] * ch.S2 + s2[t]) * ch.X1 + x1) * ch.X2 + x2) * ch.Y;
        y[t] = rng.next_categorical(py, ch.Y);
      }
      acc.cost[0] += cost1 / pt.n;
      acc.cost[1] += cost2 / pt.n;

      DecodeResult dr = decode_sum(pair, wy, ch.Y, y, d_dec, pt.l1, cfg.cap);
      const bool correct = dr.decoded && dr.m1 == m1 && dr.m2 == m2;
      if (!correct) ++acc.dec_err;
      if (dr.wrong_candidate || (dr.decoded && !correct)) ++acc.dec_wrong;
    }
    chunk_counts[c] = acc;
  };

  auto work = [&] {
    try {
      while (true) {
        const int c = next.fetch_add(1);
        if (c >= nchunks) break;
        run_chunk(c);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!worker_error) worker_error = std::current_exception();
      next.store(nchunks);  // drain remaining chunks
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(1, workers); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (worker_error) std::rethrow_exception(worker_error);

  SimReport rep;
  rep.point = pt;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.sum_rate = (pt.l1 + pt.l2) * std::log2(static_cast<double>(f.order())) / pt.n;
  TrialCounts total;
  for (const auto& c : chunk_counts) total += c;
  for (int j = 0; j < 2; ++j) {
    rep.enc_fail[j] = total.enc_fail[j];
    rep.enc_fail_state_typical[j] = total.enc_fail_styp[j];
    rep.cost[j] = total.cost[j] / cfg.trials;
  }
  rep.dec_err = total.dec_err;
  rep.dec_wrong_list = total.dec_wrong;
  return rep;
}

double encoder_failure_bound(double h_v_given_s, int q, int n, int k, double delta) {
  const double logq = std::log2(static_cast<double>(q));
  const double exponent =
      -static_cast<double>(n) * logq *
      (static_cast<double>(k) / n - (1.0 - h_v_given_s / logq + 3.0 * delta / (2.0 * logq)));
  return std::min(1.0, std::exp2(exponent));
}

double encoder_failure_bound(const TestChannel& tc, int user, int n, int k, double delta) {
  JointPmf j = tc.joint();
  const double h = user == 0 ? j.conditional_entropy(j.mask_of({"V1"}), j.mask_of({"S1"}))
                             : j.conditional_entropy(j.mask_of({"V2"}), j.mask_of({"S2"}));
  return encoder_failure_bound(h, tc.nv, n, k, delta);
}

double decoder_error_bound(double h_v_given_y, int q, int n, int k, int l, double delta) {
  const double logq = std::log2(static_cast<double>(q));
  const double exponent =
      -static_cast<double>(n) * logq *
      (1.0 - h_v_given_y / logq - 3.0 * delta / (2.0 * logq) - static_cast<double>(k + l) / n);
  return std::min(1.0, std::exp2(exponent));
}

double decoder_error_bound(const TestChannel& tc, int n, int k, int l, double delta) {
  JointPmf j = tc.joint();
  const int v1 = j.var_index("V1"), v2 = j.var_index("V2");
  JointPmf q = j.derived(j.mask_of({"Y"}), "W", tc.nv,
                         [&](const std::vector<int>& idx) { return tc.v_sum(idx[v1], idx[v2]); });
  const double h = q.conditional_entropy(q.mask_of({"W"}), q.mask_of({"Y"}));
  return decoder_error_bound(h, tc.nv, n, k, l, delta);
}

std::string sim_csv_header() {
  return "n,rate_sum,trials,enc_fail_1,enc_fail_2,dec_err,cost_1,cost_2,seed";
}

std::string sim_csv_row(const SimReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << r.point.n << ',' << r.sum_rate << ',' << r.trials << ',' << r.enc_fail[0] << ','
     << r.enc_fail[1] << ',' << r.dec_err << ',' << r.cost[0] << ',' << r.cost[1] << ',' << r.seed;
  return os.str();
}

}  // namespace cosetmac
