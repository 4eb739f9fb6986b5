#include "cosetmac/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "cosetmac/coset_code.hpp"

namespace cosetmac {

int default_workers() {
  if (const char* env = std::getenv("COSETMAC_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

std::vector<double> parse_tau_grid(const std::string& spec) {
  double lo, hi, step;
  char c1, c2;
  std::istringstream ss(spec);
  if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
    throw std::invalid_argument("tau grid: expected lo:hi:step with positive step, got \"" + spec + "\"");
  std::vector<double> taus;
  for (int i = 0;; ++i) {
    const double t = lo + i * step;
    if (t > hi + 1e-12) break;
    taus.push_back(t);
  }
  return taus;
}

namespace {

// All pmfs over `size` symbols with entries multiples of 1/steps.
void enumerate_simplex(int size, int steps, std::vector<std::vector<double>>& out) {
  std::vector<int> comp(size, 0);
  comp[0] = steps;
  while (true) {
    std::vector<double> p(size);
    for (int i = 0; i < size; ++i) p[i] = static_cast<double>(comp[i]) / steps;
    out.push_back(std::move(p));
    if (size == 1) break;
    int i = size - 2;
    while (i >= 0 && comp[i] == 0) --i;
    if (i < 0) break;
    --comp[i];
    int rest = steps;
    for (int j = 0; j <= i; ++j) rest -= comp[j];
    comp[i + 1] = rest;
    for (int j = i + 2; j < size; ++j) comp[j] = 0;
  }
}

std::vector<UserConfig> build_user_configs(const MacChannel& ch, int user, int aux, int steps) {
  const int S = user == 0 ? ch.S1 : ch.S2;
  const int X = user == 0 ? ch.X1 : ch.X2;
  const std::vector<double> ps = ch.state_marginal(user);

  std::vector<std::vector<double>> simplex;
  enumerate_simplex(aux, steps, simplex);

  const std::uint64_t map_count = ipow(X, aux * S);
  std::uint64_t pmf_combos = 1;
  for (int s = 0; s < S; ++s) pmf_combos *= simplex.size();

  std::vector<UserConfig> out;
  out.reserve(pmf_combos * map_count);
  std::vector<int> pick(S, 0);
  while (true) {
    UserConfig base;
    base.p_given_s.resize(S * aux);
    for (int s = 0; s < S; ++s)
      for (int a = 0; a < aux; ++a) base.p_given_s[s * aux + a] = simplex[pick[s]][a];

    // marginal and information terms of the auxiliary
    std::vector<double> pa(aux, 0.0);
    double h_as = 0.0;
    for (int s = 0; s < S; ++s) {
      double hs = 0.0;
      for (int a = 0; a < aux; ++a) {
        const double p = base.p_given_s[s * aux + a];
        pa[a] += ps[s] * p;
        if (p > 0.0) hs -= p * std::log2(p);
      }
      h_as += ps[s] * hs;
    }
    base.h_a = entropy_of(pa);
    base.h_a_given_s = h_as;
    base.i_a_s = base.h_a - h_as;

    for (std::uint64_t mi = 0; mi < map_count; ++mi) {
      UserConfig cfg = base;
      cfg.map.resize(aux * S);
      std::uint64_t m = mi;
      for (int j = aux * S - 1; j >= 0; --j) {
        cfg.map[j] = static_cast<int>(m % X);
        m /= X;
      }
      cfg.cost = 0.0;
      for (int s = 0; s < S; ++s)
        for (int a = 0; a < aux; ++a)
          cfg.cost += ps[s] * cfg.p_given_s[s * aux + a] * ch.cost_at(user, cfg.map[a * S + s], s);
      out.push_back(std::move(cfg));
    }

    int i = S - 1;
    while (i >= 0 && pick[i] + 1 == static_cast<int>(simplex.size())) {
      pick[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++pick[i];
  }
  return out;
}

}  // namespace

double pair_sum_bound(const MacChannel& ch, Family family, const Field* field, const UserConfig& a,
                      const UserConfig& b) {
  const int A = static_cast<int>(a.p_given_s.size()) / ch.S1;
  if (family == Family::alpha) {
    // H(U1) + H(U2) + H(Y) - H(U1,U2,Y) - I(U1;S1) - I(U2;S2)
    const int cells = A * A * ch.Y;
    double joint[1024];
    std::fill(joint, joint + cells, 0.0);
    for (int s1 = 0; s1 < ch.S1; ++s1)
      for (int s2 = 0; s2 < ch.S2; ++s2) {
        const double w = ch.state_at(s1, s2);
        if (w == 0.0) continue;
        for (int u1 = 0; u1 < A; ++u1) {
          const double p1 = w * a.p_given_s[s1 * A + u1];
          if (p1 == 0.0) continue;
          const int x1 = a.map[u1 * ch.S1 + s1];
          for (int u2 = 0; u2 < A; ++u2) {
            const double p2 = p1 * b.p_given_s[s2 * A + u2];
            if (p2 == 0.0) continue;
            const int x2 = b.map[u2 * ch.S2 + s2];
            for (int y = 0; y < ch.Y; ++y)
              joint[(u1 * A + u2) * ch.Y + y] += p2 * ch.kernel_at(s1, s2, x1, x2, y);
          }
        }
      }
    double h_joint = 0.0;
    double py[16];
    std::fill(py, py + ch.Y, 0.0);
    for (int c = 0; c < cells; ++c) {
      const double p = joint[c];
      if (p > 0.0) h_joint -= p * std::log2(p);
      py[c % ch.Y] += p;
    }
    double h_y = 0.0;
    for (int y = 0; y < ch.Y; ++y)
      if (py[y] > 0.0) h_y -= py[y] * std::log2(py[y]);
    return a.h_a + b.h_a + h_y - h_joint - a.i_a_s - b.i_a_s;
  }

  // beta_f: min(H(V1|S1), H(V2|S2)) - H(V1 (+) V2 | Y)
  const int cells = A * ch.Y;
  double joint[256];
  std::fill(joint, joint + cells, 0.0);
  for (int s1 = 0; s1 < ch.S1; ++s1)
    for (int s2 = 0; s2 < ch.S2; ++s2) {
      const double w = ch.state_at(s1, s2);
      if (w == 0.0) continue;
      for (int v1 = 0; v1 < A; ++v1) {
        const double p1 = w * a.p_given_s[s1 * A + v1];
        if (p1 == 0.0) continue;
        const int x1 = a.map[v1 * ch.S1 + s1];
        for (int v2 = 0; v2 < A; ++v2) {
          const double p2 = p1 * b.p_given_s[s2 * A + v2];
          if (p2 == 0.0) continue;
          const int x2 = b.map[v2 * ch.S2 + s2];
          const int wsum = field->add(static_cast<felem>(v1), static_cast<felem>(v2));
          for (int y = 0; y < ch.Y; ++y)
            joint[wsum * ch.Y + y] += p2 * ch.kernel_at(s1, s2, x1, x2, y);
        }
      }
    }
  double h_joint = 0.0;
  double py[16];
  std::fill(py, py + ch.Y, 0.0);
  for (int c = 0; c < cells; ++c) {
    const double p = joint[c];
    if (p > 0.0) h_joint -= p * std::log2(p);
    py[c % ch.Y] += p;
  }
  double h_y = 0.0;
  for (int y = 0; y < ch.Y; ++y)
    if (py[y] > 0.0) h_y -= py[y] * std::log2(py[y]);
  return std::min(a.h_a_given_s, b.h_a_given_s) - (h_joint - h_y);
}

TestChannelEnumerator::TestChannelEnumerator(const MacChannel& ch, Family family,
                                             const SearchOptions& opt, double tau1, double tau2)
    : ch_(ch), family_(family), opt_(opt) {
  if (opt.step <= 0.0 || opt.step > 0.5)
    throw std::invalid_argument("search step must lie in (0, 0.5]");
  if (opt.aux_size < 1 || opt.aux_size > 4)
    throw std::invalid_argument("auxiliary alphabet size must lie in [1, 4]");
  if (family == Family::beta_f) {
    if (!is_prime_power(opt.aux_size))
      throw std::invalid_argument("beta_f search needs a prime-power auxiliary size");
    int p = opt.aux_size, e = 1;
    if (opt.aux_size == 4) p = 2, e = 2;
    if (opt.aux_size == 8) p = 2, e = 3;
    field_ = Field::make(p, e);
  }
  const int steps = std::max(1, static_cast<int>(std::lround(1.0 / opt.step)));
  for (int user = 0; user < 2; ++user) {
    auto all = build_user_configs(ch, user, opt.aux_size, steps);
    const double tau = user == 0 ? tau1 : tau2;
    for (auto& cfg : all)
      if (cfg.cost <= tau + 1e-9) configs_[user].push_back(std::move(cfg));
  }
}

std::uint64_t TestChannelEnumerator::size() const {
  return static_cast<std::uint64_t>(configs_[0].size()) * configs_[1].size();
}

std::uint64_t TestChannelEnumerator::raw_pairs() const {
  const int steps = std::max(1, static_cast<int>(std::lround(1.0 / opt_.step)));
  std::vector<std::vector<double>> simplex;
  enumerate_simplex(opt_.aux_size, steps, simplex);
  std::uint64_t per_user1 = ipow(ch_.X1, opt_.aux_size * ch_.S1);
  std::uint64_t per_user2 = ipow(ch_.X2, opt_.aux_size * ch_.S2);
  for (int s = 0; s < ch_.S1; ++s) per_user1 *= simplex.size();
  for (int s = 0; s < ch_.S2; ++s) per_user2 *= simplex.size();
  return per_user1 * per_user2;
}

TestChannel TestChannelEnumerator::at(std::uint64_t i) const {
  const UserConfig& a = configs_[0][i / configs_[1].size()];
  const UserConfig& b = configs_[1][i % configs_[1].size()];
  std::array<std::vector<double>, 2> p{a.p_given_s, b.p_given_s};
  std::array<std::vector<int>, 2> maps{a.map, b.map};
  if (family_ == Family::alpha) return make_alpha_tc(ch_, opt_.aux_size, p, maps);
  return make_field_tc(ch_, *field_, p, maps);
}

namespace {

// Deterministic parallel max over [0, total): fixed chunk grid, ordered reduce.
double parallel_max(std::uint64_t total, int workers,
                    const std::function<double(std::uint64_t, std::uint64_t)>& chunk_max) {
  if (total == 0) return 0.0;
  const int nchunks = 256;
  std::vector<double> results(nchunks, -std::numeric_limits<double>::infinity());
  std::atomic<int> next{0};
  std::exception_ptr worker_error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      while (true) {
        const int c = next.fetch_add(1);
        if (c >= nchunks) break;
        const std::uint64_t lo = total * c / nchunks;
        const std::uint64_t hi = total * (c + 1) / nchunks;
        if (lo < hi) results[c] = chunk_max(lo, hi);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!worker_error) worker_error = std::current_exception();
      next.store(nchunks);
    }
  };
  std::vector<std::thread> pool;
  const int nw = std::max(1, workers);
  for (int w = 1; w < nw; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (worker_error) std::rethrow_exception(worker_error);
  double best = -std::numeric_limits<double>::infinity();
  for (double r : results) best = std::max(best, r);
  return best;
}

}  // namespace

RateCurve best_sum_rate(const MacChannel& ch, Family family, const std::vector<double>& taus,
                        const SearchOptions& opt) {
  if (taus.empty()) throw std::invalid_argument("best_sum_rate: empty tau grid");
  const int workers = opt.workers > 0 ? opt.workers : default_workers();

  RateCurve curve;
  curve.method = family == Family::alpha ? "alpha" : "beta_f";
  curve.tau = taus;
  curve.raw.resize(taus.size());

  // Configs are enumerated once at the loosest cost, then refiltered per tau.
  const double tau_max = *std::max_element(taus.begin(), taus.end());
  TestChannelEnumerator full(ch, family, opt, tau_max, tau_max);
  const Field* field = nullptr;
  Field field_store;
  if (family == Family::beta_f) {
    int p = opt.aux_size, e = 1;
    if (opt.aux_size == 4) p = 2, e = 2;
    if (opt.aux_size == 8) p = 2, e = 3;
    field_store = Field::make(p, e);
    field = &field_store;
  }

  for (std::size_t ti = 0; ti < taus.size(); ++ti) {
    const double tau = taus[ti];
    std::vector<const UserConfig*> c1, c2;
    for (const auto& cfg : full.user_configs(0))
      if (cfg.cost <= tau + 1e-9) c1.push_back(&cfg);
    for (const auto& cfg : full.user_configs(1))
      if (cfg.cost <= tau + 1e-9) c2.push_back(&cfg);
    const std::uint64_t total = static_cast<std::uint64_t>(c1.size()) * c2.size();
    if (total > opt.max_pairs) throw BudgetExceeded(total);
    if (total == 0) {
      curve.raw[ti] = 0.0;
      continue;
    }
    const double best = parallel_max(total, workers, [&](std::uint64_t lo, std::uint64_t hi) {
      double m = -std::numeric_limits<double>::infinity();
      for (std::uint64_t i = lo; i < hi; ++i) {
        const UserConfig& a = *c1[i / c2.size()];
        const UserConfig& b = *c2[i % c2.size()];
        m = std::max(m, pair_sum_bound(ch, family, field, a, b));
      }
      return m;
    });
    curve.raw[ti] = std::max(best, 0.0);
  }

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < taus.size(); ++i) pts.emplace_back(taus[i], curve.raw[i]);
  curve.envelope = upper_convex_envelope(std::move(pts));
  return curve;
}

}  // namespace cosetmac
