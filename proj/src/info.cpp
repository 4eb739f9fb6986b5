#include "cosetmac/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cosetmac {

bool TypicalityContext::is_typical(const std::vector<int>& seq) const {
  std::vector<std::int64_t> counts(probs.size(), 0);
  for (int s : seq) {
    if (s < 0 || s >= static_cast<int>(probs.size()))
      throw std::invalid_argument("TypicalityContext: symbol outside alphabet");
    ++counts[s];
  }
  return counts_typical(counts, static_cast<std::int64_t>(seq.size()));
}

bool TypicalityContext::counts_typical(const std::vector<std::int64_t>& counts, std::int64_t n) const {
  const double logx = std::log2(static_cast<double>(probs.size()));
  for (std::size_t a = 0; a < probs.size(); ++a) {
    const double p = probs[a] < kSupportEps ? 0.0 : probs[a];
    const double slack = logx > 0.0 ? delta * p / logx : std::numeric_limits<double>::infinity();
    if (std::abs(static_cast<double>(counts[a]) / n - p) > slack) return false;
  }
  return true;
}

std::vector<TypicalityContext::CountWindow> TypicalityContext::count_windows(int n) const {
  std::vector<CountWindow> w(probs.size());
  const double logx = std::log2(static_cast<double>(probs.size()));
  for (std::size_t a = 0; a < probs.size(); ++a) {
    const double p = probs[a] < kSupportEps ? 0.0 : probs[a];
    const double slack = logx > 0.0 ? delta * p / logx : std::numeric_limits<double>::infinity();
    std::int64_t lo = n + 1, hi = -1;
    for (std::int64_t c = 0; c <= n; ++c) {
      if (std::abs(static_cast<double>(c) / n - p) <= slack) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
    }
    w[a] = {lo, hi};
  }
  return w;
}

std::vector<int> zip_symbols(const std::vector<int>& a, const std::vector<int>& b, int b_size) {
  if (a.size() != b.size()) throw std::invalid_argument("zip_symbols: length mismatch");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b_size + b[i];
  return out;
}

double sanov_bound(const std::vector<double>& probs, double delta, int n) {
  double minp = std::numeric_limits<double>::infinity();
  for (double p : probs)
    if (p >= kSupportEps) minp = std::min(minp, p);
  if (!std::isfinite(minp)) throw std::invalid_argument("sanov_bound: pmf has empty support");
  const double logx = std::log2(static_cast<double>(probs.size()));
  if (logx <= 0.0) return 0.0;
  const double lambda = minp * minp / (logx * logx);
  const double b = std::exp2(-static_cast<double>(n) * lambda * delta * delta);
  return std::min(1.0, std::max(0.0, b));
}

Envelope upper_convex_envelope(std::vector<std::pair<double, double>> pts) {
  if (pts.empty()) throw std::invalid_argument("upper_convex_envelope: no points");
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].first == pts[i - 1].first)
      throw std::invalid_argument("upper_convex_envelope: duplicate x values");
  // monotone chain, keeping the upper hull
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross = (b.first - a.first) * (p.second - a.second) -
                           (b.second - a.second) * (p.first - a.first);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<double> xs, ys;
  xs.reserve(hull.size());
  ys.reserve(hull.size());
  for (const auto& p : hull) {
    xs.push_back(p.first);
    ys.push_back(p.second);
  }
  return Envelope(std::move(xs), std::move(ys));
}

double Envelope::operator()(double x) const {
  if (xs_.empty()) throw std::logic_error("Envelope: empty");
  if (xs_.size() == 1 || x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
}

namespace {

// H([V]_theta | cond) with the coset label appended as a derived variable.
double coset_conditional_entropy(const JointPmf& p, int v_idx, VarMask cond, const Group& g,
                                 const std::vector<int>& theta) {
  const int labels = g.coset_count(theta);
  JointPmf q = p.derived(cond, "_coset", labels,
                         [&](const std::vector<int>& idx) { return g.coset_label(theta, idx[v_idx]); });
  const VarMask label_mask = VarMask(1) << (q.var_count() - 1);
  const VarMask cond_mask = (VarMask(1) << (q.var_count() - 1)) - 1;
  return cond_mask ? q.conditional_entropy(label_mask, cond_mask) : q.entropy(label_mask);
}

int check_v_var(const JointPmf& p, const std::string& v_var, const Group& g) {
  int v_idx = p.var_index(v_var);
  if (v_idx < 0) throw std::invalid_argument("group info: unknown variable " + v_var);
  if (p.var(v_idx).size != g.order())
    throw std::invalid_argument("group info: variable alphabet does not match group order");
  return v_idx;
}

}  // namespace

double group_mi_source_zpr(const JointPmf& p, const std::string& v_var, VarMask cond,
                           const Group& g) {
  if (g.factor_count() != 1)
    throw std::invalid_argument("group_mi_source_zpr: group must have a single cyclic factor");
  const int v_idx = check_v_var(p, v_var, g);
  const int r = g.factor(0).r;
  const double logp = std::log2(static_cast<double>(g.factor(0).p));
  double best = -std::numeric_limits<double>::infinity();
  for (int theta = 1; theta <= r; ++theta) {
    const double h = coset_conditional_entropy(p, v_idx, cond, g, {theta});
    best = std::max(best, r * logp - static_cast<double>(r) / theta * h);
  }
  return best;
}

double group_mi_source_abelian(const JointPmf& p, const std::string& v_var, VarMask cond,
                               const Group& g, int weight_grid) {
  if (weight_grid < 2) throw std::invalid_argument("group_mi_source_abelian: grid resolution < 2");
  const int v_idx = check_v_var(p, v_var, g);
  const int nf = g.factor_count();

  // Precompute per-theta log|coset alphabet| and conditional entropy.
  struct Term {
    std::vector<int> theta;
    double log_labels;
    double h;
  };
  std::vector<Term> terms;
  for (const auto& theta : g.all_thetas()) {
    bool all_zero = true;
    for (int t : theta) all_zero &= (t == 0);
    if (all_zero) continue;  // H_theta = V carries no constraint
    Term t;
    t.theta = theta;
    t.log_labels = std::log2(static_cast<double>(g.coset_count(theta)));
    t.h = coset_conditional_entropy(p, v_idx, cond, g, theta);
    terms.push_back(std::move(t));
  }

  const int steps = weight_grid - 1;
  std::vector<int> comp(nf, 0);
  comp[0] = steps;
  double best = std::numeric_limits<double>::infinity();
  // enumerate integer compositions of `steps` into nf parts
  while (true) {
    double worst = 0.0;
    for (const auto& t : terms) {
      double w_theta = 0.0;
      for (int i = 0; i < nf; ++i)
        w_theta += static_cast<double>(comp[i]) / steps *
                   (static_cast<double>(g.factor(i).r - t.theta[i]) / g.factor(i).r);
      const double gain = t.log_labels - t.h;
      double val;
      if (1.0 - w_theta <= 1e-12)
        val = gain <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
      else
        val = gain / (1.0 - w_theta);
      worst = std::max(worst, val);
    }
    best = std::min(best, worst);

    // next composition
    if (nf == 1) break;
    int i = nf - 2;
    while (i >= 0 && comp[i] == 0) --i;
    if (i < 0) break;
    --comp[i];
    int rest = steps;
    for (int j = 0; j <= i; ++j) rest -= comp[j];
    comp[i + 1] = rest;
    for (int j = i + 2; j < nf; ++j) comp[j] = 0;
  }
  return best;
}

double group_entropy_source(const JointPmf& p, const std::string& v_var, VarMask cond,
                            const Group& g, int weight_grid) {
  const double mi = g.factor_count() == 1 ? group_mi_source_zpr(p, v_var, cond, g)
                                          : group_mi_source_abelian(p, v_var, cond, g, weight_grid);
  return std::log2(static_cast<double>(g.order())) - mi;
}

double group_mi_channel_zpr(const JointPmf& p, const std::string& v_var, VarMask y_vars,
                            const Group& g) {
  if (g.factor_count() != 1)
    throw std::invalid_argument("group_mi_channel_zpr: group must have a single cyclic factor");
  const int v_idx = check_v_var(p, v_var, g);
  const VarMask v_mask = VarMask(1) << v_idx;
  if (v_mask & y_vars) throw std::invalid_argument("group_mi_channel_zpr: overlapping subsets");
  const int r = g.factor(0).r;
  double best = std::numeric_limits<double>::infinity();
  for (int theta = 0; theta < r; ++theta) {
    const int labels = g.coset_count({theta});
    JointPmf q = p.derived(v_mask | y_vars, "_coset", labels, [&](const std::vector<int>& idx) {
      return g.coset_label({theta}, idx[v_idx]);
    });
    VarMask vq = 0, yq = 0;
    for (int i = 0; i < q.var_count() - 1; ++i) {
      if (q.var(i).name == v_var)
        vq |= VarMask(1) << i;
      else
        yq |= VarMask(1) << i;
    }
    const VarMask label_mask = VarMask(1) << (q.var_count() - 1);
    const double mi = q.conditional_mi(vq, yq, label_mask);
    best = std::min(best, static_cast<double>(r) / (r - theta) * mi);
  }
  return best;
}

}  // namespace cosetmac
