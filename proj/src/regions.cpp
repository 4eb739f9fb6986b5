#include "cosetmac/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cosetmac/info.hpp"

namespace cosetmac {

namespace {

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

void require_structured(const TestChannel& tc, VKind kind) {
  if (tc.vkind != kind)
    throw std::invalid_argument(kind == VKind::field ? "test channel does not carry a field"
                                                     : "test channel does not carry a group");
  if (!tc.x_deterministic())
    throw std::invalid_argument("test channel input kernel is not deterministic");
}

// H(V1 (+) V2 | U1, U2, Y)
double sum_conditional_entropy(const TestChannel& tc, const JointPmf& j, VarMask cond) {
  const int v1 = j.var_index("V1"), v2 = j.var_index("V2");
  JointPmf q = j.derived(cond, "W", tc.nv,
                         [&](const std::vector<int>& idx) { return tc.v_sum(idx[v1], idx[v2]); });
  const VarMask w_mask = VarMask(1) << (q.var_count() - 1);
  const VarMask cond_mask = w_mask - 1;
  return cond_mask ? q.conditional_entropy(w_mask, cond_mask) : q.entropy(w_mask);
}

struct UnstructuredPart {
  double r1, r2, sum;
};

UnstructuredPart alpha_part(const JointPmf& j) {
  const VarMask u1 = j.mask_of({"U1"}), u2 = j.mask_of({"U2"});
  const VarMask s1 = j.mask_of({"S1"}), s2 = j.mask_of({"S2"});
  const VarMask y = j.mask_of({"Y"});
  const double i_u1_s1 = j.mutual_information(u1, s1);
  const double i_u2_s2 = j.mutual_information(u2, s2);
  UnstructuredPart p;
  p.r1 = j.mutual_information(u1, y | u2) - i_u1_s1;
  p.r2 = j.mutual_information(u2, y | u1) - i_u2_s2;
  p.sum = j.mutual_information(u1 | u2, y) + j.mutual_information(u1, u2) - i_u1_s1 - i_u2_s2;
  return p;
}

}  // namespace

double gp_rate(const PtpTestChannel& tc) {
  JointPmf j = tc.joint();
  const VarMask v = j.mask_of({"V"});
  const double raw = j.mutual_information(v, j.mask_of({"Y"})) - j.mutual_information(v, j.mask_of({"S"}));
  return clamp0(raw);
}

RegionBounds alpha_bounds(const TestChannel& tc) {
  if (!tc.x_deterministic())
    throw std::invalid_argument("alpha_bounds: input kernel is not deterministic");
  JointPmf j = tc.joint();
  const UnstructuredPart p = alpha_part(j);
  RegionBounds b;
  b.r1_raw = p.r1;
  b.r2_raw = p.r2;
  b.sum_raw = p.sum;
  b.r1 = clamp0(p.r1);
  b.r2 = clamp0(p.r2);
  b.sum = clamp0(p.sum);
  return b;
}

SumRateBound beta_f_sum_rate(const TestChannel& tc) {
  require_structured(tc, VKind::field);
  JointPmf j = tc.joint();
  const double h1 = j.conditional_entropy(j.mask_of({"V1"}), j.mask_of({"S1"}));
  const double h2 = j.conditional_entropy(j.mask_of({"V2"}), j.mask_of({"S2"}));
  const double hw = sum_conditional_entropy(tc, j, j.mask_of({"Y"}));
  SumRateBound out;
  out.raw = std::min(h1, h2) - hw;
  out.value = clamp0(out.raw);
  return out;
}

namespace {

RegionBounds structured_bounds(double bin1, double bin2, double hw, const JointPmf& j) {
  const UnstructuredPart p = alpha_part(j);
  const double structured = std::min(bin1, bin2) - hw;
  RegionBounds b;
  b.r1_raw = p.r1 + structured;
  b.r2_raw = p.r2 + structured;
  b.sum_raw = p.sum + structured;
  b.r1 = clamp0(b.r1_raw);
  b.r2 = clamp0(b.r2_raw);
  b.sum = clamp0(b.sum_raw);
  return b;
}

}  // namespace

RegionBounds rsf_bounds(const TestChannel& tc) {
  require_structured(tc, VKind::field);
  JointPmf j = tc.joint();
  const double bin1 = j.conditional_entropy(j.mask_of({"V1"}), j.mask_of({"U1", "S1"}));
  const double bin2 = j.conditional_entropy(j.mask_of({"V2"}), j.mask_of({"U2", "S2"}));
  const double hw = sum_conditional_entropy(tc, j, j.mask_of({"U1", "U2", "Y"}));
  return structured_bounds(bin1, bin2, hw, j);
}

RegionBounds rsg_bounds(const TestChannel& tc, int weight_grid) {
  require_structured(tc, VKind::group);
  JointPmf j = tc.joint();
  const Group& g = *tc.group;
  const double bin1 = group_entropy_source(j, "V1", j.mask_of({"U1", "S1"}), g, weight_grid);
  const double bin2 = group_entropy_source(j, "V2", j.mask_of({"U2", "S2"}), g, weight_grid);
  const double hw = sum_conditional_entropy(tc, j, j.mask_of({"U1", "U2", "Y"}));
  return structured_bounds(bin1, bin2, hw, j);
}

QddClosedForms qdd_closed_forms(double tau) {
  if (tau < 0.0 || tau > 0.75 + 1e-12) throw std::invalid_argument("qdd_closed_forms: tau outside [0, 3/4]");
  auto plogp = [](double p, double arg) { return p > 0.0 ? p * std::log2(arg) : 0.0; };
  const double h = -plogp(tau, tau / 3.0) - plogp(1.0 - tau, 1.0 - tau);
  QddClosedForms out;
  out.alpha = std::max(2.0 * h - 2.0, 0.0);
  out.beta_f = std::max(h - 0.5, 0.0);
  out.beta_g = std::max(std::min(h, 2.0 * binary_entropy(2.0 * tau / 3.0)), 0.0);
  return out;
}

}  // namespace cosetmac
