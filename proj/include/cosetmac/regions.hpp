#pragma once

#include "cosetmac/test_channel.hpp"

namespace cosetmac {

struct RegionBounds {
  double r1 = 0.0, r2 = 0.0, sum = 0.0;           // clamped at 0
  double r1_raw = 0.0, r2_raw = 0.0, sum_raw = 0.0;
};

struct SumRateBound {
  double value = 0.0;  // clamped at 0
  double raw = 0.0;
};

// max{0, I(V;Y) - I(V;S)}
double gp_rate(const PtpTestChannel& tc);

// R1 <= I(U1;Y,U2) - I(U1;S1), R2 symmetric,
// R1+R2 <= I(U1,U2;Y) + I(U1;U2) - I(U1;S1) - I(U2;S2)
RegionBounds alpha_bounds(const TestChannel& tc);

// min_j H(V_j|S_j) - H(V1 (+) V2 | Y) over the field of V
SumRateBound beta_f_sum_rate(const TestChannel& tc);

// Unstructured bounds plus min_j H(V_j|U_j,S_j) - H(V1 (+) V2 | U1,U2,Y)
RegionBounds rsf_bounds(const TestChannel& tc);

// Same shape with the group bin entropies in place of H(V_j|U_j,S_j) and the
// group sum inside the final conditional entropy.
RegionBounds rsg_bounds(const TestChannel& tc, int weight_grid = 201);

struct QddClosedForms {
  double alpha = 0.0, beta_f = 0.0, beta_g = 0.0;
};

// Sum-rate curves for the quaternary doubly dirty channel under its
// reference input strategy, pre-envelope, floored at 0. 0 <= tau <= 3/4.
QddClosedForms qdd_closed_forms(double tau);

}  // namespace cosetmac
