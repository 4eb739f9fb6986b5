#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cosetmac/channel.hpp"
#include "cosetmac/field.hpp"
#include "cosetmac/group.hpp"
#include "cosetmac/pmf.hpp"

namespace cosetmac {

enum class VKind { none, field, group };

// A candidate input strategy: per user a conditional pmf p(u, v | s) and a
// kernel p(x | u, v, s). The induced joint over (U1,V1,U2,V2,S1,S2,X1,X2,Y)
// factorizes as W_S * prod_j p(u_j,v_j|s_j) p(x_j|u_j,v_j,s_j) * W(y|x,s), so
// the cross-user conditional-independence requirements hold by construction.
struct TestChannel {
  MacChannel ch;
  int nu = 1;  // |U_j|; 1 means no unstructured auxiliary
  int nv = 1;  // |V|; shared by both users when structured
  VKind vkind = VKind::none;
  std::optional<Field> field;
  std::optional<Group> group;

  std::array<std::vector<double>, 2> uv_given_s;  // [s][u][v]
  std::array<std::vector<double>, 2> x_kernel;    // [u][v][s][x]

  double uv_at(int user, int s, int u, int v) const {
    return uv_given_s[user][(s * nu + u) * nv + v];
  }
  double xk_at(int user, int u, int v, int s, int x) const {
    const int S = user == 0 ? ch.S1 : ch.S2;
    const int X = user == 0 ? ch.X1 : ch.X2;
    return x_kernel[user][((u * nv + v) * S + s) * X + x];
  }

  // Joint pmf with variables U1,V1,U2,V2,S1,S2,X1,X2,Y in that order.
  JointPmf joint() const;

  double expected_cost(int user) const;
  bool x_deterministic() const;

  // Structural checks; returns human-readable violations (empty when valid).
  std::vector<std::string> violations() const;

  int v_sum(int v1, int v2) const;  // field or group addition
};

// Builders. Maps are flat tables: f[u*S+s] for alpha, f[v*S+s] for
// structured-only, f[(u*nv+v)*S+s] for the combined case.
TestChannel make_alpha_tc(const MacChannel& ch, int nu,
                          const std::array<std::vector<double>, 2>& u_given_s,
                          const std::array<std::vector<int>, 2>& maps);
TestChannel make_field_tc(const MacChannel& ch, const Field& f,
                          const std::array<std::vector<double>, 2>& v_given_s,
                          const std::array<std::vector<int>, 2>& maps);
TestChannel make_group_tc(const MacChannel& ch, const Group& g,
                          const std::array<std::vector<double>, 2>& v_given_s,
                          const std::array<std::vector<int>, 2>& maps);
TestChannel make_full_tc(const MacChannel& ch, int nu, VKind vkind, const std::optional<Field>& f,
                         const std::optional<Group>& g,
                         const std::array<std::vector<double>, 2>& uv_given_s,
                         const std::array<std::vector<int>, 2>& maps);

// Reference strategies used by the worked channels: V = X (+) S with
// P(X=0) = 1 - tau and the remaining mass spread over the nonzero inputs.
TestChannel bdd_reference_tc(double tau);                    // field over GF(2)
TestChannel example1_reference_tc(double tau);               // field over GF(2)
TestChannel example3_reference_tc();                         // field over GF(3), fixed table
TestChannel qdd_reference_tc(double tau, VKind vkind);       // GF(4) or Z4
TestChannel qdd_alpha_tc(double tau);                        // same table as plain auxiliary

// Single-user test channel for the point-to-point rate.
struct PtpTestChannel {
  PtpChannel ch;
  int nv = 1;
  std::vector<double> v_given_s;  // [s][v]
  std::vector<double> x_kernel;   // [v][s][x]

  JointPmf joint() const;  // V,S,X,Y
  double expected_cost() const;
};

PtpTestChannel make_ptp_tc(const PtpChannel& ch, int nv, const std::vector<double>& v_given_s,
                           const std::vector<int>& map);
PtpChannel binary_dirty_ptp();                 // Y = X + S + Z? noiseless: Y = X xor S
PtpTestChannel binary_dirty_ptp_tc(double tau);

// Per-user pmf over (V_j, S_j) as a plain table [v][s], used by the simulator.
std::vector<double> vs_table(const TestChannel& tc, int user);
// pmf over (V1 (+) V2, Y) as [w][y].
std::vector<double> wy_table(const TestChannel& tc);

}  // namespace cosetmac
