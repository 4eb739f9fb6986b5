#include "cosetmac/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cosetmac {

std::vector<double> MacChannel::state_marginal(int user) const {
  std::vector<double> m(user == 0 ? S1 : S2, 0.0);
  for (int s1 = 0; s1 < S1; ++s1)
    for (int s2 = 0; s2 < S2; ++s2) m[user == 0 ? s1 : s2] += state_at(s1, s2);
  return m;
}

void MacChannel::validate() const {
  if (static_cast<int>(state.size()) != S1 * S2) throw std::invalid_argument(name + ": state table size");
  if (static_cast<int>(kernel.size()) != S1 * S2 * X1 * X2 * Y)
    throw std::invalid_argument(name + ": kernel table size");
  double tot = 0.0;
  for (double p : state) {
    if (p < 0.0) throw std::invalid_argument(name + ": negative state probability");
    tot += p;
  }
  if (std::abs(tot - 1.0) > 1e-12) throw std::invalid_argument(name + ": state pmf sums to " + std::to_string(tot));
  for (int s1 = 0; s1 < S1; ++s1)
    for (int s2 = 0; s2 < S2; ++s2)
      for (int x1 = 0; x1 < X1; ++x1)
        for (int x2 = 0; x2 < X2; ++x2) {
          double row = 0.0;
          for (int y = 0; y < Y; ++y) {
            double p = kernel_at(s1, s2, x1, x2, y);
            if (p < 0.0) throw std::invalid_argument(name + ": negative kernel entry");
            row += p;
          }
          if (std::abs(row - 1.0) > 1e-12)
            throw std::invalid_argument(name + ": kernel row sums to " + std::to_string(row));
        }
  for (double c : cost1)
    if (c < 0.0) throw std::invalid_argument(name + ": negative cost");
  for (double c : cost2)
    if (c < 0.0) throw std::invalid_argument(name + ": negative cost");
}

void PtpChannel::validate() const {
  if (static_cast<int>(state.size()) != S) throw std::invalid_argument(name + ": state table size");
  if (static_cast<int>(kernel.size()) != S * X * Y) throw std::invalid_argument(name + ": kernel size");
  for (int s = 0; s < S; ++s)
    for (int x = 0; x < X; ++x) {
      double row = 0.0;
      for (int y = 0; y < Y; ++y) row += kernel_at(s, x, y);
      if (std::abs(row - 1.0) > 1e-12) throw std::invalid_argument(name + ": kernel row sum");
    }
}

namespace {

MacChannel binary_base(const std::string& name) {
  MacChannel ch;
  ch.name = name;
  ch.S1 = ch.S2 = ch.X1 = ch.X2 = ch.Y = 2;
  ch.state.assign(4, 0.25);
  ch.kernel.assign(2 * 2 * 2 * 2 * 2, 0.0);
  ch.cost1.assign(4, 0.0);
  ch.cost2.assign(4, 0.0);
  for (int s = 0; s < 2; ++s) {
    ch.cost1[1 * 2 + s] = 1.0;  // Hamming cost on the input
    ch.cost2[1 * 2 + s] = 1.0;
  }
  return ch;
}

void set_deterministic_output(MacChannel& ch, int (*out)(int, int, int, int)) {
  for (int s1 = 0; s1 < ch.S1; ++s1)
    for (int s2 = 0; s2 < ch.S2; ++s2)
      for (int x1 = 0; x1 < ch.X1; ++x1)
        for (int x2 = 0; x2 < ch.X2; ++x2)
          ch.kernel[(((s1 * ch.S2 + s2) * ch.X1 + x1) * ch.X2 + x2) * ch.Y + out(s1, s2, x1, x2)] = 1.0;
}

MacChannel make_bdd() {
  MacChannel ch = binary_base("bdd");
  set_deterministic_output(ch, [](int s1, int s2, int x1, int x2) { return x1 ^ s1 ^ x2 ^ s2; });
  return ch;
}

MacChannel make_example1() {
  MacChannel ch = binary_base("example1");
  set_deterministic_output(ch, [](int s1, int s2, int x1, int x2) { return (x1 | s1) ^ (x2 | s2); });
  return ch;
}

MacChannel make_example3() {
  MacChannel ch = binary_base("example3");
  set_deterministic_output(ch, [](int s1, int s2, int x1, int x2) { return (s1 ^ x1) | (s2 ^ x2); });
  return ch;
}

// Transition matrix of the perturbed-additive example, rows keyed s2 x2 s1 x1.
constexpr double kExample5Rows[16] = {
    /*0000*/ 0.92, /*0001*/ 0.08, /*0010*/ 0.06, /*0011*/ 0.94,
    /*0100*/ 0.10, /*0101*/ 0.92, /*0110*/ 0.95, /*0111*/ 0.06,
    /*1000*/ 0.07, /*1001*/ 0.92, /*1010*/ 0.96, /*1011*/ 0.10,
    /*1100*/ 0.88, /*1101*/ 0.08, /*1110*/ 0.11, /*1111*/ 0.91};

MacChannel make_example5() {
  MacChannel ch = binary_base("example5");
  for (int s2 = 0; s2 < 2; ++s2)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int s1 = 0; s1 < 2; ++s1)
        for (int x1 = 0; x1 < 2; ++x1) {
          const double p0 = kExample5Rows[((s2 * 2 + x2) * 2 + s1) * 2 + x1];
          ch.kernel[(((s1 * 2 + s2) * 2 + x1) * 2 + x2) * 2 + 0] = p0;
          ch.kernel[(((s1 * 2 + s2) * 2 + x1) * 2 + x2) * 2 + 1] = 1.0 - p0;
        }
  return ch;
}

MacChannel make_blackwell() {
  MacChannel ch = binary_base("blackwell");
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) {
          const int g = ((s1 & (s1 ^ x1)) ^ (s2 & (s2 ^ x2)));
          const double p1 = g == 0 ? 0.02 : 0.96;  // W*(1|0)=0.02, W*(0|1)=0.04
          ch.kernel[(((s1 * 2 + s2) * 2 + x1) * 2 + x2) * 2 + 0] = 1.0 - p1;
          ch.kernel[(((s1 * 2 + s2) * 2 + x1) * 2 + x2) * 2 + 1] = p1;
        }
  return ch;
}

MacChannel make_qdd() {
  MacChannel ch;
  ch.name = "qdd";
  ch.S1 = ch.S2 = ch.X1 = ch.X2 = ch.Y = 4;
  ch.state.assign(16, 1.0 / 16.0);
  ch.kernel.assign(4 * 4 * 4 * 4 * 4, 0.0);
  for (int s1 = 0; s1 < 4; ++s1)
    for (int s2 = 0; s2 < 4; ++s2)
      for (int x1 = 0; x1 < 4; ++x1)
        for (int x2 = 0; x2 < 4; ++x2) {
          const int y = (x1 + s1 + x2 + s2) % 4;
          ch.kernel[(((s1 * 4 + s2) * 4 + x1) * 4 + x2) * 4 + y] = 1.0;
        }
  ch.cost1.assign(16, 0.0);
  ch.cost2.assign(16, 0.0);
  for (int x = 1; x < 4; ++x)
    for (int s = 0; s < 4; ++s) {
      ch.cost1[x * 4 + s] = 1.0;
      ch.cost2[x * 4 + s] = 1.0;
    }
  return ch;
}

}  // namespace

MacChannel channel_catalog(const std::string& name) {
  MacChannel ch;
  if (name == "bdd")
    ch = make_bdd();
  else if (name == "example1")
    ch = make_example1();
  else if (name == "example3")
    ch = make_example3();
  else if (name == "example5" || name == "example2")
    ch = make_example5();
  else if (name == "blackwell")
    ch = make_blackwell();
  else if (name == "qdd")
    ch = make_qdd();
  else
    throw std::invalid_argument("channel_catalog: unknown channel \"" + name + "\"");
  ch.validate();
  return ch;
}

std::vector<std::string> channel_catalog_names() {
  return {"bdd", "example1", "example3", "example5", "blackwell", "qdd"};
}

namespace {

int parse_digit(char c, const std::string& what, int bound) {
  if (c < '0' || c >= '0' + bound) throw std::invalid_argument("channel config: bad " + what + " digit");
  return c - '0';
}

}  // namespace

MacChannel parse_channel_config(const std::string& text) {
  MacChannel ch;
  ch.name = "config";
  bool have_alphabets = false;
  std::vector<bool> kernel_seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("channel config line " + std::to_string(lineno) + ": " + msg);
    };
    if (key == "channel") {
      ls >> ch.name;
    } else if (key == "alphabets") {
      if (!(ls >> ch.S1 >> ch.S2 >> ch.X1 >> ch.X2 >> ch.Y)) fail("alphabets needs 5 sizes");
      if (ch.S1 < 1 || ch.S2 < 1 || ch.X1 < 1 || ch.X2 < 1 || ch.Y < 1) fail("alphabet sizes must be >= 1");
      if (ch.S1 > 10 || ch.S2 > 10 || ch.X1 > 10 || ch.X2 > 10 || ch.Y > 10)
        fail("alphabet sizes above 10 are not supported by the digit row keys");
      ch.state.assign(ch.S1 * ch.S2, 0.0);
      ch.kernel.assign(ch.S1 * ch.S2 * ch.X1 * ch.X2 * ch.Y, 0.0);
      ch.cost1.assign(ch.X1 * ch.S1, 0.0);
      ch.cost2.assign(ch.X2 * ch.S2, 0.0);
      kernel_seen.assign(ch.S1 * ch.S2 * ch.X1 * ch.X2, false);
      have_alphabets = true;
    } else if (key == "state") {
      if (!have_alphabets) fail("state before alphabets");
      int s1, s2;
      double p;
      if (!(ls >> s1 >> s2 >> p)) fail("state needs: s1 s2 prob");
      if (s1 < 0 || s1 >= ch.S1 || s2 < 0 || s2 >= ch.S2) fail("state index out of range");
      ch.state[s1 * ch.S2 + s2] = p;
    } else if (key == "kernel") {
      if (!have_alphabets) fail("kernel before alphabets");
      std::string rowkey;
      if (!(ls >> rowkey) || rowkey.size() != 4) fail("kernel needs a 4-digit s2x2s1x1 row key");
      const int s2 = parse_digit(rowkey[0], "s2", ch.S2);
      const int x2 = parse_digit(rowkey[1], "x2", ch.X2);
      const int s1 = parse_digit(rowkey[2], "s1", ch.S1);
      const int x1 = parse_digit(rowkey[3], "x1", ch.X1);
      for (int y = 0; y < ch.Y; ++y) {
        double p;
        if (!(ls >> p)) fail("kernel row needs |Y| probabilities");
        ch.kernel[(((s1 * ch.S2 + s2) * ch.X1 + x1) * ch.X2 + x2) * ch.Y + y] = p;
      }
      kernel_seen[((s1 * ch.S2 + s2) * ch.X1 + x1) * ch.X2 + x2] = true;
    } else if (key == "cost1" || key == "cost2") {
      if (!have_alphabets) fail("cost before alphabets");
      int x, s;
      double v;
      if (!(ls >> x >> s >> v)) fail(key + " needs: x s value");
      auto& c = key == "cost1" ? ch.cost1 : ch.cost2;
      const int sdim = key == "cost1" ? ch.S1 : ch.S2;
      const int xdim = key == "cost1" ? ch.X1 : ch.X2;
      if (x < 0 || x >= xdim || s < 0 || s >= sdim) fail(key + " index out of range");
      c[x * sdim + s] = v;
    } else {
      fail("unknown key \"" + key + "\"");
    }
  }
  if (!have_alphabets) throw std::invalid_argument("channel config: missing alphabets line");
  for (std::size_t i = 0; i < kernel_seen.size(); ++i)
    if (!kernel_seen[i]) throw std::invalid_argument("channel config: kernel row missing for input combination");
  ch.validate();
  return ch;
}

MacChannel load_channel_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("channel config: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_channel_config(ss.str());
}

}  // namespace cosetmac
