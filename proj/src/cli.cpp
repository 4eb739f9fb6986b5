#include "cosetmac/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cosetmac/checks.hpp"
#include "cosetmac/regions.hpp"
#include "cosetmac/search.hpp"
#include "cosetmac/sim.hpp"

namespace cosetmac {

namespace {

MacChannel resolve_channel(const std::string& name_or_path) {
  for (const auto& n : channel_catalog_names())
    if (n == name_or_path || (name_or_path == "example2" && n == "example5"))
      return channel_catalog(name_or_path);
  return load_channel_config(name_or_path);
}

// Plain-text test channel description; see README for the grammar.
TestChannel parse_test_channel_config(const std::string& text, const MacChannel& ch) {
  std::istringstream in(text);
  std::string line, kind;
  int nu = 1, nv = 1;
  VKind vkind = VKind::none;
  std::optional<Field> field;
  std::optional<Group> group;
  std::array<std::vector<double>, 2> pmf;
  std::array<std::vector<int>, 2> maps;
  bool sized = false;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("test channel line " + std::to_string(lineno) + ": " + msg);
  };
  auto ensure_sized = [&] {
    if (sized) return;
    for (int user = 0; user < 2; ++user) {
      const int S = user == 0 ? ch.S1 : ch.S2;
      pmf[user].assign(static_cast<size_t>(S) * nu * nv, 0.0);
      maps[user].assign(static_cast<size_t>(nu) * nv * S, 0);
    }
    sized = true;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "testchannel") continue;
    if (key == "aux_u") {
      if (sized) fail("aux_u after table rows");
      if (!(ls >> nu) || nu < 1) fail("aux_u needs a positive size");
    } else if (key == "vtype") {
      if (sized) fail("vtype after table rows");
      std::string t;
      ls >> t;
      if (t == "none") {
        vkind = VKind::none;
        nv = 1;
      } else if (t == "field") {
        int q;
        if (!(ls >> q)) fail("vtype field needs the field order");
        int p = q, e = 1;
        if (q == 4) p = 2, e = 2;
        if (q == 8) p = 2, e = 3;
        field = Field::make(p, e);
        vkind = VKind::field;
        nv = q;
      } else if (t == "group") {
        std::string spec;
        if (!(ls >> spec)) fail("vtype group needs a group spec like 2^2");
        group = Group::parse(spec);
        vkind = VKind::group;
        nv = group->order();
      } else {
        fail("vtype must be none, field or group");
      }
    } else if (key == "user") {
      int user;
      std::string what;
      if (!(ls >> user >> what) || (user != 1 && user != 2)) fail("user rows start with 1 or 2");
      ensure_sized();
      const int S = user == 1 ? ch.S1 : ch.S2;
      const int X = user == 1 ? ch.X1 : ch.X2;
      int u, v, s;
      if (what == "pmf") {
        double p;
        if (!(ls >> u >> v >> s >> p)) fail("pmf row needs: u v s p");
        if (u < 0 || u >= nu || v < 0 || v >= nv || s < 0 || s >= S) fail("pmf row index out of range");
        pmf[user - 1][(s * nu + u) * nv + v] = p;
      } else if (what == "map") {
        int x;
        if (!(ls >> u >> v >> s >> x)) fail("map row needs: u v s x");
        if (u < 0 || u >= nu || v < 0 || v >= nv || s < 0 || s >= S || x < 0 || x >= X)
          fail("map row index out of range");
        maps[user - 1][(u * nv + v) * S + s] = x;
      } else {
        fail("user rows must be pmf or map");
      }
    } else {
      fail("unknown key \"" + key + "\"");
    }
  }
  ensure_sized();
  return make_full_tc(ch, nu, vkind, field, group, pmf, maps);
}

TestChannel load_test_channel(const std::string& path, const MacChannel& ch) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("test channel: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_test_channel_config(ss.str(), ch);
}

struct OutSink {
  std::ostream* os;
  std::ofstream file;
  explicit OutSink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os = &fallback;
    } else {
      file.open(path);
      if (!file) throw std::invalid_argument("cannot open output file " + path);
      os = &file;
    }
    os->precision(12);
  }
};

int cmd_region(const std::string& channel, const std::string& family, const std::string& tau_spec,
               double step, int aux, const std::string& tc_path, const std::string& out_path,
               std::uint64_t budget, int workers, std::ostream& out) {
  OutSink sink(out_path, out);
  std::ostream& os = *sink.os;
  const std::vector<double> taus = parse_tau_grid(tau_spec);
  if (taus.empty()) throw std::invalid_argument("tau grid is empty");
  const MacChannel ch = resolve_channel(channel);

  os << "tau,sum_rate,method,pre_envelope\n";
  if (family == "closed_form") {
    if (ch.name != "qdd") throw std::invalid_argument("closed_form curves exist for the qdd channel only");
    std::vector<std::pair<double, double>> pa, pf, pg;
    for (double t : taus) {
      const QddClosedForms c = qdd_closed_forms(t);
      pa.emplace_back(t, c.alpha);
      pf.emplace_back(t, c.beta_f);
      pg.emplace_back(t, c.beta_g);
    }
    const Envelope ea = upper_convex_envelope(pa), ef = upper_convex_envelope(pf),
                   eg = upper_convex_envelope(pg);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      os << taus[i] << ',' << ea(taus[i]) << ",alpha," << pa[i].second << '\n';
      os << taus[i] << ',' << ef(taus[i]) << ",beta_f," << pf[i].second << '\n';
      os << taus[i] << ',' << eg(taus[i]) << ",beta_g," << pg[i].second << '\n';
    }
    return 0;
  }
  if (family == "alpha" || family == "beta_f") {
    SearchOptions opt;
    opt.step = step;
    opt.aux_size = aux;
    opt.max_pairs = budget;
    opt.workers = workers;
    const Family fam = family == "alpha" ? Family::alpha : Family::beta_f;
    const RateCurve curve = best_sum_rate(ch, fam, taus, opt);
    for (std::size_t i = 0; i < taus.size(); ++i)
      os << taus[i] << ',' << curve.envelope(taus[i]) << ',' << curve.method << ','
         << curve.raw[i] << '\n';
    return 0;
  }
  if (family == "rsf" || family == "rsg") {
    if (tc_path.empty())
      throw std::invalid_argument(family + " evaluation needs --test-channel (the search is out of reach)");
    const TestChannel tc = load_test_channel(tc_path, ch);
    const RegionBounds b = family == "rsf" ? rsf_bounds(tc) : rsg_bounds(tc);
    const double tau = std::max(tc.expected_cost(0), tc.expected_cost(1));
    os << tau << ',' << b.r1 << ',' << family << "_r1," << b.r1_raw << '\n';
    os << tau << ',' << b.r2 << ',' << family << "_r2," << b.r2_raw << '\n';
    os << tau << ',' << b.sum << ',' << family << "_sum," << b.sum_raw << '\n';
    return 0;
  }
  throw std::invalid_argument("unknown family \"" + family + "\"");
}

int cmd_simulate(const std::string& channel, double tau, const std::vector<int>& ns,
                 std::uint64_t trials, double delta, std::uint64_t seed, double rate_frac,
                 double sum_rate, int k_margin, const std::string& tc_path,
                 const std::string& out_path, int workers, bool fixed_code, std::ostream& out) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (ns.empty()) throw std::invalid_argument("blocklength list is empty");
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");

  const MacChannel ch = resolve_channel(channel);
  TestChannel tc = [&] {
    if (!tc_path.empty()) return load_test_channel(tc_path, ch);
    if (ch.name == "bdd") return bdd_reference_tc(tau);
    if (ch.name == "qdd") return qdd_reference_tc(tau, VKind::field);
    throw std::invalid_argument("no built-in strategy for channel " + ch.name +
                                "; provide --test-channel");
  }();

  JointPmf j = tc.joint();
  const double logq = std::log2(static_cast<double>(tc.nv));
  const double h1 = j.conditional_entropy(j.mask_of({"V1"}), j.mask_of({"S1"}));
  const double h2 = j.conditional_entropy(j.mask_of({"V2"}), j.mask_of({"S2"}));
  double target = sum_rate;
  if (target < 0.0) target = rate_frac * beta_f_sum_rate(tc).value;

  OutSink sink(out_path, out);
  std::ostream& os = *sink.os;
  os << sim_csv_header() << '\n';
  for (int n : ns) {
    SimPoint pt;
    pt.n = n;
    pt.k1 = static_cast<int>(std::ceil(n * (1.0 - h1 / logq))) + k_margin;
    const int k2 = static_cast<int>(std::ceil(n * (1.0 - h2 / logq))) + k_margin;
    pt.k_plus = std::max(0, k2 - pt.k1);
    const int l_tot = std::max(0, static_cast<int>(std::lround(n * target / logq)));
    pt.l1 = l_tot / 2;
    pt.l2 = l_tot - pt.l1;
    SimConfig cfg;
    cfg.trials = trials;
    cfg.delta = delta;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.fixed_code = fixed_code;
    const SimReport rep = simulate_mac(tc, pt, cfg);
    os << sim_csv_row(rep) << '\n';
  }
  return 0;
}

int cmd_group_entropy(const std::string& group_spec, const std::string& pmf_path, int weight_grid,
                      std::ostream& out) {
  const Group g = Group::parse(group_spec);
  std::ifstream f(pmf_path);
  if (!f) throw std::invalid_argument("pmf file: cannot open " + pmf_path);
  int nv = 0, ns = 0;
  std::string line;
  std::vector<double> table;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "pmf") {
      std::string vn, sn;
      if (!(ls >> vn >> nv >> sn >> ns) || nv < 1 || ns < 1)
        throw std::invalid_argument("pmf file: header must read: pmf V <|V|> S <|S|>");
      table.assign(static_cast<size_t>(nv) * ns, 0.0);
    } else if (key == "row") {
      if (table.empty()) throw std::invalid_argument("pmf file: row before header");
      int v, s;
      double p;
      if (!(ls >> v >> s >> p)) throw std::invalid_argument("pmf file: row needs v s p");
      if (v < 0 || v >= nv || s < 0 || s >= ns)
        throw std::invalid_argument("pmf file: row index out of range");
      if (p < 0.0)
        throw std::invalid_argument("pmf file: negative probability at line " + std::to_string(lineno));
      table[static_cast<size_t>(v) * ns + s] = p;
    } else {
      throw std::invalid_argument("pmf file: unknown key \"" + key + "\"");
    }
  }
  if (table.empty()) throw std::invalid_argument("pmf file: missing pmf header");
  double sum = 0.0;
  for (double p : table) sum += p;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("pmf file: probabilities sum to " + std::to_string(sum) +
                                ", expected 1");
  if (nv != g.order()) throw std::invalid_argument("pmf file: |V| does not match the group order");
  for (auto& v : table) v /= sum;  // absorb the accepted drift

  JointPmf p = JointPmf::from_table({{"V", nv}, {"S", ns}}, table);
  out.precision(12);
  out << "conditioning,i_source,h_source,i_channel\n";
  for (int pass = 0; pass < 2; ++pass) {
    const VarMask cond = pass == 0 ? 0 : p.mask_of({"S"});
    const double is = g.factor_count() == 1 ? group_mi_source_zpr(p, "V", cond, g)
                                            : group_mi_source_abelian(p, "V", cond, g, weight_grid);
    const double hs = group_entropy_source(p, "V", cond, g, weight_grid);
    out << (pass == 0 ? "none" : "S") << ',' << is << ',' << hs << ',';
    // the channel-coding rate treats the second variable as the output, so it
    // only exists on the conditioned row, and only for single-factor groups
    if (g.factor_count() == 1 && pass == 1)
      out << group_mi_channel_zpr(p, "V", p.mask_of({"S"}), g);
    else
      out << "-";
    out << '\n';
  }
  return 0;
}

int cmd_verify(bool negative_controls, std::uint64_t cap, std::ostream& out) {
  VerifyOptions opt;
  opt.negative_controls = negative_controls;
  opt.cap = cap;
  const auto reports = run_verify_battery(opt);
  bool all_ok = true;
  for (const auto& r : reports) {
    const char* tag = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
    out << "[" << tag << "] " << r.name << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
    if (!r.skipped && !r.pass) all_ok = false;
  }
  return all_ok ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"achievable rate regions and coset-code simulation for state-dependent MACs"};
  app.require_subcommand(1);

  // region
  auto* region = app.add_subcommand("region", "evaluate sum-rate curves or region bounds");
  std::string r_channel, r_family = "beta_f", r_tau = "0:0.5:0.05", r_tc, r_out;
  double r_step = 0.05;
  int r_aux = 2, r_workers = 0;
  std::uint64_t r_budget = 400'000'000;
  region->add_option("--channel", r_channel, "catalog name or config path")->required();
  region->add_option("--family", r_family, "alpha|beta_f|rsf|rsg|closed_form");
  region->add_option("--tau", r_tau, "cost grid lo:hi:step");
  region->add_option("--step", r_step, "simplex grid step");
  region->add_option("--aux-size", r_aux, "auxiliary alphabet size");
  region->add_option("--test-channel", r_tc, "test channel file for rsf/rsg");
  region->add_option("--out", r_out, "output CSV path (default stdout)");
  region->add_option("--budget", r_budget, "maximum pair evaluations per cost");
  region->add_option("--workers", r_workers, "worker threads (default: COSETMAC_WORKERS or cores)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo coset-code simulation");
  std::string s_channel, s_tc, s_out;
  double s_tau = 0.25, s_delta = 1.0, s_rate_frac = 0.6, s_sum_rate = -1.0;
  std::vector<int> s_ns{12, 24, 36};
  std::uint64_t s_trials = 10000, s_seed = 1;
  int s_workers = 0, s_kmargin = 1;
  bool s_fixed = false;
  sim->add_option("--channel", s_channel, "catalog name or config path")->required();
  sim->add_option("--tau", s_tau, "cost constraint for the built-in strategy");
  sim->add_option("--n", s_ns, "blocklengths")->delimiter(',');
  sim->add_option("--trials", s_trials, "Monte Carlo trials per blocklength");
  sim->add_option("--delta", s_delta, "decoder typicality radius (encoder delta/2)");
  sim->add_option("--seed", s_seed, "rng seed");
  sim->add_option("--rate-frac", s_rate_frac, "sum rate as a fraction of the strategy bound");
  sim->add_option("--sum-rate", s_sum_rate, "explicit sum rate in bits (overrides --rate-frac)");
  sim->add_option("--k-margin", s_kmargin, "extra inner rows above the bin-rate threshold");
  sim->add_option("--test-channel", s_tc, "test channel file");
  sim->add_option("--out", s_out, "output CSV path (default stdout)");
  sim->add_option("--workers", s_workers, "worker threads");
  sim->add_flag("--fixed-code", s_fixed, "one code draw for all trials");

  // group-entropy
  auto* ge = app.add_subcommand("group-entropy", "group information quantities of a (V,S) pmf");
  std::string g_spec, g_pmf;
  int g_grid = 201;
  ge->add_option("--group", g_spec, "cyclic factors, e.g. 2^2 or 2,2^2")->required();
  ge->add_option("--pmf", g_pmf, "pmf file over (V,S)")->required();
  ge->add_option("--weight-grid", g_grid, "weight simplex resolution");

  // verify
  auto* verify = app.add_subcommand("verify", "exact ensemble checks and typicality properties");
  bool v_neg = false;
  std::uint64_t v_cap = 1ull << 22;
  verify->add_flag("--negative-controls", v_neg, "also run the designed-to-fail controls");
  verify->add_option("--cap", v_cap, "skip checks needing more ensemble draws than this");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (region->parsed())
      return cmd_region(r_channel, r_family, r_tau, r_step, r_aux, r_tc, r_out, r_budget, r_workers,
                        out);
    if (sim->parsed())
      return cmd_simulate(s_channel, s_tau, s_ns, s_trials, s_delta, s_seed, s_rate_frac, s_sum_rate,
                          s_kmargin, s_tc, s_out, s_workers, s_fixed, out);
    if (ge->parsed()) return cmd_group_entropy(g_spec, g_pmf, g_grid, out);
    if (verify->parsed()) return cmd_verify(v_neg, v_cap, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cosetmac
