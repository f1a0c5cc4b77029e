#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "CLI11.hpp"
#include "json.hpp"
#include "resdirac/resdirac.hpp"

using namespace resdirac;
using nlohmann::json;

namespace {

struct RunConfig {
  double gamma = 1.0;
  double alpha = 0.0;
  int n = 1024;
  double zmax = 200.0 * pi;
  double tmax = 0.0;  // 0: 16 gamma
  double rcut = 0.0;  // 0: radius of the searched region
  double imcap = default_im_cap_factor;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string out = ".";
  int workers = 1;
};

void validate_config(const RunConfig& c) {
  if (!(c.gamma > 0)) throw ValidationError("config", "--gamma must be positive");
  if (c.n < 1) throw ValidationError("config", "--n must be positive");
  if (!(c.tol > 0)) throw ValidationError("config", "--tol must be positive");
  if (!(c.zmax > 0)) throw ValidationError("config", "--zmax must be positive");
  if (!(c.imcap > 0)) throw ValidationError("config", "--imcap must be positive");
  if (c.tmax < 0 || c.rcut < 0) throw ValidationError("config", "--tmax and --rcut must be non-negative");
  if (c.workers < 1) throw ValidationError("config", "--workers must be at least 1");
}

std::string out_path(const RunConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.out);
  return (std::filesystem::path(c.out) / name).string();
}

class Csv {
public:
  Csv(const std::string& path, const std::vector<std::string>& header) : os_(path) {
    if (!os_) throw ValidationError("io", "cannot write " + path);
    os_ << std::setprecision(17);
    for (std::size_t k = 0; k < header.size(); ++k) os_ << (k ? "," : "") << header[k];
    os_ << '\n';
  }
  template <class... T>
  void row(const T&... v) {
    std::size_t k = 0;
    ((os_ << (k++ ? "," : "") << v), ...);
    os_ << '\n';
  }

private:
  std::ofstream os_;
};

double t_max_factor(const RunConfig& c, double gamma) { return c.tmax > 0 ? c.tmax / gamma : 16.0; }

Potential load_potential(const std::string& path) { return io::potential_from_json(io::read_file(path)); }

void say(const std::string& msg) { std::cout << msg << '\n'; }

int cmd_synth(const RunConfig& c, int pieces, double amplitude, const std::vector<double>& constant) {
  Potential q;
  if (!constant.empty()) {
    if (constant.size() != 2) throw ValidationError("usage", "--constant takes RE IM");
    q = constant_potential(c.gamma, c.n, cplx(constant[0], constant[1]));
  } else {
    q = random_piecewise(c.seed, {c.gamma, c.n, pieces, amplitude});
  }
  const std::string p = out_path(c, "potential.json");
  io::write_file(p, io::to_json(q));
  say("wrote " + p);
  return 0;
}

int cmd_forward(const RunConfig& c, const std::string& in, double window, int points, bool fourier, int m) {
  const Potential q = load_potential(in);
  const BoundaryParam a(c.alpha);
  if (points < 2) throw ValidationError("usage", "--points must be at least 2");
  std::vector<cplx> psi(static_cast<std::size_t>(points)), S(psi.size());
  std::vector<double> zs(psi.size());
  parallel_for(points, c.workers, [&](int k) {
    const double z = -window + 2.0 * window * k / (points - 1);
    const auto i = static_cast<std::size_t>(k);
    zs[i] = z;
    psi[i] = jost_function(q, a, z, c.imcap);
    S[i] = std::conj(psi[i]) / psi[i];
  });
  Csv pc(out_path(c, "psi.csv"), {"x", "z_re", "z_im", "value_re", "value_im"});
  Csv sc(out_path(c, "smatrix.csv"), {"x", "z_re", "z_im", "value_re", "value_im"});
  for (std::size_t i = 0; i < psi.size(); ++i) {
    pc.row(zs[i], zs[i], 0.0, psi[i].real(), psi[i].imag());
    sc.row(zs[i], zs[i], 0.0, S[i].real(), S[i].imag());
  }
  FourierKernelOptions fo;
  fo.residual_tol = std::max(c.tol, fo.residual_tol);
  const JostRep rep = fourier ? jost_kernel(q, a, c.zmax, m, fo) : jost_kernel_characteristics(q, a);
  io::write_file(out_path(c, "jostrep.json"), io::to_json(rep));
  io::write_file(out_path(c, "scattering.json"), io::to_json(forward_scattering(q, a, t_max_factor(c, q.gamma))));
  say("wrote psi.csv smatrix.csv jostrep.json scattering.json to " + c.out);
  return 0;
}

struct Source {
  Evaluator f;
  double gamma = 1.0;
  BoundaryParam alpha;
};

Source load_source(const std::string& path, const RunConfig& c) {
  const std::string text = io::read_file(path);
  const std::string kind = io::detect_kind(text);
  Source s;
  if (kind == "potential") {
    const Potential q = io::potential_from_json(text);
    s.alpha = BoundaryParam(c.alpha);
    s.f = jost_evaluator(q, s.alpha, c.imcap);
    s.gamma = q.gamma;
  } else if (kind == "jostrep") {
    const JostRep rep = io::jostrep_from_json(text);
    s.alpha = rep.alpha;
    s.f = jost_rep_evaluator(rep);
    s.gamma = rep.gamma;
  } else {
    throw ValidationError("parse", "expected a potential or jostrep file");
  }
  return s;
}

int cmd_resonances(const RunConfig& c, const std::string& in, const std::vector<double>& region, double step,
                   double eps, double strip, double phase_window) {
  const Source src = load_source(in, c);
  if (region.size() != 4) throw ValidationError("usage", "--region takes RE_MIN RE_MAX IM_MIN IM_MAX");
  SearchRegion reg;
  reg.re_min = region[0];
  reg.re_max = region[1];
  reg.im_min = region[2];
  reg.im_max = region[3];
  reg.sample_step = step;
  if (reg.im_min < -c.imcap / src.gamma)
    throw ValidationError("region", "region extends below the Im z cap");
  const ResonanceSearch res = find_resonances(src.f, reg, c.tol);
  const double rcut = c.rcut > 0 ? c.rcut : std::min(-reg.re_min, reg.re_max);
  io::write_file(out_path(c, "resonances.json"), io::to_json(res.zeros, rcut));

  Csv lev(out_path(c, "levinson.csv"), {"r", "n_plus", "n_minus", "ratio_plus", "ratio_minus"});
  for (int k = 5; k >= 0 && rcut > 0; --k) {
    const double r = rcut / std::pow(2.0, k);
    const auto [np, nm] = count_in_sector(res.zeros, r, 0.0);
    const auto [rp, rm] = levinson_ratio(res.zeros, src.gamma, r);
    lev.row(r, np, nm, rp, rm);
  }
  const ForbiddenReport fr = forbidden_domain_check(res.zeros, src.gamma, eps, strip);
  Csv fb(out_path(c, "forbidden.csv"), {"z_re", "z_im", "mult", "slack", "c_fit", "eps"});
  for (std::size_t k = 0; k < res.zeros.size(); ++k) {
    const auto& e = res.zeros.entries[k];
    fb.row(e.z.real(), e.z.imag(), e.multiplicity, fr.slack[k], fr.C_fit, eps);
  }
  const Grid pg = make_grid(-phase_window, phase_window, 400);
  const PhaseProfile ph = phase_profile(res.zeros, src.gamma, src.alpha, pg, rcut, 0.0);
  Csv pc(out_path(c, "phase.csv"), {"z", "phi", "dphi", "s_re", "s_im"});
  for (int j = 0; j <= pg.n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    const cplx e = std::exp(-2.0 * I * ph.phi[k]);
    pc.row(pg.node(j), ph.phi[k], ph.dphi[k], e.real(), e.imag());
  }
  int ambiguous = 0;
  for (const auto& e : res.zeros.entries) ambiguous += e.boundary_ambiguous;
  json summary{{"argument_count", res.argument_count}, {"located", res.zeros.total_multiplicity()},
               {"boundary_ambiguous", ambiguous}, {"r_cut", rcut}, {"c_fit", fr.C_fit},
               {"strip_count", fr.strip_count}, {"phi0", ph.phi0}, {"phi0_disagreement", ph.disagreement},
               {"phi0_flagged", ph.flagged}};
  std::cout << summary.dump() << '\n';
  return 0;
}

int cmd_invert(const RunConfig& c, const std::string& in, bool n_given) {
  const std::string text = io::read_file(in);
  const std::string kind = io::detect_kind(text);
  ScatteringRep S;
  double tail = 0.0;
  if (kind == "scattering") {
    S = io::scattering_from_json(text);
  } else if (kind == "jostrep") {
    const JostRep rep = io::jostrep_from_json(text);
    const double T = t_max_factor(c, rep.gamma) * rep.gamma;
    WienerOptions wo;
    wo.tail_tol = 0.0;
    const WienerInverse w = invert_wiener(rep, T + rep.gamma, wo);
    tail = w.tail_mass;
    S = scattering_kernel(rep, w, T);
  } else {
    throw ValidationError("parse", "expected a scattering or jostrep file");
  }
  int n = c.n;
  if (!n_given) n = std::max(1, static_cast<int>(std::lround(S.gamma / (2.0 * S.F.grid.h))));
  const RecoveredPotential r = recover_potential(S, make_grid(0.0, S.gamma, n));
  io::write_file(out_path(c, "potential.json"), io::to_json(r.q));
  Csv d(out_path(c, "diagnostics.csv"), {"quantity", "value"});
  d.row("n", n);
  d.row("support", r.support);
  d.row("clamp_max", r.clamp_max);
  d.row("t_max", S.t_max);
  d.row("wiener_tail_mass", tail);
  say("wrote potential.json diagnostics.csv to " + c.out);
  return 0;
}

int cmd_move(const RunConfig& c, const std::string& in, const std::string& moves_file) {
  const Potential q = load_potential(in);
  const BoundaryParam a(c.alpha);
  const auto moves = io::moves_from_json(io::read_file(moves_file));
  const MoveResult m = move_resonances_full(q, a, moves);
  io::write_file(out_path(c, "potential.json"), io::to_json(m.q));
  io::write_file(out_path(c, "jostrep.json"), io::to_json(m.rep));
  const Evaluator f = jost_evaluator(m.q, a, c.imcap);
  Csv mc(out_path(c, "moves.csv"), {"from_re", "from_im", "to_re", "to_im", "located_re", "located_im", "error"});
  for (const auto& mv : m.applied) {
    const cplx z = polish_zero(f, mv.to);
    mc.row(mv.from.real(), mv.from.imag(), mv.to.real(), mv.to.imag(), z.real(), z.imag(), std::abs(z - mv.to));
  }
  say("wrote potential.json jostrep.json moves.csv to " + c.out);
  return 0;
}

int cmd_shift(const RunConfig& c, const std::string& in, double k) {
  io::write_file(out_path(c, "potential.json"), io::to_json(shift_potential(load_potential(in), k)));
  say("wrote potential.json to " + c.out);
  return 0;
}

int cmd_reflect(const RunConfig& c, const std::string& in) {
  io::write_file(out_path(c, "potential.json"),
                 io::to_json(reflect_potential(load_potential(in), BoundaryParam(c.alpha))));
  say("wrote potential.json to " + c.out);
  return 0;
}

int cmd_canonical(const RunConfig& c, const std::string& in, const std::string& mode, double window, int points,
                  double imag) {
  const std::string text = io::read_file(in);
  if (mode == "to-hamiltonian") {
    const Hamiltonian H = hamiltonian_from_potential(io::potential_from_json(text));
    io::write_file(out_path(c, "hamiltonian.json"), io::to_json(H));
    say("wrote hamiltonian.json to " + c.out);
  } else if (mode == "to-potential") {
    const Potential q = potential_from_hamiltonian(io::hamiltonian_from_json(text));
    io::write_file(out_path(c, "potential.json"), io::to_json(q));
    say("wrote potential.json to " + c.out);
  } else if (mode == "hermite-biehler") {
    const Potential q = io::potential_from_json(text);
    Csv hb(out_path(c, "hermite_biehler.csv"), {"z_re", "z_im", "E_re", "E_im", "abs_E_conj", "identity_residual"});
    for (int k = 0; k < points; ++k) {
      const cplx z(-window + 2.0 * window * k / std::max(1, points - 1), imag);
      const cplx E = hermite_biehler(q, z);
      const cplx Ec = hermite_biehler(q, std::conj(z));
      const cplx psi0 = jost_function(q, BoundaryParam(0.0), z, c.imcap);
      const double res = std::abs(E + I * std::exp(-I * q.gamma * z) * psi0);
      hb.row(z.real(), z.imag(), E.real(), E.imag(), std::abs(Ec), res);
    }
    say("wrote hermite_biehler.csv to " + c.out);
  } else {
    throw ValidationError("usage", "--mode must be to-hamiltonian, to-potential or hermite-biehler");
  }
  return 0;
}

int cmd_check(const RunConfig& c, const std::string& in, bool strict) {
  const Potential q = load_potential(in);
  const BoundaryParam a(c.alpha);
  json report = json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool pass, double measured, bool required = true) {
    report.push_back({{"check", name}, {"pass", pass}, {"measured", measured}, {"required", required}});
    if (required && !pass) all = false;
  };
  auto add_report = [&](const ClassReport& r) {
    for (const auto& ch : r.checks) add(r.cls + ": " + ch.name, ch.pass, ch.measured, ch.required);
  };
  ValidateOptions vo;
  vo.strict = strict;
  add_report(validate_class(q, vo));
  const JostRep rep = jost_kernel_characteristics(refine(q, 2), a);
  add_report(validate_class(rep, vo));
  // unimodularity is O(h^2); judge it on at least 4096 kernel cells
  const int r = std::max(1, static_cast<int>(std::ceil(2048.0 / q.n())));
  const ScatteringRep S_fine = forward_scattering(refine(q, r), a, t_max_factor(c, q.gamma));
  add_report(validate_class(S_fine, vo));
  const SupportReport sr = support_identities(q, rep, S_fine);
  add("support identities", sr.pass || sr.degenerate, std::max(std::abs(sr.support_q - sr.support_g),
                                                               std::abs(sr.support_q - sr.support_F)));

  const std::vector<cplx> zs{{0.3, 0.0}, {-2.0, -0.5}, {4.0, 1.0}, {1.0, -2.0}, {-6.5, 0.25}};
  double det = 0, shift = 0, refl = 0, prop = 0;
  const double k = 0.7;
  const Potential qk = shift_potential(q, k);
  const Potential qo = reflect_potential(q, a);
  for (const cplx z : zs) {
    det = std::max(det, std::abs(integrate_jost(q, z, c.imcap).f0.determinant() - 1.0));
    shift = std::max(shift, std::abs(jost_function(q, a, z + k) - jost_function(qk, a, z)));
    refl = std::max(refl, std::abs(std::conj(jost_function(q, a, -std::conj(z))) -
                                   std::polar(1.0, 2.0 * a.alpha) * jost_function(qo, a, z)));
    if (q.carrier == 0.0) {
      const auto u = boundary_solution(q, a, z);
      prop = std::max(prop, std::abs(jost_function(q, a, z) - std::exp(I * q.gamma * z) * (u(1) + I * u(0))));
    }
  }
  add("det f(0,z) = 1", det < 1e-9, det);
  add("shift identity", shift < 1e-8, shift);
  add("reflection identity", refl < 1e-8, refl);
  if (q.carrier == 0.0) add("boundary solution identity", prop < 1e-8, prop);
  const ScatteringRep S = forward_scattering(q, a, t_max_factor(c, q.gamma));
  const RecoveredPotential back = recover_potential(S, q.samples.grid);
  const double rt = relative_cell_l2(back.q.samples.values, q.samples.values, q.h());
  add("inverse round trip", !(rt > 1e-2), rt);

  io::write_file(out_path(c, "check.json"), json{{"pass", all}, {"checks", report}}.dump(1));
  say(all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}

void emit_error(const std::string& kind, const std::string& msg) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward and inverse resonance scattering for half-line Dirac operators"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option defaults");
  RunConfig c;
  app.add_option("--gamma", c.gamma, "support length for synthesized potentials")->capture_default_str();
  app.add_option("--alpha", c.alpha, "boundary parameter in [0, pi)")->capture_default_str();
  auto* nopt = app.add_option("--n", c.n, "grid cells")->capture_default_str();
  app.add_option("--zmax", c.zmax, "real-axis band for Fourier kernel extraction")->capture_default_str();
  app.add_option("--tmax", c.tmax, "scattering kernel horizon (0: 16 gamma)")->capture_default_str();
  app.add_option("--rcut", c.rcut, "truncation radius (0: searched radius)")->capture_default_str();
  app.add_option("--imcap", c.imcap, "|Im z| cap times gamma")->capture_default_str();
  app.add_option("--tol", c.tol, "zero location tolerance")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for synthetic potentials")->capture_default_str();
  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--workers", c.workers, "worker threads for z-grid evaluation")->capture_default_str();

  std::string input;
  auto* synth = app.add_subcommand("synth", "seeded random piecewise-constant potential");
  int pieces = 8;
  double amplitude = 2.0;
  std::vector<double> constant;
  synth->add_option("--pieces", pieces)->capture_default_str();
  synth->add_option("--amplitude", amplitude)->capture_default_str();
  synth->add_option("--constant", constant, "RE IM: constant potential instead")->expected(2);

  auto* fwd = app.add_subcommand("forward", "psi and S on the real axis, kernels");
  double window = 20.0;
  int points = 401, m = 4096;
  bool fourier = false;
  fwd->add_option("potential", input)->required()->check(CLI::ExistingFile);
  fwd->add_option("--window", window, "real-axis half width")->capture_default_str();
  fwd->add_option("--points", points)->capture_default_str();
  fwd->add_flag("--fourier", fourier, "extract g from real-axis samples instead of characteristics");
  fwd->add_option("--m", m, "real-axis samples for --fourier")->capture_default_str();

  auto* resn = app.add_subcommand("resonances", "zeros of psi in a lower half-plane rectangle");
  std::vector<double> region{-30.0, 30.0, -6.0, 0.0};
  double step = 0.05, eps = 0.1, strip = 1.0, phase_window = 10.0;
  resn->add_option("input", input, "potential or jostrep file")->required()->check(CLI::ExistingFile);
  resn->add_option("--region", region, "RE_MIN RE_MAX IM_MIN IM_MAX")->expected(4)->capture_default_str();
  resn->add_option("--step", step, "initial contour spacing")->capture_default_str();
  resn->add_option("--eps", eps, "forbidden-domain epsilon")->capture_default_str();
  resn->add_option("--strip", strip, "strip depth A")->capture_default_str();
  resn->add_option("--phase-window", phase_window)->capture_default_str();

  auto* inv = app.add_subcommand("invert", "potential from a scattering or jostrep file");
  inv->add_option("input", input)->required()->check(CLI::ExistingFile);

  auto* mv = app.add_subcommand("move", "relocate resonances and recover the potential");
  std::string moves_file;
  mv->add_option("potential", input)->required()->check(CLI::ExistingFile);
  mv->add_option("--moves", moves_file, "JSON list of {from:{re,im}, to:{re,im}}")->required()->check(CLI::ExistingFile);

  auto* sh = app.add_subcommand("shift", "q_k with psi(z + k, q) = psi(z, q_k)");
  double k = 0.0;
  sh->add_option("potential", input)->required()->check(CLI::ExistingFile);
  sh->add_option("--k", k)->required();

  auto* rf = app.add_subcommand("reflect", "e^{4 i alpha} conj q");
  rf->add_option("potential", input)->required()->check(CLI::ExistingFile);

  auto* can = app.add_subcommand("canonical", "canonical-system conversions");
  std::string mode = "to-hamiltonian";
  double imag = 0.5;
  can->add_option("input", input)->required()->check(CLI::ExistingFile);
  can->add_option("--mode", mode, "to-hamiltonian | to-potential | hermite-biehler")->capture_default_str();
  can->add_option("--window", window)->capture_default_str();
  can->add_option("--points", points)->capture_default_str();
  can->add_option("--imag", imag, "Im z of the sampled line")->capture_default_str();

  auto* chk = app.add_subcommand("check", "class validation and identity checks on one potential");
  bool strict = false;
  chk->add_option("potential", input)->required()->check(CLI::ExistingFile);
  chk->add_flag("--strict", strict, "require sup supp q = gamma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  }

  try {
    validate_config(c);
    if (*synth) return cmd_synth(c, pieces, amplitude, constant);
    if (*fwd) return cmd_forward(c, input, window, points, fourier, m);
    if (*resn) return cmd_resonances(c, input, region, step, eps, strip, phase_window);
    if (*inv) return cmd_invert(c, input, nopt->count() > 0);
    if (*mv) return cmd_move(c, input, moves_file);
    if (*sh) return cmd_shift(c, input, k);
    if (*rf) return cmd_reflect(c, input);
    if (*can) return cmd_canonical(c, input, mode, window, points, imag);
    if (*chk) return cmd_check(c, input, strict);
  } catch (const ValidationError& e) {
    emit_error(e.kind(), e.what());
    return 2;
  } catch (const NumericalError& e) {
    emit_error("numerical", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return 2;
}
