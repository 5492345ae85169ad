#include "fsistab/runner.hpp"

#include "fsistab/analyze.hpp"
#include "fsistab/elliptic.hpp"
#include "fsistab/evolve.hpp"
#include "fsistab/state_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fsistab {

namespace {

struct Setup {
  Grid grid;
  AmbientField U;
  Generator A;
  explicit Setup(const RunConfig& c)
      : grid(Geometry(c.L1, c.L2, c.nx, c.ny)),
        U(build_ambient(grid, ambient_preset_from_string(c.preset),
                        c.preset == "zero" ? 0.0 : c.amplitude)),
        A(grid, U, c.kappa, {c.nu, c.lambda, c.eta}) {}
};

Vec initial_state(const Setup& s, const RunConfig& c) {
  switch (c.init.kind) {
    case InitKind::N0:
      return s.A.null_vector();
    case InitKind::Random:
      return s.A.random_state(c.init.seed);
    case InitKind::RandomOffnull:
      return s.A.project_offnull(s.A.random_state(c.init.seed));
    case InitKind::File:
      return s.A.reduce(load_state(c.init.path, s.grid));
  }
  throw ConfigError("unreachable init kind");
}

std::ofstream open_csv(const RunConfig& c, const std::string& name,
                       const std::string& header) {
  std::filesystem::create_directories(c.out_dir);
  auto path = std::filesystem::path(c.out_dir) / name;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << "# " << c.resolved_line() << "\n" << header << "\n";
  return f;
}

void write_trace_csv(const RunConfig& c, const std::string& name,
                     const EnergyTrace& tr) {
  auto f = open_csv(c, name, "t,E,D,Sdiv,Skappa,Q,balance_residual");
  char buf[512];
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", tr.t[k],
                  tr.E[k], tr.D[k], tr.Sdiv[k], tr.Skappa[k], tr.Q[k],
                  tr.balance_residual[k]);
    f << buf << "\n";
  }
}

int do_simulate(const RunConfig& c) {
  Setup s(c);
  Vec X0 = initial_state(s, c);
  auto out = evolve(s.A, X0, c.resolved_dt(), c.T, c.record_stride);
  write_trace_csv(c, "energy_trace.csv", out.trace);
  double E0 = out.trace.E.front();
  double tol = 1e-12 * std::max(E0, 1.0);
  std::cerr << "simulate: E(0) = " << E0
            << ", E(T) = " << out.trace.E.back()
            << ", max balance residual = " << out.trace.max_balance_residual
            << " (tolerance " << tol << ")\n";
  return out.trace.max_balance_residual <= tol ? kExitPass : kExitNumerical;
}

int do_spectrum(const RunConfig& c) {
  Setup s(c);
  auto rep = spectrum(s.A);
  auto f = open_csv(c, "spectrum.csv", "re,im");
  char buf[128];
  for (const auto& z : rep.eigs) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", z.real(), z.imag());
    f << buf << "\n";
  }
  std::cerr << "spectrum: " << rep.eigs.size() << " eigenvalues, "
            << rep.n_zero << " with |lambda| <= 1e-8, gap = " << rep.gap
            << ", alignment = " << rep.alignment << "\n";
  return rep.n_zero == 1 ? kExitPass : kExitNumerical;
}

int do_nullspace(const RunConfig& c) {
  Setup s(c);
  double r = s.A.null_residual();
  auto cc = check_cc(s.grid, s.U);
  std::cerr << "nullspace: residual = " << r
            << ", cc defect = " << cc.max_defect
            << (cc.pass ? " (cc pass)" : " (cc FAIL)") << "\n";
  return (r <= 1e-10 && cc.pass) ? kExitPass : kExitNumerical;
}

int do_decay(const RunConfig& c) {
  Setup s(c);
  Vec X0 = initial_state(s, c);
  auto out = evolve(s.A, X0, c.resolved_dt(), c.T, c.record_stride);
  write_trace_csv(c, "decay_trace.csv", out.trace);
  auto fit = decay_fit(out.trace.t, out.trace.E);
  auto dk = datko_check(out.trace);
  std::cerr << "decay: energy rate = " << fit.energy_rate
            << ", state rate = " << fit.state_rate << ", rsq = " << fit.rsq
            << ", Cstar = " << dk.Cstar << " (half-horizon " << dk.Cstar_half
            << ", reldiff " << dk.reldiff << ")"
            << (dk.pass ? " datko pass" : " datko FAIL") << "\n";
  return (fit.energy_rate > 0 && fit.rsq >= 0.95 && dk.pass) ? kExitPass
                                                             : kExitNumerical;
}

int do_diagnose(const RunConfig& c) {
  Setup s(c);
  Elliptic el(s.grid);
  Vec X0 = initial_state(s, c);
  auto out = evolve(s.A, X0, c.resolved_dt(), c.T, 1, true);
  auto rep = multiplier_report(s.A, el, out, s.U.psiU);
  auto f = open_csv(c, "ledger.csv", "term,value");
  char buf[160];
  auto row = [&](const char* k, double v) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g", k, v);
    f << buf << "\n";
  };
  row("pressure_recovery", rep.pressure_recovery);
  row("boundary_pairing", rep.boundary_pairing);
  row("flux_trace", rep.flux_trace);
  row("lower_order", rep.lower_order);
  row("plate_multiplier", rep.plate_multiplier);
  row("trace_identity", rep.trace_identity);
  row("int_energy", rep.int_energy);
  row("int_diss", rep.int_diss);
  row("C0", rep.C0);
  row("Ceps", rep.Ceps);
  row("slack", rep.slack);
  row("Cstar", rep.Cstar);
  bool trace_ok = c.kappa != 0 || rep.trace_identity <= 1e-10;
  std::cerr << "diagnose: trace identity = " << rep.trace_identity
            << ", slack = " << rep.slack << ", Cstar = " << rep.Cstar << "\n";
  return (trace_ok && rep.slack >= 0.0) ? kExitPass : kExitNumerical;
}

int do_selftest(const RunConfig&) {
  int fails = 0;
  auto check = [&](const char* name, double v, double tol) {
    bool ok = v <= tol;
    std::cerr << (ok ? "PASS " : "FAIL ") << name << " = " << v
              << " (tol " << tol << ")\n";
    if (!ok) ++fails;
  };
  Grid g(Geometry(1, 1, 16, 16));

  {  // Green identity on random fields
    Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
    Vec p = A.random_state(2, false).head(g.N);
    Vec u1 = A.random_state(3, false).head(g.N);
    Vec u2 = A.random_state(4, false).head(g.N);
    double lhs = wdot(g.Wo, g.Dxp * p, u1) + wdot(g.Wo, g.Dyp * p, u2) +
                 wdot(g.Wo, p, g.Dxm * u1 + g.Dym * u2);
    double rhs = g.flux_x(p, u1) + g.flux_y(p, u2);
    check("green_identity", std::abs(lhs - rhs) / (std::abs(lhs) + 1), 1e-12);
    check("null_residual", A.null_residual(), 1e-10);
    Vec X = A.random_state(7);
    check("Q_invariance", std::abs(A.Q(A.apply(X))), 1e-10);
  }
  for (int kappa : {0, 1}) {  // quadratic energy identity
    auto U = build_ambient(g, AmbientPreset::SolenoidalVortex, 1.0);
    Generator A(g, U, kappa);
    Vec X = A.random_state(11, false);
    double lhs = X.dot(A.G() * X);
    double rhs = -A.diss(X) + A.sdiv_rate(X) + A.skappa_rate(X);
    std::string nm = "energy_identity_kappa" + std::to_string(kappa);
    check(nm.c_str(), std::abs(lhs - rhs) / std::abs(lhs), 1e-12);
  }
  {  // short CN balance + monotone decay
    Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
    Vec X0 = A.project_offnull(A.random_state(1));
    auto out = evolve(A, X0, 1.0 / 64, 2.0);
    check("cn_balance", out.trace.max_balance_residual, 1e-12);
    double up = 0.0;
    for (std::size_t k = 1; k < out.trace.E.size(); ++k)
      up = std::max(up, out.trace.E[k] - out.trace.E[k - 1]);
    check("monotone_decay", up, 1e-10);
  }
  {  // Leray projector invariants
    Elliptic el(g);
    Generator A(g, build_ambient(g, AmbientPreset::Zero, 0.0), 0);
    Vec u1 = A.random_state(21, false).head(g.N);
    Vec u2 = A.random_state(22, false).head(g.N);
    auto P = el.leray(u1, u2);
    auto PP = el.leray(P.Pu1, P.Pu2);
    double idem = std::sqrt(wdot(g.Wo, PP.Pu1 - P.Pu1, PP.Pu1 - P.Pu1) +
                            wdot(g.Wo, PP.Pu2 - P.Pu2, PP.Pu2 - P.Pu2));
    double orth = std::abs(wdot(g.Wo, P.Pu1, u1 - P.Pu1) +
                           wdot(g.Wo, P.Pu2, u2 - P.Pu2));
    check("leray_idempotent", idem, 1e-10);
    check("leray_orthogonal", orth, 1e-10);
  }
  std::cerr << (fails == 0 ? "selftest: all checks passed\n"
                           : "selftest: FAILURES\n");
  return fails == 0 ? kExitPass : kExitNumerical;
}

}  // namespace

int run_subcommand(const std::string& name, const RunConfig& cfg) {
  try {
    if (name == "simulate") return do_simulate(cfg);
    if (name == "spectrum") return do_spectrum(cfg);
    if (name == "nullspace") return do_nullspace(cfg);
    if (name == "decay") return do_decay(cfg);
    if (name == "diagnose") return do_diagnose(cfg);
    if (name == "selftest") return do_selftest(cfg);
    std::cerr << "unknown subcommand: " << name << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace fsistab
