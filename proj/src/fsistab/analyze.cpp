#include "fsistab/analyze.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsistab {

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& E,
                   double lo, double hi) {
  if (t.size() != E.size() || t.size() < 10)
    throw std::invalid_argument("decay fit: need matching samples (>= 10)");
  double T = t.back(), floor = 1e-14 * E.front();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < lo * T || t[k] > hi * T || E[k] <= floor) continue;
    double y = std::log(E[k]);
    sx += t[k];
    sy += y;
    sxx += t[k] * t[k];
    sxy += t[k] * y;
    ++m;
  }
  if (m < 2) throw std::runtime_error("decay fit: too few usable samples");
  double det = m * sxx - sx * sx;
  double slope = (m * sxy - sx * sy) / det;
  double icpt = (sy * sxx - sx * sxy) / det;
  double ssr = 0, sst = 0, ybar = sy / m;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < lo * T || t[k] > hi * T || E[k] <= floor) continue;
    double y = std::log(E[k]), p = slope * t[k] + icpt;
    ssr += (y - p) * (y - p);
    sst += (y - ybar) * (y - ybar);
  }
  // a flat log-energy trace has no variance to explain: report a perfect fit
  double rsq = sst > 1e-20 * (1.0 + ybar * ybar) ? 1.0 - ssr / sst : 1.0;
  return {-slope, -slope / 2, std::exp(icpt), rsq, lo * T, hi * T};
}

namespace {
// trapezoid integral of the sampled trace up to tmax
double trapz(const std::vector<double>& t, const std::vector<double>& f,
             double tmax) {
  double s = 0.0;
  for (std::size_t k = 1; k < t.size() && t[k - 1] < tmax; ++k) {
    double t1 = std::min(t[k], tmax);
    s += 0.5 * (t1 - t[k - 1]) * (f[k] + f[k - 1]);
  }
  return s;
}
}  // namespace

DatkoReport datko_check(const EnergyTrace& tr) {
  if (tr.t.size() < 3) throw std::invalid_argument("datko: trace too short");
  double T = tr.t.back(), E0 = tr.E.front();
  if (E0 <= 0.0) throw std::invalid_argument("datko: E(0) must be positive");
  double Ch = trapz(tr.t, tr.E, T / 2) / E0;
  double Cf = trapz(tr.t, tr.E, T) / E0;
  double rd = std::abs(Cf - Ch) / std::max(Cf, 1e-300);
  return {T, Ch, Cf, rd, rd < 0.05};
}

SpectrumReport spectrum(const Generator& A, int max_dim) {
  int n = A.dim();
  if (n > max_dim)
    throw std::runtime_error(
        "spectrum: reduced dimension " + std::to_string(n) +
        " exceeds the dense-solver capacity " + std::to_string(max_dim));
  Eigen::MatrixXd Gd(n, n);
  Eigen::MatrixXd Gdense = Eigen::MatrixXd(A.G());
  for (int j = 0; j < n; ++j) Gd.col(j) = A.msolve(Gdense.col(j));
  Eigen::EigenSolver<Eigen::MatrixXd> es(Gd);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectrum: dense eigensolver failed");
  Eigen::VectorXcd lam = es.eigenvalues();
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(lam(a)) < std::abs(lam(b)); });
  SpectrumReport rep;
  rep.eigs.reserve(n);
  for (int k : order) rep.eigs.push_back(lam(k));
  rep.n_zero = 0;
  for (int k = 0; k < n; ++k)
    if (std::abs(lam(k)) <= 1e-8) ++rep.n_zero;
  rep.max_re = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rep.eigs.size(); ++k)
    rep.max_re = std::max(rep.max_re, rep.eigs[k].real());
  rep.gap = -rep.max_re;
  Vec v0 = es.eigenvectors().col(order[0]).real();
  Vec n0 = A.null_vector();
  rep.alignment =
      std::abs(A.hdot(v0, n0)) / std::sqrt(A.hnorm2(v0) * A.hnorm2(n0));
  return rep;
}

ModeResult slowest_mode(const Generator& A, double sigma, int iters,
                        std::uint64_t seed, bool offnull) {
  SpMat S = A.G() - sigma * A.M();
  S.makeCompressed();
  Eigen::SparseLU<SpMat> lu;
  lu.compute(S);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("slowest mode: shifted factorization failed");
  Vec v = A.random_state(seed, false);
  if (offnull) v = A.project_offnull(v);
  v /= std::sqrt(A.hnorm2(v));
  for (int k = 0; k < iters; ++k) {
    v = lu.solve(A.M() * v);
    if (offnull) v = A.project_offnull(v);
    v /= std::sqrt(A.hnorm2(v));
  }
  double lambda = A.hdot(v, A.apply(v));
  return {v, lambda, iters};
}

MultiplierReport multiplier_report(const Generator& A, const Elliptic& el,
                                   const EvolveResult& run, double psiU) {
  const Grid& g = A.grid();
  const Coeffs& c = A.coeffs();
  const auto& S = run.states;
  const auto& tr = run.trace;
  if (S.size() != tr.t.size() || S.size() < 2)
    throw std::invalid_argument(
        "multiplier report: needs states recorded at every step");
  // the Neumann problems psi(p, w) are solvable iff Q = <p,1> + <w,1> = 0,
  // i.e. the data is off-null; Q is conserved, so checking t = 0 suffices
  double q0 = std::abs(A.Q(S.front()));
  if (q0 > 1e-8 * std::max(1.0, std::sqrt(A.hnorm2(S.front()))))
    throw std::runtime_error(
        "multiplier report: compatibility defect " + std::to_string(q0) +
        " (initial data is not off-null)");
  MultiplierReport rep{};
  double intV = 0.0, intTop = 0.0;
  for (std::size_t k = 0; k + 1 < S.size(); ++k) {
    double dt = tr.t[k + 1] - tr.t[k];
    Vec Xm = 0.5 * (S[k] + S[k + 1]);
    Fields f = A.fields(Xm);
    Fields f0 = A.fields(S[k]), f1 = A.fields(S[k + 1]);
    Vec u1dot = (f1.u1 - f0.u1) / dt, u2dot = (f1.u2 - f0.u2) / dt;

    rep.pressure_recovery += dt * wdot(g.Wo, f.p, f.p);
    rep.lower_order +=
        dt * (wdot(g.Wo, f.u1, f.u1) + wdot(g.Wo, f.u2, f.u2));
    Vec d2w = g.D2 * f.w;
    rep.plate_multiplier += dt * wdot(g.Wq, d2w, d2w);
    intV += dt * wdot(g.Wb, f.v, f.v);
    double stop = 0.0;
    for (int i = 0; i < g.nb; ++i) {
      double u2t = f.u2(g.top[i]);
      stop += g.Wb(i) * u2t * u2t;
    }
    intTop += dt * stop;

    // momentum residual paired against Grad psi, psi the Neumann lift of
    // (p, w); on the interface the multiplier uses the imposed flux w itself
    Vec psi = el.neumann({f.p, f.w});
    Vec gp1 = g.Dxp * psi, gp2 = g.Dyp * psi;
    for (int i = 0; i < g.nb; ++i) gp2(g.top[i]) = f.w(i);
    Vec e11 = g.Dxp * f.u1, e22 = g.Dyp * f.u2;
    Vec e12 = 0.5 * (g.Dyp * f.u1 + g.Dxp * f.u2);
    Vec s11 = (2 * c.nu + c.lambda) * e11 + c.lambda * e22;
    Vec s22 = c.lambda * e11 + (2 * c.nu + c.lambda) * e22;
    Vec s12 = (2 * c.nu) * g.interior.cwiseProduct(e12);
    Vec ds1 = g.Dxm * s11 + g.Dym * s12;
    Vec ds2 = g.Dxm * s12 + g.Dym * s22;
    Vec r1 = u1dot + g.Dxp * f.p - ds1 + c.eta * f.u1;
    Vec r2 = u2dot + g.Dyp * f.p - ds2 + c.eta * f.u2;
    // constrained rows carry no momentum equation
    for (int k2 : g.left) r1(k2) = 0.0;
    for (int k2 : g.right) r1(k2) = 0.0;
    for (int k2 : g.bot) r2(k2) = 0.0;
    rep.boundary_pairing +=
        dt * (wdot(g.Wo, r1, gp1) + wdot(g.Wo, r2, gp2));
  }
  rep.boundary_pairing = std::abs(rep.boundary_pairing);
  rep.flux_trace = intTop;
  rep.trace_identity = std::abs(intV - intTop);

  rep.int_energy = trapz(tr.t, tr.E, tr.t.back());
  rep.int_diss = tr.D.back();
  double E0 = tr.E.front(), ET = tr.E.back();
  double den = psiU * (ET + E0) + rep.int_diss;
  double cmin = den > 0 ? rep.int_energy / den : 0.0;
  rep.C0 = cmin;
  rep.Ceps = cmin;
  rep.slack = rep.C0 * psiU * (ET + E0) + rep.Ceps * rep.int_diss -
              rep.int_energy;
  if (rep.slack < 0 && rep.slack > -1e-12 * std::max(rep.int_energy, 1.0))
    rep.slack = 0.0;
  rep.Cstar = E0 > 0 ? rep.int_energy / E0 : 0.0;
  return rep;
}

}  // namespace fsistab
