#include "fsistab/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace fsistab {

namespace {

// splitmix64: fixed, platform-independent stream for reproducible states
struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // uniform on [-1, 1)
    return 2.0 * ((next() >> 11) * 0x1.0p-53) - 1.0;
  }
};

// basis of the admissible 1-D pressure factor: the Hx-orthogonal complement
// in R^m of phi = (1, -1/5, 0, ..., 0), the extra null function of the
// boundary-punctured Dp rows.  Columns: rho = (1,1,0,...), e_2, ..., e_{m-1}.
SpMat x1_basis(int m) {
  std::vector<Eigen::Triplet<double>> t;
  t.emplace_back(0, 0, 1.0);
  t.emplace_back(1, 0, 1.0);
  for (int r = 2; r < m; ++r) t.emplace_back(r, r - 1, 1.0);
  SpMat B(m, m - 1);
  B.setFromTriplets(t.begin(), t.end());
  return B;
}

SpMat spkron(const SpMat& A, const SpMat& B) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(A.nonZeros()) * B.nonZeros());
  for (int ka = 0; ka < A.outerSize(); ++ka)
    for (SpMat::InnerIterator ia(A, ka); ia; ++ia)
      for (int kb = 0; kb < B.outerSize(); ++kb)
        for (SpMat::InnerIterator ib(B, kb); ib; ++ib)
          t.emplace_back(ia.row() * B.rows() + ib.row(),
                         ia.col() * B.cols() + ib.col(),
                         ia.value() * ib.value());
  SpMat K(A.rows() * B.rows(), A.cols() * B.cols());
  K.setFromTriplets(t.begin(), t.end());
  return K;
}

void append_block(std::vector<Eigen::Triplet<double>>& t, const SpMat& A,
                  int r0, int c0, double scale = 1.0) {
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it)
      t.emplace_back(r0 + it.row(), c0 + it.col(), scale * it.value());
}

}  // namespace

Generator::Generator(const Grid& g, const AmbientField& U, int kappa, Coeffs c)
    : g_(&g), c_(c), kappa_(kappa), U1_(U.U1), U2_(U.U2) {
  if (kappa != 0 && kappa != 1)
    throw std::invalid_argument("kappa must be 0 or 1");
  if (c.nu <= 0.0 || c.lambda < 0.0 || c.eta <= 0.0)
    throw std::invalid_argument("require nu > 0, lambda >= 0, eta > 0");
  const int N = g.N, nb = g.nb, nx = g.geo.nx, ny = g.geo.ny;
  const double nu = c.nu, lam = c.lambda, eta = c.eta;
  const SpMat &Dxp = g.Dxp, &Dxm = g.Dxm, &Dyp = g.Dyp, &Dym = g.Dym;

  divUd_ = Dxm * U1_ + Dym * U2_;
  U1top_ = Vec(nb);
  for (int i = 0; i < nb; ++i) U1top_(i) = U1_(g.top[i]);
  Db_ = sbp_central(nx, g.geo.hx);

  auto diag = [](const Vec& d) {
    SpMat D(d.size(), d.size());
    D.reserve(Eigen::VectorXi::Constant(d.size(), 1));
    for (int k = 0; k < d.size(); ++k) D.insert(k, k) = d(k);
    D.makeCompressed();
    return D;
  };
  SpMat dU1 = diag(U1_), dU2 = diag(U2_), Z = diag(g.interior);
  // skew-symmetric advection split; the divUd correction makes the
  // Sdiv-rate bookkeeping exact
  SpMat Adv = 0.5 * (SpMat(dU1 * Dxp) + SpMat(dU2 * Dyp) + SpMat(Dxm * dU1) +
                     SpMat(Dym * dU2) - diag(divUd_));

  // stress from the Dp-strain; outer divergence from Dm; the shear row is
  // masked to the interior (no tangential stress flux through the boundary)
  SpMat S11_u1 = (2 * nu + lam) * Dxp, S11_u2 = lam * Dyp;
  SpMat S22_u1 = lam * Dxp, S22_u2 = (2 * nu + lam) * Dyp;
  SpMat S12_u1 = Z * SpMat(nu * Dyp), S12_u2 = Z * SpMat(nu * Dxp);
  SpMat SD1_u1 = Dxm * S11_u1 + Dym * S12_u1;
  SpMat SD1_u2 = Dxm * S11_u2 + Dym * S12_u2;
  SpMat SD2_u1 = Dxm * S12_u1 + Dym * S22_u1;
  SpMat SD2_u2 = Dxm * S12_u2 + Dym * S22_u2;

  SpMat I(N, N);
  I.setIdentity();
  SpMat Ttop(nb, N);
  Ttop.reserve(Eigen::VectorXi::Constant(N, 1));
  for (int i = 0; i < nb; ++i) Ttop.insert(i, g.top[i]) = 1.0;
  Ttop.makeCompressed();
  // plate forcing F = ((2nu+lam) dy u2 + lam dx u1 - p)|_top
  SpMat F_u1 = Ttop * SpMat(lam * Dxp);
  SpMat F_u2 = Ttop * SpMat((2 * nu + lam) * Dyp);
  Vec Wbi = g.Wb.cwiseInverse();
  SpMat D4 = diag(Wbi) * g.Kb;

  // formal block operator L on [p, u1, u2, w, v]
  std::vector<Eigen::Triplet<double>> lt;
  append_block(lt, Adv, 0, 0, -1.0);
  append_block(lt, Dxm, 0, N, -1.0);
  append_block(lt, Dym, 0, 2 * N, -1.0);
  append_block(lt, Dxp, N, 0, -1.0);
  append_block(lt, SpMat(SD1_u1 - eta * I - Adv), N, N);
  append_block(lt, SD1_u2, N, 2 * N);
  append_block(lt, Dyp, 2 * N, 0, -1.0);
  append_block(lt, SD2_u1, 2 * N, N);
  append_block(lt, SpMat(SD2_u2 - eta * I - Adv), 2 * N, 2 * N);
  for (int i = 0; i < nb; ++i) lt.emplace_back(3 * N + i, 3 * N + nb + i, 1.0);
  append_block(lt, Ttop, 3 * N + nb, 0);          // -(-p) = +p
  append_block(lt, F_u1, 3 * N + nb, N, -1.0);
  append_block(lt, F_u2, 3 * N + nb, 2 * N, -1.0);
  append_block(lt, D4, 3 * N + nb, 3 * N, -1.0);
  SpMat L(3 * N + 2 * nb, 3 * N + 2 * nb);
  L.setFromTriplets(lt.begin(), lt.end());

  // reduced space: admissible pressure coords, free velocity nodes,
  // interior beam deflection/velocity
  free_u1_.clear();
  free_u2_.clear();
  for (int k = 0; k < N; ++k) {
    int i = k % (nx + 1), j = k / (nx + 1);
    if (i != 0 && i != nx) free_u1_.push_back(k);
    if (j != 0 && j != ny) free_u2_.push_back(k);
  }
  Ep_ = spkron(x1_basis(ny + 1), x1_basis(nx + 1));
  npdof_ = static_cast<int>(Ep_.cols());
  off_p_ = 0;
  off_u1_ = npdof_;
  off_u2_ = off_u1_ + static_cast<int>(free_u1_.size());
  off_w_ = off_u2_ + static_cast<int>(free_u2_.size());
  off_v_ = off_w_ + (nb - 2);
  nR_ = off_v_ + (nb - 2);

  std::vector<Eigen::Triplet<double>> et;
  append_block(et, Ep_, 0, off_p_);
  for (std::size_t a = 0; a < free_u1_.size(); ++a)
    et.emplace_back(N + free_u1_[a], off_u1_ + static_cast<int>(a), 1.0);
  for (std::size_t a = 0; a < free_u2_.size(); ++a)
    et.emplace_back(2 * N + free_u2_[a], off_u2_ + static_cast<int>(a), 1.0);
  if (kappa) {
    // interface tie u2|top = v + kappa U1 dw/dx (interior w columns only)
    SpMat Tw = diag(U1top_) * Db_;
    for (int k = 0; k < Tw.outerSize(); ++k)
      for (SpMat::InnerIterator it(Tw, k); it; ++it)
        if (it.col() >= 1 && it.col() <= nb - 2)
          et.emplace_back(2 * N + g.top[it.row()],
                          off_w_ + static_cast<int>(it.col()) - 1,
                          kappa * it.value());
  }
  for (int a = 0; a < nb - 2; ++a) {
    et.emplace_back(2 * N + g.top[a + 1], off_v_ + a, 1.0);
    et.emplace_back(3 * N + (a + 1), off_w_ + a, 1.0);
    et.emplace_back(3 * N + nb + (a + 1), off_v_ + a, 1.0);
  }
  E_ = SpMat(3 * N + 2 * nb, nR_);
  E_.setFromTriplets(et.begin(), et.end());
  E_.makeCompressed();

  // W_H = blkdiag(Wo, Wo, Wo, Kb, Wb)
  std::vector<Eigen::Triplet<double>> wt;
  for (int k = 0; k < N; ++k)
    for (int b = 0; b < 3; ++b) wt.emplace_back(b * N + k, b * N + k, g.Wo(k));
  append_block(wt, g.Kb, 3 * N, 3 * N);
  for (int k = 0; k < nb; ++k)
    wt.emplace_back(3 * N + nb + k, 3 * N + nb + k, g.Wb(k));
  SpMat WH(3 * N + 2 * nb, 3 * N + 2 * nb);
  WH.setFromTriplets(wt.begin(), wt.end());

  SpMat Et = E_.transpose();
  M_ = Et * WH * E_;
  G_ = Et * WH * SpMat(L * E_);
  M_.makeCompressed();
  G_.makeCompressed();
  Mlu_.compute(M_);
  if (Mlu_.info() != Eigen::Success)
    throw std::runtime_error("generator: mass factorization failed");
  SpMat Np = SpMat(Ep_.transpose()) * diag(g.Wo) * Ep_;
  Np.makeCompressed();
  Eplu_ = std::make_unique<Eigen::SparseLU<SpMat>>();
  Eplu_->compute(Np);
  if (Eplu_->info() != Eigen::Success)
    throw std::runtime_error("generator: pressure basis factorization failed");
}

Vec Generator::p_coords(const Vec& pfull) const {
  return Eplu_->solve(SpMat(Ep_.transpose()) * g_->Wo.cwiseProduct(pfull));
}

Fields Generator::fields(const Vec& X) const {
  const int N = g_->N, nb = g_->nb;
  Vec Y = E_ * X;
  return {Y.segment(0, N), Y.segment(N, N), Y.segment(2 * N, N),
          Y.segment(3 * N, nb), Y.segment(3 * N + nb, nb)};
}

Vec Generator::reduce(const Fields& f) const {
  const int N = g_->N, nb = g_->nb;
  Vec X = Vec::Zero(nR_);
  X.segment(off_p_, npdof_) = p_coords(f.p);
  for (std::size_t a = 0; a < free_u1_.size(); ++a)
    X(off_u1_ + static_cast<int>(a)) = f.u1(free_u1_[a]);
  for (std::size_t a = 0; a < free_u2_.size(); ++a)
    X(off_u2_ + static_cast<int>(a)) = f.u2(free_u2_[a]);
  X.segment(off_w_, nb - 2) = f.w.segment(1, nb - 2);
  X.segment(off_v_, nb - 2) = f.v.segment(1, nb - 2);
  return X;
}

Vec Generator::apply(const Vec& X) const { return Mlu_.solve(G_ * X); }
Vec Generator::msolve(const Vec& b) const { return Mlu_.solve(b); }

double Generator::hdot(const Vec& X, const Vec& Y) const {
  return X.dot(M_ * Y);
}

double Generator::diss(const Vec& X) const {
  const Grid& g = *g_;
  Fields f = fields(X);
  Vec e11 = g.Dxp * f.u1, e22 = g.Dyp * f.u2;
  Vec e12 = 0.5 * (g.Dyp * f.u1 + g.Dxp * f.u2);
  Vec div = e11 + e22;
  Vec Wzi = g.Wo.cwiseProduct(g.interior);
  return 2 * c_.nu * (wdot(g.Wo, e11, e11) + wdot(g.Wo, e22, e22) +
                      2 * wdot(Wzi, e12, e12)) +
         c_.lambda * wdot(g.Wo, div, div) +
         c_.eta * (wdot(g.Wo, f.u1, f.u1) + wdot(g.Wo, f.u2, f.u2));
}

double Generator::sdiv_rate(const Vec& X) const {
  const Grid& g = *g_;
  Fields f = fields(X);
  Vec s = f.p.cwiseProduct(f.p) + f.u1.cwiseProduct(f.u1) +
          f.u2.cwiseProduct(f.u2);
  return 0.5 * wdot(g.Wo, divUd_, s);
}

double Generator::skappa_rate(const Vec& X, bool include_interface_term) const {
  if (!kappa_ || !include_interface_term) return 0.0;
  const Grid& g = *g_;
  Fields f = fields(X);
  Vec Fz = (2 * c_.nu + c_.lambda) * (g.Dyp * f.u2) +
           c_.lambda * (g.Dxp * f.u1) - f.p;
  Vec dw = Db_ * f.w;
  double s = 0.0;
  for (int i = 0; i < g.nb; ++i)
    s += g.Wb(i) * Fz(g.top[i]) * kappa_ * U1top_(i) * dw(i);
  return s;
}

double Generator::Q(const Vec& X) const {
  const Grid& g = *g_;
  Fields f = fields(X);
  return wdot(g.Wo, f.p, Vec::Ones(g.N)) + wdot(g.Wb, f.w, Vec::Ones(g.nb));
}

Vec Generator::null_vector() const {
  const Grid& g = *g_;
  Vec X = Vec::Zero(nR_);
  X.segment(off_p_, npdof_).setOnes();  // every basis column carries p = 1
  // beam statics of the generator itself: Kb w = Wb * p|top
  int ni = g.nb - 2;
  Eigen::MatrixXd Kd = Eigen::MatrixXd(g.Kb).block(1, 1, ni, ni);
  SpMat Ki = Kd.sparseView();
  Ki.makeCompressed();
  Eigen::SparseLU<SpMat> lu;
  lu.compute(Ki);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("null vector: beam factorization failed");
  Vec b(ni);
  for (int k = 0; k < ni; ++k) b(k) = g.Wb(k + 1);
  X.segment(off_w_, ni) = lu.solve(b);
  return X;
}

double Generator::null_residual() const {
  Vec n0 = null_vector();
  return std::sqrt(hnorm2(apply(n0)) / hnorm2(n0));
}

Vec Generator::project_offnull(const Vec& X) const {
  Vec n0 = null_vector();
  return X - (hdot(X, n0) / hnorm2(n0)) * n0;
}

Vec Generator::random_state(std::uint64_t seed, bool normalize) const {
  SplitMix64 rng(seed);
  Vec X(nR_);
  for (int k = 0; k < nR_; ++k) X(k) = rng.uniform();
  if (normalize) X /= std::sqrt(hnorm2(X));
  return X;
}

Vec Generator::smooth_state() const {
  const Grid& g = *g_;
  const double pi = 3.14159265358979323846;
  Vec X = Vec::Zero(nR_);
  Vec pf(g.N), u1f(g.N), u2f(g.N);
  for (int k = 0; k < g.N; ++k) {
    double sx = pi * g.x(k) / g.geo.L1, sy = pi * (g.y(k) + g.geo.L2) / g.geo.L2;
    pf(k) = std::cos(sx) * std::cos(pi * g.y(k) / g.geo.L2);
    u1f(k) = std::sin(sx) * std::sin(sy);
    u2f(k) = std::sin(2 * sx) * std::sin(sy);
  }
  X.segment(off_p_, npdof_) = p_coords(pf);
  for (std::size_t a = 0; a < free_u1_.size(); ++a)
    X(off_u1_ + static_cast<int>(a)) = u1f(free_u1_[a]);
  for (std::size_t a = 0; a < free_u2_.size(); ++a)
    X(off_u2_ + static_cast<int>(a)) = u2f(free_u2_[a]);
  for (int a = 0; a < g.nb - 2; ++a) {
    double xb = static_cast<double>(a + 1) / (g.nb - 1);
    double s = xb * xb * (1 - xb) * (1 - xb);
    X(off_w_ + a) = 16 * s;
    X(off_v_ + a) = 16 * s * (1 - 2 * xb);
  }
  return X;
}

}  // namespace fsistab
