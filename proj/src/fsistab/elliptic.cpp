#include "fsistab/elliptic.hpp"

namespace fsistab {

Vec beam_biharmonic_solve(const Grid& g, const Vec& rhs) {
  int nb = g.nb, ni = nb - 2;
  // interior block of Kb
  Eigen::MatrixXd Kd = Eigen::MatrixXd(g.Kb).block(1, 1, ni, ni);
  SpMat Ki = Kd.sparseView();
  Ki.makeCompressed();
  Eigen::SparseLU<SpMat> lu;
  lu.compute(Ki);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("beam solve: stiffness factorization failed");
  Vec b(ni);
  for (int k = 0; k < ni; ++k) b(k) = g.Wq(k + 1) * rhs(k + 1);
  Vec wi = lu.solve(b);
  Vec w = Vec::Zero(nb);
  w.segment(1, ni) = wi;
  return w;
}

double neumann_compat(const Grid& g, const NeumannData& d) {
  return wdot(g.Wo, d.f, Vec::Ones(g.N)) + wdot(g.Wb, d.g, Vec::Ones(g.nb));
}

Elliptic::Elliptic(const Grid& g) : g_(&g) {
  SpMat K = SpMat(g.Dxp.transpose()) * g.Wo.asDiagonal() * g.Dxp +
            SpMat(g.Dyp.transpose()) * g.Wo.asDiagonal() * g.Dyp;
  // augment with the zero-mean constraint (Lagrange multiplier)
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < K.outerSize(); ++k)
    for (SpMat::InnerIterator it(K, k); it; ++it)
      t.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < g.N; ++k) {
    t.emplace_back(k, g.N, g.Wo(k));
    t.emplace_back(g.N, k, g.Wo(k));
  }
  SpMat Ka(g.N + 1, g.N + 1);
  Ka.setFromTriplets(t.begin(), t.end());
  Ka.makeCompressed();
  lu_.compute(Ka);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("neumann: factorization failed");
}

Vec Elliptic::neumann(const NeumannData& d) const {
  const Grid& g = *g_;
  Vec b = Vec::Zero(g.N + 1);
  b.head(g.N) = g.Wo.cwiseProduct(d.f);
  for (int i = 0; i < g.nb; ++i) b(g.top[i]) += g.Wb(i) * d.g(i);
  Vec s = lu_.solve(b);
  return s.head(g.N);
}

LerayDecomposition Elliptic::leray(const Vec& u1, const Vec& u2) const {
  const Grid& g = *g_;
  Vec r = SpMat(g.Dxp.transpose()) * g.Wo.cwiseProduct(u1) +
          SpMat(g.Dyp.transpose()) * g.Wo.cwiseProduct(u2);
  Vec b = Vec::Zero(g.N + 1);
  b.head(g.N) = r;
  Vec q = lu_.solve(b).head(g.N);
  return {u1 - g.Dxp * q, u2 - g.Dyp * q, q};
}

}  // namespace fsistab
