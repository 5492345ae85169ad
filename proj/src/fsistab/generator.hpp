#pragma once
// The semigroup generator as a reduced Galerkin matrix pencil (M, G):
// trial/test space E eliminates the essential constraints (u.n on the rigid
// walls, the interface tie u2|top = v + kappa U1 dw/dx, clamped beam ends)
// and restricts the pressure to the admissible subspace; then
//   M = E^T W_H E  (SPD mass in the energy inner product),
//   G = E^T W_H L E  (reduced generator),
// where L is the formal block operator and W_H = blkdiag(Wo,Wo,Wo,Kb,Wb).
// The quadratic identity <G s, s> = -Diss(s) + Sdiv(s) + Skappa(s) holds to
// rounding by the SBP dualities, for any such E.

#include "fsistab/ambient.hpp"
#include "fsistab/grid.hpp"

#include <Eigen/SparseLU>
#include <cstdint>
#include <memory>

namespace fsistab {

struct Coeffs {
  double nu = 1.0;
  double lambda = 1.0;
  double eta = 1.0;
};

struct Fields {
  Vec p, u1, u2, w, v;
};

class Generator {
public:
  Generator(const Grid& g, const AmbientField& U, int kappa, Coeffs c = {});

  const Grid& grid() const { return *g_; }
  const Coeffs& coeffs() const { return c_; }
  int kappa() const { return kappa_; }
  int dim() const { return nR_; }
  int npdof() const { return npdof_; }

  const SpMat& M() const { return M_; }
  const SpMat& G() const { return G_; }

  // expand reduced coordinates to nodal fields
  Fields fields(const Vec& X) const;
  // project nodal fields onto the reduced space (W_H-orthogonal)
  Vec reduce(const Fields& f) const;

  Vec apply(const Vec& X) const;  // M^{-1} G X
  Vec msolve(const Vec& b) const;

  double hdot(const Vec& X, const Vec& Y) const;
  double hnorm2(const Vec& X) const { return hdot(X, X); }
  double energy(const Vec& X) const { return 0.5 * hnorm2(X); }

  // energy-rate pieces: d/dt E = -diss + sdiv_rate + skappa_rate
  double diss(const Vec& X) const;
  double sdiv_rate(const Vec& X) const;
  double skappa_rate(const Vec& X, bool include_interface_term = true) const;

  // the conserved linear functional <p,1>_Wo + <w,1>_Wb
  double Q(const Vec& X) const;

  Vec null_vector() const;             // [1, 0, Ainv(1), 0] in reduced coords
  double null_residual() const;        // ||A n0||_H / ||n0||_H
  Vec project_offnull(const Vec& X) const;

  Vec random_state(std::uint64_t seed, bool normalize = true) const;
  Vec smooth_state() const;

  const Vec& U1top() const { return U1top_; }
  const SpMat& Db() const { return Db_; }

private:
  const Grid* g_;
  Coeffs c_;
  int kappa_;
  Vec U1_, U2_, divUd_, U1top_;
  SpMat Db_;

  int nR_, npdof_;
  int off_p_, off_u1_, off_u2_, off_w_, off_v_;
  std::vector<int> free_u1_, free_u2_;
  SpMat Ep_;  // pressure basis (N x npdof)
  SpMat E_;   // full prolongation (3N+2nb x nR)
  SpMat M_, G_;
  Eigen::SparseLU<SpMat> Mlu_;
  std::unique_ptr<Eigen::SparseLU<SpMat>> Eplu_;  // Ep^T Wo Ep

  Vec p_coords(const Vec& pfull) const;
};

}  // namespace fsistab
