#pragma once
// Geometry and discrete calculus on a uniform collocated grid.
//
// Flow domain O = [0,L1] x [-L2,0], nodes x_i = i*hx, y_j = -L2 + j*hy,
// node index = i + (nx+1)*j (x fastest, j = ny is the top/interface row).
// The elastic interface Omega is the top edge, carrying a clamped
// Euler-Bernoulli beam on the nx+1 nodes.
//
// First derivatives come as a dual pair of upwind-biased SBP operators
// (Dp, Dm) with diagonal norm H = h*diag(1/4, 5/4, 1, ..., 1, 5/4, 1/4)
// satisfying H*Dp + (H*Dm)^T = B exactly, where B = diag(-1,0,...,0,1).
// Gradient / strain / trace derivatives use Dp; divergence and the outer
// derivative of the stress divergence use Dm, so every discrete Green
// identity holds to rounding.  A central collocated pair would leave
// checkerboard pressure fields invisible to the divergence; the upwind
// pair has a trivial kernel (constants only).

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <stdexcept>
#include <vector>

namespace fsistab {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

struct SbpPair {
  SpMat Dp, Dm;  // dual upwind pair, (n+1) x (n+1)
  Vec H;         // diagonal norm (quadrature) weights
};

// Dual upwind SBP pair on n+1 nodes with spacing h.
SbpPair sbp_pair(int n, double h);

// Classic central SBP(2,1) first derivative (used for the beam x-derivative).
SpMat sbp_central(int n, double h);

struct Geometry {
  double L1, L2;
  int nx, ny;
  double hx, hy;
  Geometry(double L1_, double L2_, int nx_, int ny_);
};

class Grid {
public:
  Geometry geo;
  int N;   // (nx+1)*(ny+1) flow nodes
  int nb;  // nx+1 beam nodes

  SpMat Dxp, Dxm, Dyp, Dym;  // 2-D derivative operators (kron-lifted)
  Vec Hx, Hy;                // 1-D norms
  Vec Wo;                    // 2-D quadrature (kron(Hy,Hx))
  Vec Wb;                    // interface quadrature (= Hx)
  Vec Wq;                    // beam stiffness quadrature (trapezoid)
  SpMat D2;                  // beam second difference, clamped ghost closure
  SpMat Kb;                  // D2^T * diag(Wq) * D2 (beam stiffness)

  Vec x, y;                       // node coordinates
  std::vector<int> left, right, bot, top;  // boundary node index sets
  Vec interior;                   // 1 at interior nodes, 0 on the boundary

  explicit Grid(const Geometry& g);

  // Boundary quadrature of f*g over the right-minus-left (x) or
  // top-minus-bottom (y) edges, matching the SBP boundary matrix B.
  double flux_x(const Vec& f, const Vec& g) const;
  double flux_y(const Vec& f, const Vec& g) const;
};

inline double wdot(const Vec& W, const Vec& a, const Vec& b) {
  return (W.array() * a.array() * b.array()).sum();
}

}  // namespace fsistab
