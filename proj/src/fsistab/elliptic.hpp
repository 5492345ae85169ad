#pragma once
// Elliptic building blocks: clamped beam biharmonic inverse, the Neumann
// auxiliary problem -Laplace(psi) = f with prescribed interface flux, and
// the Leray (Helmholtz) projector built from it.

#include "fsistab/grid.hpp"

#include <Eigen/SparseLU>
#include <memory>

namespace fsistab {

// Solves Kb w = Wq * rhs on the interior beam nodes (clamped ends).
// This is the weak form of w'''' = rhs; second-order accurate.
Vec beam_biharmonic_solve(const Grid& g, const Vec& rhs);

struct NeumannData {
  Vec f;  // interior source on O
  Vec g;  // flux data on the interface Omega (top edge)
};

// Compatibility defect <f,1>_Wo + <g,1>_Wb (must vanish for solvability).
double neumann_compat(const Grid& g, const NeumannData& d);

struct LerayDecomposition {
  Vec Pu1, Pu2;  // solenoidal part
  Vec q;         // zero-mean potential with u - Pu = Grad q
};

class Elliptic {
public:
  explicit Elliptic(const Grid& g);

  // Zero-mean solution psi of the weak Neumann problem
  //   <Grad psi, Grad phi>_Wo = <f, phi>_Wo + <g, phi>_Wb(top)
  // (flux zero on the rigid walls, g on the interface).
  Vec neumann(const NeumannData& d) const;

  LerayDecomposition leray(const Vec& u1, const Vec& u2) const;

  const Grid& grid() const { return *g_; }

private:
  const Grid* g_;
  Eigen::SparseLU<SpMat> lu_;  // stiffness with zero-mean Lagrange augmentation
};

}  // namespace fsistab
