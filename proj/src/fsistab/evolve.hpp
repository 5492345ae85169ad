#pragma once
// Crank-Nicolson time stepping for M dX/dt = G X, with the discrete energy
// audit E(t) + D(t) = E(0) + Sdiv(t) + Skappa(t) accumulated from midpoint
// quadrature (exact for CN up to rounding).

#include "fsistab/generator.hpp"

#include <Eigen/SparseLU>
#include <optional>
#include <vector>

namespace fsistab {

class CnStepper {
public:
  CnStepper(const Generator& A, double dt);

  double dt() const { return dt_; }
  const Generator& gen() const { return *A_; }

  Vec step(const Vec& X) const;
  // relative residual ||(M - dt/2 G) X1 - (M + dt/2 G) X0|| / ||M X0||
  double step_residual(const Vec& X0, const Vec& X1) const;

private:
  const Generator* A_;
  double dt_;
  SpMat Rhs_;
  Eigen::SparseLU<SpMat> lu_;
};

struct EnergyTrace {
  std::vector<double> t, E;
  std::vector<double> D, Sdiv, Skappa;  // cumulative integrals
  std::vector<double> Q;
  std::vector<double> balance_residual;  // |E + D - E0 - Sdiv - Skappa|
  double max_balance_residual = 0.0;
};

struct EvolveResult {
  EnergyTrace trace;
  Vec final_state;
  std::vector<Vec> states;  // recorded every `record_stride` steps (if asked)
};

EvolveResult evolve(const Generator& A, const Vec& X0, double dt, double T,
                    int record_stride = 1, bool record_states = false);

}  // namespace fsistab
