#pragma once
// Post-processing: exponential decay fits, the Datko integral criterion,
// dense spectra of the reduced generator, slow-mode extraction by inverse
// iteration, and the multiplier ledger (pressure recovery, momentum-residual
// pairing, trace identity, observability constants).

#include "fsistab/elliptic.hpp"
#include "fsistab/evolve.hpp"
#include "fsistab/generator.hpp"

#include <complex>
#include <vector>

namespace fsistab {

struct DecayFit {
  double energy_rate;  // omega in E(t) ~ amplitude * exp(-omega t)
  double state_rate;   // = energy_rate / 2 (rate of ||X||_H)
  double amplitude;
  double rsq;
  double t_lo, t_hi;  // fit window actually used
};

// Least-squares fit of log E over the window [lo*T, hi*T], ignoring samples
// below 1e-14 * E(0).
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& E,
                   double lo = 0.1, double hi = 0.9);

struct DatkoReport {
  double T;
  double Cstar_half;  // int_0^{T/2} E dt / E(0)
  double Cstar;       // int_0^{T}   E dt / E(0)
  double reldiff;
  bool pass;  // reldiff < 5%: the Datko integral has saturated
};

DatkoReport datko_check(const EnergyTrace& tr);

struct SpectrumReport {
  std::vector<std::complex<double>> eigs;  // sorted by |lambda| ascending
  int n_zero;        // count of |lambda| <= 1e-8
  double gap;        // -max Re over the nonzero eigenvalues
  double max_re;     // max Re over the nonzero eigenvalues (= -gap)
  double alignment;  // |<v_0, n0>_H| / (||v_0|| ||n0||) for the zero mode
};

// Dense eigendecomposition of M^{-1} G.  Dimensions above `max_dim` raise
// a capacity error rather than silently grinding.
SpectrumReport spectrum(const Generator& A, int max_dim = 6000);

struct ModeResult {
  Vec v;          // M-normalized real eigenvector estimate
  double lambda;  // Rayleigh quotient <v, Av>_H
  int iters;
};

// Inverse iteration on (G - sigma M); seeds the start vector, optionally
// deflates the null direction each sweep.
ModeResult slowest_mode(const Generator& A, double sigma, int iters = 200,
                        std::uint64_t seed = 7, bool offnull = true);

struct MultiplierReport {
  double pressure_recovery;  // int ||p||^2_Wo dt
  double flux_trace;         // int ||u2|top||^2_Wb dt
  double lower_order;        // int (||u1||^2 + ||u2||^2)_Wo dt
  double plate_multiplier;   // int ||D2 w||^2_Wq dt
  double trace_identity;     // | int ||v||^2 - int ||u2|top||^2 |
  double boundary_pairing;   // momentum-residual pairing against Grad psi(p,w)
  double int_energy;         // int E dt
  double int_diss;           // int Diss dt
  double C0, Ceps, slack;    // int E <= C0 Psi (E(T)+E(0)) + Ceps int Diss
  double Cstar;              // int E dt / E(0)
};

// Evaluates the multiplier ledger on a recorded run (needs states at every
// step: record_stride 1, record_states true).
MultiplierReport multiplier_report(const Generator& A, const Elliptic& el,
                                   const EvolveResult& run, double psiU);

}  // namespace fsistab
