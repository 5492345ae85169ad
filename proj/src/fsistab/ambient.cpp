#include "fsistab/ambient.hpp"

#include "fsistab/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace fsistab {

AmbientPreset ambient_preset_from_string(const std::string& s) {
  if (s == "zero") return AmbientPreset::Zero;
  if (s == "solenoidal-vortex") return AmbientPreset::SolenoidalVortex;
  if (s == "small-div") return AmbientPreset::SmallDiv;
  throw std::invalid_argument("unknown ambient preset: " + s);
}

AmbientField build_ambient(const Grid& g, AmbientPreset preset, double amp) {
  if (amp < 0.0) throw std::invalid_argument("ambient amplitude must be >= 0");
  const double pi = 3.14159265358979323846;
  double L1 = g.geo.L1, L2 = g.geo.L2;
  Vec U1 = Vec::Zero(g.N), U2 = Vec::Zero(g.N);
  switch (preset) {
    case AmbientPreset::Zero:
      break;
    case AmbientPreset::SolenoidalVortex:
      // analytic curl of phi = sin^2(pi x/L1) sin^2(pi y/L2):
      // U = amp * (d phi/dy, -d phi/dx); div-free, U.n = 0 on the boundary.
      for (int k = 0; k < g.N; ++k) {
        double sx = std::sin(pi * g.x(k) / L1);
        double sy = std::sin(pi * g.y(k) / L2);
        U1(k) = amp * sx * sx * (pi / L2) * std::sin(2.0 * pi * g.y(k) / L2);
        U2(k) = -amp * (pi / L1) * std::sin(2.0 * pi * g.x(k) / L1) * sy * sy;
      }
      break;
    case AmbientPreset::SmallDiv:
      // tangential shear with nonzero divergence, U.n = 0 on the boundary
      for (int k = 0; k < g.N; ++k)
        U1(k) = amp * g.x(k) * (L1 - g.x(k)) * g.y(k) * (g.y(k) + L2);
      break;
  }
  Vec dx1 = g.Dxp * U1, dy1 = g.Dyp * U1, dx2 = g.Dxp * U2, dy2 = g.Dyp * U2;
  double h1 = std::sqrt(wdot(g.Wo, U1, U1) + wdot(g.Wo, U2, U2) +
                        wdot(g.Wo, dx1, dx1) + wdot(g.Wo, dy1, dy1) +
                        wdot(g.Wo, dx2, dx2) + wdot(g.Wo, dy2, dy2));
  double sup = std::max(U1.cwiseAbs().maxCoeff(), U2.cwiseAbs().maxCoeff());
  return {preset, amp, U1, U2, 1.0 + h1 + sup};
}

CcReport check_cc(const Grid& g, const AmbientField& U) {
  Vec wA = beam_biharmonic_solve(g, Vec::Ones(g.nb));
  SpMat Db = sbp_central(g.geo.nx, g.geo.hx);
  Vec dwA = Db * wA;
  double d = 0.0;
  for (int i = 0; i < g.nb; ++i)
    d = std::max(d, std::abs(U.U1(g.top[i]) * dwA(i)));
  return {d, d <= 1e-8 * U.psiU};
}

}  // namespace fsistab
