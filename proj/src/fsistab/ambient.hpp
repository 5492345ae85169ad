#pragma once
// Ambient (background) flow field presets and the interface compatibility
// check U . Grad(Ainv 1) = 0 on Omega required for the kappa-coupled
// null-space identity.

#include "fsistab/grid.hpp"

#include <string>

namespace fsistab {

enum class AmbientPreset { Zero, SolenoidalVortex, SmallDiv };

AmbientPreset ambient_preset_from_string(const std::string& s);

struct AmbientField {
  AmbientPreset preset;
  double amplitude;
  Vec U1, U2;   // nodal velocity components
  double psiU;  // 1 + discrete H1 norm + sup norm (smallness budget)
};

AmbientField build_ambient(const Grid& g, AmbientPreset preset, double amplitude);

struct CcReport {
  double max_defect;
  bool pass;
};

// max over interface nodes of |U1(x,0) * d/dx (Ainv 1)(x)|; pass iff
// <= 1e-8 * psiU.
CcReport check_cc(const Grid& g, const AmbientField& U);

}  // namespace fsistab
