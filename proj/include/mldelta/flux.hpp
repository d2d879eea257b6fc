#pragma once

#include <complex>

#include "mldelta/bound.hpp"
#include "mldelta/deformation.hpp"
#include "mldelta/quasiposition.hpp"

namespace mldelta {

struct FluxReport {
  double j_incident = 0.0;
  double j_transmitted = 0.0;
  double j_reflected = 0.0;
  double conservation_defect = 0.0;  // |j0 - jt - jr| / j0
};

/// Plane-wave probability flux under deformed dispersion T(p) = g^2(p)/(2m):
/// j = |amplitude|^2 * d/dp[g^2/(2m)] = |amplitude|^2 * g(p) f(g(p)) / m,
/// with the derivative taken by the analytic chain rule.
double plane_wave_flux(const DeformationSpec& d, const PotentialSpec& pot, double p,
                       std::complex<double> amplitude);

/// Flux correction "inside" the point interaction:
/// j'(x) = V0 * int_{grid start}^{x} tilde_delta(x') * 2 Re[psi*(x') psi(0)] dx'.
/// The grid must contain 0 and extend well below it (tilde_delta decays as 1/x).
double point_interaction_flux_correction(const DeformationSpec& d,
                                         const PotentialSpec& pot,
                                         const SampledWavefunction& psi, double x);

/// j0 at p0 = g^{-1}(k) with unit amplitude, split into T*j0 and R*j0 by the
/// scattering coefficients; the defect is |1 - T - R| up to rounding.
FluxReport flux_conservation_check(const DeformationSpec& d, const PotentialSpec& pot,
                                   double k);

}  // namespace mldelta
