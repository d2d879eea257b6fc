#pragma once

#include "mldelta/deformation.hpp"

// The point interaction is always the band-limited projector kernel
// -V0 * tilde_delta(x) * psi(0). A bare Dirac delta is not accepted anywhere:
// with a finite momentum band the product delta(x) psi(x) injects plane-wave
// content outside [-b, b] that no band-limited solution can balance, so that
// problem admits only psi = 0. The projector form reduces to the ordinary
// delta well as b -> infinity.

namespace mldelta {

/// Attractive point-interaction coupling V0 with the unit constants. The
/// reduced coupling vtilde = m*V0/(pi*hbar) is the momentum scale every
/// spectral and scattering formula runs on.
struct PotentialSpec {
  double V0;
  double hbar;
  double m;
  double vtilde;

  explicit PotentialSpec(double V0_, double hbar_ = 1.0, double m_ = 1.0);
};

/// One bound level: decay momentum q = sqrt(-2mE), energy E = -q^2/(2m),
/// norm integral i2 = int dp/(g^2+q^2)^2 and norm_const = 1/sqrt(2 pi hbar i2).
struct BoundState {
  double q = 0.0;
  double E = 0.0;
  double i2 = 0.0;
  double norm_const = 0.0;
};

/// F(q) = vtilde * int_{-b}^{b} dp/(g^2(p)+q^2) - 1. Strictly decreasing in q;
/// its unique zero is the bound level.
double spectral_function(const DeformationSpec& d, const PotentialSpec& pot, double q);

/// Finds the unique root of the spectral function by bracketed root finding
/// with geometric bracket expansion around q0 = m*V0/hbar.
BoundState solve_bound_state(const DeformationSpec& d, const PotentialSpec& pot);

/// Closed-form Kempf energy, evaluated in the cancellation-free form
/// E = -w^2 / (m*beta*(1 + 2w + sqrt(1+4w))), w = pi*vtilde*sqrt(beta).
double kempf_bound_energy(double beta, const PotentialSpec& pot);

/// Small-beta expansion -mV0^2/(2 hbar^2) + m^2 V0^3 sqrt(beta)/hbar^3
///                      - (5/2) m^3 V0^4 beta/hbar^4.
double bound_energy_series(double beta, const PotentialSpec& pot);

/// psi(x) = norm_const * int_{-b}^{b} cos(p x/hbar)/(g^2+q^2) dp. Real and even.
/// Needs finite b; the undeformed limit is reached through a large-b Cutoff.
double bound_wavefunction(const DeformationSpec& d, const PotentialSpec& pot,
                          const BoundState& state, double x);

/// Alternative Kempf normalization in the sqrt(2/pi)-weighted convention,
/// sqrt(2/pi) * (1+sqrt(beta) q) * q^{3/2} / sqrt(1+2 sqrt(beta) q).
/// Kept for comparison only: it exceeds the momentum-norm constant by the
/// fixed factor sqrt(2 pi hbar), so unit L2 norm needs the default route.
double kempf_norm_prefactor_alt(double beta, const PotentialSpec& pot, double q);

/// int |psi|^2 dx over |x| <= x_far plus the analytic completion of the
/// oscillatory 1/x tail that sharp momentum cutoffs (g(b) finite) produce.
double bound_norm_integral(const DeformationSpec& d, const PotentialSpec& pot,
                           const BoundState& state, double x_far);

}  // namespace mldelta
