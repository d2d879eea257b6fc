#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mldelta/bound.hpp"
#include "mldelta/deformation.hpp"

namespace mldelta {

/// Everything the point interaction does to a plane wave of deformed momentum
/// k = g(p0): the principal value G(k), the complex kernel I = G + i pi/(k f(k)),
/// the amplitude A = -vtilde/(1 + vtilde I) and the closed-form T, R.
struct ScatteringPoint {
  double k = 0.0;
  double p0 = 0.0;  // quasimomentum, g(p0) = k
  double G = 0.0;
  std::complex<double> I;
  std::complex<double> A;
  double T = 0.0;
  double R = 0.0;
};

/// PV int_{-b}^{b} dp/(g^2(p) - k^2), poles subtracted analytically at
/// +-p0 with residues +-1/(2 k f(k)). Needs 0 < k < a; rejects poles within
/// 1e-8*b of the boundary.
double g_principal(const DeformationSpec& d, double k);

ScatteringPoint scattering_point(const DeformationSpec& d, const PotentialSpec& pot,
                                 double k);

std::complex<double> scattering_amplitude(const DeformationSpec& d,
                                          const PotentialSpec& pot, double k);

/// Closed-form (T, R); also cross-checks them against the amplitude route
/// |1 + i pi A/(k f)|^2 and |i pi A/(k f)|^2 to 1e-12.
std::pair<double, double> transmission_reflection(const DeformationSpec& d,
                                                  const PotentialSpec& pot, double k);

/// Root of 1 + vtilde*G(k) on [k_lo, k_hi]; perfect reflection there
/// (R > 1 - 1e-9). Throws NoSignChangeError when no resonance is bracketed.
double find_resonance(const DeformationSpec& d, const PotentialSpec& pot,
                      double k_lo, double k_hi);

struct ResonancePoint {
  double vtilde = 0.0;
  double k_star = 0.0;
};

struct ResonanceCurve {
  std::vector<ResonancePoint> points;  // ordered by (vtilde, k_star)
};

/// Sweeps 1 + vtilde*G over (0, k_max] with a 512-point sign-change scan per
/// coupling and resolves each crossing. Cutoff-type deformations get an extra
/// u = -ln(1 - k/b) scan so weak-coupling resonances hugging b are resolved.
/// Couplings without a resonance are omitted.
ResonanceCurve resonance_curve(const DeformationSpec& d,
                               std::span<const double> vtilde_values, double k_max);

/// Far field e^{i p0 x/hbar} + (i pi A/(k f(k))) e^{i p0 |x|/hbar}.
std::complex<double> scattering_wavefunction_far(const DeformationSpec& d,
                                                 const PotentialSpec& pot, double k,
                                                 double x);

struct AsymptoticCheckReport {
  struct Row {
    double x = 0.0;
    std::complex<double> integral;  // eps-damped oscillatory integral
    std::complex<double> limit;     // (i pi/(k f(k))) e^{i p0 |x|/hbar}
    double rel_deviation = 0.0;
  };
  std::vector<Row> rows;           // input order
  bool deviation_decreasing = false;  // deviation at largest |x| below smallest |x|
};

/// Verifies the residue/Jordan far-field limit numerically: the damped
/// oscillatory integral of e^{ipx/hbar}/(g^2-k^2-i eps) against its |x|->inf
/// closed form, for each requested x (all |x| >= 10 hbar/k).
AsymptoticCheckReport asymptotic_wave_check(const DeformationSpec& d, double k,
                                            std::span<const double> xs,
                                            double hbar = 1.0);

}  // namespace mldelta
