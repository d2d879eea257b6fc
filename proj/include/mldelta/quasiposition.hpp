#pragma once

#include <complex>
#include <vector>

#include "mldelta/deformation.hpp"

namespace mldelta {

/// A deformation together with the action scale hbar; everything in
/// quasiposition space (kernels, grids, momentum amplitudes) hangs off it.
struct KernelContext {
  DeformationSpec d;
  double hbar = 1.0;

  explicit KernelContext(DeformationSpec d_, double hbar_ = 1.0);
  double l0() const { return d.l0(hbar); }
};

/// Complex wavefunction samples on a uniform grid. The constructor rejects
/// grids coarser than quarter-Nyquist (dx <= pi*hbar/(4b)), so band-limited
/// functions are exactly representable and trapezoid transforms are alias-free.
class SampledWavefunction {
 public:
  SampledWavefunction(const KernelContext& ctx, double x0, double dx,
                      std::vector<std::complex<double>> values);

  template <class F>
  static SampledWavefunction sample(const KernelContext& ctx, double x_min,
                                    double x_max, std::size_t n, F&& fn) {
    if (n < 2) throw std::invalid_argument("SampledWavefunction: need >= 2 samples");
    const double dx = (x_max - x_min) / static_cast<double>(n - 1);
    std::vector<std::complex<double>> vals(n);
    for (std::size_t i = 0; i < n; ++i)
      vals[i] = fn(x_min + static_cast<double>(i) * dx);
    return SampledWavefunction(ctx, x_min, dx, std::move(vals));
  }

  std::size_t size() const noexcept { return values_.size(); }
  double dx() const noexcept { return dx_; }
  double x(std::size_t i) const { return x0_ + static_cast<double>(i) * dx_; }
  double x_front() const { return x0_; }
  double x_back() const { return x(values_.size() - 1); }
  const std::complex<double>& value(std::size_t i) const { return values_[i]; }
  const std::vector<std::complex<double>>& values() const noexcept { return values_; }

  std::complex<double> interpolate(double x) const;  // linear; throws outside range
  double peak_abs() const;
  /// max(|first|, |last|) / peak; large values flag truncated tails.
  double boundary_ratio() const;

 private:
  double x0_ = 0.0;
  double dx_ = 0.0;
  std::vector<std::complex<double>> values_;
};

/// Band-limited kernel sin(b x / hbar) / (pi x); value b/(pi hbar) at x = 0.
/// Finite b only: at b = inf it degenerates to a Dirac delta.
double tilde_delta(const KernelContext& ctx, double x);

/// Position-operator eigenfunction sqrt(2 l0) * tilde_delta(x - lambda).
double position_eigenfunction(const KernelContext& ctx, double lambda, double x);

/// C(p) = int psi(x) e^{-i p x/hbar} / sqrt(2 pi hbar) dx on the sample grid.
std::complex<double> momentum_amplitude(const KernelContext& ctx,
                                        const SampledWavefunction& psi, double p);

/// int psi(x') tilde_delta(x - x') dx' on the grid; reproduces band-limited psi.
std::complex<double> project_bandlimited(const KernelContext& ctx,
                                         const SampledWavefunction& psi, double x);

/// Physical states need C(+-b) = 0 (finite mean kinetic energy); the report
/// carries both boundary magnitudes against the amplitude peak.
///
/// On states that violate the condition, the position operator picks up
/// boundary terms proportional to C(+-b) e^{+-i b x/hbar} on top of plain
/// multiplication by x (this is how position eigenfunctions, whose |C| is
/// flat, stay consistent). The library only reports the boundary amplitudes;
/// it does not implement the corrected operator.
struct PhysicalStateReport {
  double boundary_amp_plus = 0.0;   // |C(+b)|
  double boundary_amp_minus = 0.0;  // |C(-b)|
  double max_amp = 0.0;             // max |C(p)| over a scan grid
  double truncation_ratio = 0.0;    // boundary_ratio() of the input samples
  bool pass = false;                // both boundary amplitudes < 1e-6 * max_amp
};

PhysicalStateReport physical_state_check(const KernelContext& ctx,
                                         const SampledWavefunction& psi);

}  // namespace mldelta
