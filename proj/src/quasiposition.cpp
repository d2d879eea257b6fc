#include "mldelta/quasiposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mldelta {

namespace {

double sinc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
  }
  return std::sin(t) / t;
}

}  // namespace

KernelContext::KernelContext(DeformationSpec d_, double hbar_)
    : d(std::move(d_)), hbar(hbar_) {
  if (!(hbar > 0)) throw std::invalid_argument("KernelContext: hbar must be > 0");
}

SampledWavefunction::SampledWavefunction(const KernelContext& ctx, double x0,
                                         double dx,
                                         std::vector<std::complex<double>> values)
    : x0_(x0), dx_(dx), values_(std::move(values)) {
  if (!ctx.d.finite_b())
    throw std::domain_error("band-limited grids need finite b");
  if (values_.size() < 2)
    throw std::invalid_argument("SampledWavefunction: need >= 2 samples");
  if (!(dx_ > 0)) throw std::invalid_argument("SampledWavefunction: dx must be > 0");
  const double nyquist_quarter = std::numbers::pi * ctx.hbar / (4.0 * ctx.d.b());
  if (dx_ > nyquist_quarter * (1.0 + 1e-12))
    throw std::invalid_argument(
        "SampledWavefunction: grid spacing above quarter-Nyquist pi*hbar/(4b)");
}

std::complex<double> SampledWavefunction::interpolate(double x) const {
  if (x < x_front() - 1e-12 * dx_ || x > x_back() + 1e-12 * dx_)
    throw std::domain_error("interpolate: x outside the sample range");
  const double u = (x - x0_) / dx_;
  const auto i = static_cast<std::size_t>(
      std::clamp(std::floor(u), 0.0, static_cast<double>(values_.size() - 2)));
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * values_[i] + w * values_[i + 1];
}

double SampledWavefunction::peak_abs() const {
  double peak = 0.0;
  for (const auto& v : values_) peak = std::max(peak, std::abs(v));
  return peak;
}

double SampledWavefunction::boundary_ratio() const {
  const double peak = peak_abs();
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(values_.front()), std::abs(values_.back())) / peak;
}

double tilde_delta(const KernelContext& ctx, double x) {
  if (!ctx.d.finite_b())
    throw std::domain_error("tilde_delta: b = inf degenerates to a Dirac delta");
  const double b = ctx.d.b();
  return b / (std::numbers::pi * ctx.hbar) * sinc(b * x / ctx.hbar);
}

double position_eigenfunction(const KernelContext& ctx, double lambda, double x) {
  return std::sqrt(2.0 * ctx.l0()) * tilde_delta(ctx, x - lambda);
}

std::complex<double> momentum_amplitude(const KernelContext& ctx,
                                        const SampledWavefunction& psi, double p) {
  if (ctx.d.finite_b() && std::abs(p) > ctx.d.b() * (1.0 + 1e-12))
    throw std::domain_error("momentum_amplitude: |p| > b");
  const double inv_hbar = 1.0 / ctx.hbar;
  std::complex<double> acc = 0.0;
  const std::size_t n = psi.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = -p * psi.x(i) * inv_hbar;
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * psi.value(i) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc * psi.dx() / std::sqrt(2.0 * std::numbers::pi * ctx.hbar);
}

std::complex<double> project_bandlimited(const KernelContext& ctx,
                                         const SampledWavefunction& psi, double x) {
  std::complex<double> acc = 0.0;
  const std::size_t n = psi.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * psi.value(i) * tilde_delta(ctx, x - psi.x(i));
  }
  return acc * psi.dx();
}

PhysicalStateReport physical_state_check(const KernelContext& ctx,
                                         const SampledWavefunction& psi) {
  PhysicalStateReport rep;
  const double b = ctx.d.b();
  rep.boundary_amp_plus = std::abs(momentum_amplitude(ctx, psi, b));
  rep.boundary_amp_minus = std::abs(momentum_amplitude(ctx, psi, -b));
  rep.truncation_ratio = psi.boundary_ratio();

  constexpr int kScan = 129;
  for (int j = 0; j < kScan; ++j) {
    const double p = -b + 2.0 * b * j / (kScan - 1);
    rep.max_amp = std::max(rep.max_amp, std::abs(momentum_amplitude(ctx, psi, p)));
  }
  rep.pass = rep.max_amp == 0.0 ||
             (rep.boundary_amp_plus < 1e-6 * rep.max_amp &&
              rep.boundary_amp_minus < 1e-6 * rep.max_amp);
  return rep;
}

}  // namespace mldelta
