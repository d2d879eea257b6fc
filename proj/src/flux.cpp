#include "mldelta/flux.hpp"

#include <algorithm>
#include <cmath>

#include "mldelta/scattering.hpp"

namespace mldelta {

double plane_wave_flux(const DeformationSpec& d, const PotentialSpec& pot, double p,
                       std::complex<double> amplitude) {
  if (d.finite_b() && !(std::abs(p) < d.b()))
    throw std::domain_error("plane_wave_flux: |p| must be below b");
  const double gp = d.g(p);
  return std::norm(amplitude) * gp * d.f(gp) / pot.m;
}

double point_interaction_flux_correction(const DeformationSpec& d,
                                         const PotentialSpec& pot,
                                         const SampledWavefunction& psi, double x) {
  const KernelContext ctx(d, pot.hbar);
  if (psi.x_front() > 0.0 || psi.x_back() < 0.0)
    throw std::invalid_argument("flux correction: sample grid must contain 0");
  if (x < psi.x_front() || x > psi.x_back())
    throw std::invalid_argument("flux correction: x outside the sample range");

  const std::complex<double> psi0 = psi.interpolate(0.0);
  auto integrand = [&](std::size_t i) {
    return tilde_delta(ctx, psi.x(i)) *
           2.0 * std::real(std::conj(psi.value(i)) * psi0);
  };

  const double dx = psi.dx();
  const auto m = static_cast<std::size_t>(
      std::clamp(std::floor((x - psi.x_front()) / dx), 0.0,
                 static_cast<double>(psi.size() - 1)));
  double acc = 0.0;
  double prev = integrand(0);
  for (std::size_t i = 1; i <= m; ++i) {
    const double cur = integrand(i);
    acc += 0.5 * (prev + cur) * dx;
    prev = cur;
  }
  const double rest = x - psi.x(m);
  if (rest > 0.0 && m + 1 < psi.size()) {
    const double cur = integrand(m + 1);
    const double w = rest / dx;
    const double at_x = (1.0 - w) * prev + w * cur;
    acc += 0.5 * (prev + at_x) * rest;
  }
  return pot.V0 * acc;
}

FluxReport flux_conservation_check(const DeformationSpec& d, const PotentialSpec& pot,
                                   double k) {
  const ScatteringPoint sp = scattering_point(d, pot, k);
  FluxReport rep;
  rep.j_incident = plane_wave_flux(d, pot, sp.p0, 1.0);
  rep.j_transmitted = sp.T * rep.j_incident;
  rep.j_reflected = sp.R * rep.j_incident;
  rep.conservation_defect =
      std::abs(rep.j_incident - rep.j_transmitted - rep.j_reflected) / rep.j_incident;
  return rep;
}

}  // namespace mldelta
