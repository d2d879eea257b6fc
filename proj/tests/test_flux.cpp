#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mldelta/flux.hpp"
#include "mldelta/scattering.hpp"

using namespace mldelta;
using std::numbers::pi;

namespace {
const PotentialSpec unit_pot(1.0);

// five-point central stencil for d/dp [g^2/(2m)]
double kinetic_derivative_fd(const DeformationSpec& d, double m, double p, double h) {
  auto t = [&](double pp) {
    const double g = d.g(pp);
    return g * g / (2.0 * m);
  };
  return (-t(p + 2 * h) + 8 * t(p + h) - 8 * t(p - h) + t(p - 2 * h)) / (12.0 * h);
}
}  // namespace

TEST_CASE("plane wave flux closed values") {
  const auto un = DeformationSpec::make(DeformationKind::Undeformed);
  CHECK(plane_wave_flux(un, unit_pot, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));

  const auto kempf = DeformationSpec::make(DeformationKind::Kempf, 1.0);
  CHECK(plane_wave_flux(kempf, unit_pot, pi / 4.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-12));

  for (const auto& d : {un, kempf})
    CHECK(plane_wave_flux(d, unit_pot, 0.0, 1.0) == 0.0);

  // |amplitude|^2 scaling and mass scaling
  CHECK(plane_wave_flux(un, unit_pot, 2.0, std::complex<double>(0.6, 0.8)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  const PotentialSpec heavy(1.0, 1.0, 4.0);
  CHECK(plane_wave_flux(un, heavy, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));

  const auto cut = DeformationSpec::make(DeformationKind::Cutoff, 0.0, 3.0);
  CHECK_THROWS_AS(plane_wave_flux(cut, unit_pot, 3.0, 1.0), std::domain_error);
}

TEST_CASE("analytic flux matches the finite-difference kinetic derivative") {
  const DeformationSpec ds[] = {
      DeformationSpec::make(DeformationKind::Undeformed),
      DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0),
      DeformationSpec::make(DeformationKind::Kempf, 1.0),
      DeformationSpec::make(DeformationKind::MaxMomentum, 1.0),
  };
  for (const auto& d : ds) {
    const double span = d.finite_b() ? 0.9 * d.b() : 10.0;
    for (int i = 0; i < 50; ++i) {
      const double p = -span + 2.0 * span * i / 49.0;
      const double fd = kinetic_derivative_fd(d, unit_pot.m, p, 1e-4);
      CHECK(std::abs(plane_wave_flux(d, unit_pot, p, 1.0) - fd) < 1e-8);
    }
  }
}

TEST_CASE("flux correction: zero function and empty range") {
  const auto d = DeformationSpec::make(DeformationKind::Kempf, 1.0);
  const KernelContext ctx(d, unit_pot.hbar);
  const auto zero = SampledWavefunction::sample(
      ctx, -20.0, 20.0, 201, [](double) { return std::complex<double>(0.0, 0.0); });
  for (double x : {-20.0, -3.0, 0.0, 11.0})
    CHECK(point_interaction_flux_correction(d, unit_pot, zero, x) == 0.0);

  const auto some = SampledWavefunction::sample(
      ctx, -20.0, 20.0, 201,
      [](double x) { return std::complex<double>(std::exp(-std::abs(x)), 0.0); });
  CHECK(point_interaction_flux_correction(d, unit_pot, some, -20.0) == 0.0);
  CHECK_THROWS_AS(point_interaction_flux_correction(d, unit_pot, some, 25.0),
                  std::invalid_argument);
}

TEST_CASE("flux correction saturates at 2 V0 |psi(0)|^2 for the bound state") {
  const auto d = DeformationSpec::make(DeformationKind::Kempf, 1.0);
  const auto st = solve_bound_state(d, unit_pot);
  const KernelContext ctx(d, unit_pot.hbar);
  const double L = 40.0 / st.q;
  const auto n = 2 * static_cast<std::size_t>(
                         std::ceil(L / (pi * unit_pot.hbar / (4.0 * d.b())))) +
                 1;
  const auto psi = SampledWavefunction::sample(ctx, -L, L, n, [&](double x) {
    return std::complex<double>(bound_wavefunction(d, unit_pot, st, x), 0.0);
  });

  const double psi0 = std::abs(psi.interpolate(0.0));
  const double limit = 2.0 * unit_pot.V0 * psi0 * psi0;  // completeness identity
  const double far = point_interaction_flux_correction(d, unit_pot, psi, L);
  CHECK(std::abs(far - limit) / limit < 1e-3);

  // locality: saturated beyond 20 l0 to 1e-3 of the peak correction
  double peak = 0.0;
  for (double x = -L; x <= L; x += L / 40.0)
    peak = std::max(peak,
                    std::abs(point_interaction_flux_correction(d, unit_pot, psi, x)));
  const double l0 = ctx.l0();
  for (double x : {20.0 * l0, 25.0 * l0, 30.0 * l0}) {
    const double jx = point_interaction_flux_correction(d, unit_pot, psi, x);
    CHECK(std::abs(jx - far) < 1e-3 * peak);
  }
}

TEST_CASE("flux conservation across deformations") {
  const auto un = DeformationSpec::make(DeformationKind::Undeformed);
  const auto rep = flux_conservation_check(un, unit_pot, 1.0);
  CHECK(rep.conservation_defect < 1e-12);
  CHECK(rep.j_incident == doctest::Approx(1.0).epsilon(1e-12));  // p0 = k = 1, f = 1

  // Kempf at resonance: transmitted flux dies
  const auto kempf = DeformationSpec::make(DeformationKind::Kempf, 1.0);
  const PotentialSpec strong(pi);
  const auto res = flux_conservation_check(kempf, strong, std::sqrt(pi - 1.0));
  CHECK(res.j_transmitted < 1e-9 * res.j_incident);
  CHECK(res.conservation_defect < 1e-12);

  // max momentum near the band edge: flux stays finite and positive
  const auto mm = DeformationSpec::make(DeformationKind::MaxMomentum, 1.0);
  const auto edge = flux_conservation_check(mm, unit_pot, 0.999);
  CHECK(edge.j_incident > 0.0);
  CHECK(std::isfinite(edge.j_incident));
  CHECK(edge.conservation_defect < 1e-12);

  // positivity across the band for every deformation
  const struct {
    DeformationSpec d;
    double hi;
  } cases[] = {{un, 5.0},
               {DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0), 9.0},
               {kempf, 5.0},
               {mm, 0.99}};
  for (const auto& c : cases)
    for (int i = 1; i <= 20; ++i) {
      const double k = c.hi * i / 20.0;
      CHECK(flux_conservation_check(c.d, unit_pot, k).j_incident > 0.0);
    }
}
