#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mldelta/bound.hpp"
#include "mldelta/numerics.hpp"
#include "mldelta/quasiposition.hpp"

using namespace mldelta;
using std::numbers::pi;

namespace {

// Independent bisection on a closed-form spectral condition.
double bisect(const std::function<double(double)>& fn, double lo, double hi) {
  double flo = fn(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((fn(mid) > 0) == (flo > 0)) {
      lo = mid;
      flo = fn(mid);
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

const PotentialSpec unit_pot(1.0);

// odd point count for a symmetric grid [-L, L] at or below quarter-Nyquist
std::size_t nyquist_points(double L, const DeformationSpec& d, double hbar = 1.0) {
  const double dx_max = pi * hbar / (4.0 * d.b());
  return 2 * static_cast<std::size_t>(std::ceil(L / dx_max)) + 1;
}

}  // namespace

TEST_CASE("potential spec derives the reduced coupling") {
  const PotentialSpec pot(2.0, 0.5, 3.0);
  CHECK(pot.vtilde == 3.0 * 2.0 / (pi * 0.5));
  CHECK_THROWS_AS(PotentialSpec(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("spectral function matches closed forms") {
  // undeformed: F(q) = pi*vtilde/q - 1
  const auto un = DeformationSpec::make(DeformationKind::Undeformed);
  for (double q : {0.3, 1.0, 2.7}) {
    const double closed = pi * unit_pot.vtilde / q - 1.0;
    CHECK(spectral_function(un, unit_pot, q) == doctest::Approx(closed).epsilon(1e-9));
  }
  CHECK(std::abs(spectral_function(un, unit_pot, pi * unit_pot.vtilde)) < 1e-9);

  // Kempf: F(q) = pi*vtilde/(q(1+sqrt(beta) q)) - 1 (tangent substitution)
  const double beta = 0.3;
  const auto kempf = DeformationSpec::make(DeformationKind::Kempf, beta);
  for (double q : {0.4, 1.0, 2.0}) {
    const double closed =
        pi * unit_pot.vtilde / (q * (1.0 + std::sqrt(beta) * q)) - 1.0;
    CHECK(spectral_function(kempf, unit_pot, q) ==
          doctest::Approx(closed).epsilon(1e-9));
  }

  // cutoff: F(q) = (2 vtilde/q) arctan(b/q) - 1
  const auto cut = DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0);
  for (double q : {0.5, 1.0, 3.0}) {
    const double closed = 2.0 * unit_pot.vtilde / q * std::atan(10.0 / q) - 1.0;
    CHECK(spectral_function(cut, unit_pot, q) == doctest::Approx(closed).epsilon(1e-9));
  }

  // max momentum: F(q) = pi*vtilde/(q sqrt(1+beta q^2)) - 1
  const auto mm = DeformationSpec::make(DeformationKind::MaxMomentum, 0.7);
  for (double q : {0.4, 1.0, 2.0}) {
    const double closed =
        pi * unit_pot.vtilde / (q * std::sqrt(1.0 + 0.7 * q * q)) - 1.0;
    CHECK(spectral_function(mm, unit_pot, q) == doctest::Approx(closed).epsilon(1e-9));
  }

  CHECK_THROWS_AS(spectral_function(un, unit_pot, 0.0), std::domain_error);
}

TEST_CASE("spectral function is strictly decreasing") {
  for (const auto& d :
       {DeformationSpec::make(DeformationKind::Undeformed),
        DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0),
        DeformationSpec::make(DeformationKind::Kempf, 0.5),
        DeformationSpec::make(DeformationKind::MaxMomentum, 0.5)}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 50; ++i) {
      const double q = 0.05 * i;
      const double F = spectral_function(d, unit_pot, q);
      CHECK(F < prev);
      prev = F;
    }
  }
}

TEST_CASE("undeformed bound state is the textbook level") {
  const auto st = solve_bound_state(DeformationSpec::make(DeformationKind::Undeformed),
                                    unit_pot);
  CHECK(std::abs(st.q - 1.0) < 1e-10);
  CHECK(std::abs(st.E + 0.5) < 1e-10);
  // I2 -> pi/(2 q^3), norm -> q^{3/2}/(pi sqrt(hbar))
  CHECK(st.i2 == doctest::Approx(pi / 2.0).epsilon(1e-9));
  CHECK(st.norm_const == doctest::Approx(1.0 / pi).epsilon(1e-9));
}

TEST_CASE("kempf closed form vs generic solver") {
  for (double beta : {1.0, 0.1, 0.01}) {
    const auto d = DeformationSpec::make(DeformationKind::Kempf, beta);
    const auto st = solve_bound_state(d, unit_pot);
    CHECK(std::abs(st.E - kempf_bound_energy(beta, unit_pot)) < 1e-8);
  }
  CHECK(kempf_bound_energy(0.01, unit_pot) ==
        doctest::Approx(-0.4196011).epsilon(1e-6));
  const auto st = solve_bound_state(DeformationSpec::make(DeformationKind::Kempf, 0.01),
                                    unit_pot);
  CHECK(st.E == doctest::Approx(-0.4196011).epsilon(1e-6));
  // beta -> 0 recovers the undeformed level
  CHECK(std::abs(kempf_bound_energy(1e-10, unit_pot) + 0.5) < 1e-4);
  CHECK_THROWS_AS(kempf_bound_energy(0.0, unit_pot), std::domain_error);
}

TEST_CASE("cutoff bound state vs arctan oracle") {
  const auto d = DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0);
  const auto st = solve_bound_state(d, unit_pot);
  const double q_oracle = bisect(
      [&](double q) { return 2.0 * unit_pot.vtilde / q * std::atan(10.0 / q) - 1.0; },
      0.1, 10.0);
  CHECK(std::abs(st.q - q_oracle) < 1e-8);
}

TEST_CASE("small-beta energy series") {
  CHECK(bound_energy_series(0.0, unit_pot) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(bound_energy_series(0.01, unit_pot) ==
        doctest::Approx(-0.5 + 0.1 - 0.025).epsilon(1e-15));

  // defect against the closed form scales as beta^{3/2}
  const double d1 = std::abs(bound_energy_series(1e-4, unit_pot) -
                             kempf_bound_energy(1e-4, unit_pot));
  const double d2 = std::abs(bound_energy_series(1e-6, unit_pot) -
                             kempf_bound_energy(1e-6, unit_pot));
  const double ratio = d1 / d2;
  CHECK(ratio > 300.0);
  CHECK(ratio < 3000.0);
}

TEST_CASE("bound wavefunction: even, undeformed limit, Fig-1 ordering") {
  const auto d10 = DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0);
  const auto st10 = solve_bound_state(d10, unit_pot);
  for (double x : {0.4, 1.0, 3.3})
    CHECK(bound_wavefunction(d10, unit_pot, st10, x) ==
          doctest::Approx(bound_wavefunction(d10, unit_pot, st10, -x)).epsilon(1e-12));

  // large-b cutoff approaches sqrt(q) e^{-q|x|}
  const auto dbig = DeformationSpec::make(DeformationKind::Cutoff, 0.0, 1000.0);
  const auto stbig = solve_bound_state(dbig, unit_pot);
  CHECK(std::abs(bound_wavefunction(dbig, unit_pot, stbig, 1.0) - std::exp(-1.0)) <
        1e-3);

  // sharper at the origin for larger b
  const auto d1 = DeformationSpec::make(DeformationKind::Cutoff, 0.0, 1.0);
  const auto st1 = solve_bound_state(d1, unit_pot);
  CHECK(bound_wavefunction(d10, unit_pot, st10, 0.0) >
        bound_wavefunction(d1, unit_pot, st1, 0.0));

  CHECK_THROWS_AS(
      bound_wavefunction(DeformationSpec::make(DeformationKind::Undeformed), unit_pot,
                         BoundState{1.0, -0.5, pi / 2.0, 1.0 / pi}, 1.0),
      std::domain_error);
}

TEST_CASE("alternative Kempf prefactor differs by exactly sqrt(2 pi hbar)") {
  for (double beta : {1.0, 0.25, 0.01}) {
    const auto d = DeformationSpec::make(DeformationKind::Kempf, beta);
    const auto st = solve_bound_state(d, unit_pot);
    const double alt = kempf_norm_prefactor_alt(beta, unit_pot, st.q);
    const double ratio = alt / st.norm_const;
    CHECK(ratio == doctest::Approx(std::sqrt(2.0 * pi * unit_pot.hbar)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(kempf_norm_prefactor_alt(0.0, unit_pot, 1.0), std::domain_error);
}

TEST_CASE("bound wavefunction normalization across deformations") {
  struct Case {
    DeformationSpec d;
    double x_far;
  };
  const Case cases[] = {
      {DeformationSpec::make(DeformationKind::Cutoff, 0.0, 50.0), 45.0},  // ~undeformed
      {DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0), 60.0},
      {DeformationSpec::make(DeformationKind::Kempf, 0.1), 55.0},
      {DeformationSpec::make(DeformationKind::MaxMomentum, 0.1), 90.0},
  };
  for (const auto& c : cases) {
    const auto st = solve_bound_state(c.d, unit_pot);
    const double norm = bound_norm_integral(c.d, unit_pot, st, c.x_far);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("bound state momentum content matches 1/(g^2+q^2)") {
  const auto d = DeformationSpec::make(DeformationKind::Kempf, 1.0);
  const auto st = solve_bound_state(d, unit_pot);
  const KernelContext ctx(d, unit_pot.hbar);
  const double L = 40.0 / st.q;
  const auto psi =
      SampledWavefunction::sample(ctx, -L, L, nyquist_points(L, d), [&](double x) {
        return std::complex<double>(bound_wavefunction(d, unit_pot, st, x), 0.0);
      });

  const auto c0 = momentum_amplitude(ctx, psi, 0.0);
  for (double p : {0.3, 0.7, 1.2}) {
    const auto cp = momentum_amplitude(ctx, psi, p);
    const double gp = d.g(p);
    const double expected =
        (st.q * st.q) / (gp * gp + st.q * st.q);  // C(p)/C(0) in closed form
    CHECK(std::abs(cp / c0 - expected) < 1e-3);
  }

  const auto rep = physical_state_check(ctx, psi);
  CHECK(rep.pass);
}

TEST_CASE("kempf bound states satisfy the physical-state condition") {
  for (double beta : {1.0, 0.1}) {
    const auto d = DeformationSpec::make(DeformationKind::Kempf, beta);
    const auto st = solve_bound_state(d, unit_pot);
    const KernelContext ctx(d, unit_pot.hbar);
    const double L = 40.0 / st.q;
    const auto psi =
        SampledWavefunction::sample(ctx, -L, L, nyquist_points(L, d), [&](double x) {
          return std::complex<double>(bound_wavefunction(d, unit_pot, st, x), 0.0);
        });
    CHECK(physical_state_check(ctx, psi).pass);
  }
}
