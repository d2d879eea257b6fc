#include "mldelta/bound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mldelta/numerics.hpp"

namespace mldelta {

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureOptions spectral_quad() {
  QuadratureOptions opt;
  opt.tol = 1e-12;
  opt.max_eval = 400'000;
  return opt;
}

// int_{-b}^{b} dp / (g^2 + q^2)^n for n = 1, 2.
double momentum_integral(const DeformationSpec& d, double q, int n) {
  auto integrand = [&d, q, n](double p) {
    const double gp = d.g(d.clamp_to_domain(p));
    const double den = gp * gp + q * q;
    return n == 1 ? 1.0 / den : 1.0 / (den * den);
  };
  if (d.finite_b())
    return integrate_adaptive(integrand, -d.b(), d.b(), spectral_quad()).value;
  return integrate_whole_line(integrand, spectral_quad()).value;
}

// pi/2 - Si(z), asymptotic form; needs z >~ 20.
double si_tail(double z) {
  const double z2 = z * z;
  const double pc = 1.0 - 2.0 / z2 + 24.0 / (z2 * z2);
  const double ps = 1.0 - 6.0 / z2 + 120.0 / (z2 * z2);
  return std::cos(z) / z * pc + std::sin(z) / z2 * ps;
}

}  // namespace

PotentialSpec::PotentialSpec(double V0_, double hbar_, double m_)
    : V0(V0_), hbar(hbar_), m(m_), vtilde(m_ * V0_ / (kPi * hbar_)) {
  if (!(V0 > 0)) throw std::invalid_argument("PotentialSpec: V0 must be > 0");
  if (!(hbar > 0)) throw std::invalid_argument("PotentialSpec: hbar must be > 0");
  if (!(m > 0)) throw std::invalid_argument("PotentialSpec: m must be > 0");
}

double spectral_function(const DeformationSpec& d, const PotentialSpec& pot, double q) {
  if (!(q > 0)) throw std::domain_error("spectral_function: q must be > 0");
  return pot.vtilde * momentum_integral(d, q, 1) - 1.0;
}

BoundState solve_bound_state(const DeformationSpec& d, const PotentialSpec& pot) {
  const double q0 = pot.m * pot.V0 / pot.hbar;  // undeformed answer sets the scale
  auto F = [&](double q) { return spectral_function(d, pot, q); };
  const auto [lo, hi] = expand_bracket(F, q0 / 10.0, 10.0 * q0);
  RootOptions ropt;
  ropt.xtol = 1e-12 * std::max(1.0, q0);
  const double q = lo == hi ? lo : find_root_bracketed(F, lo, hi, ropt);

  BoundState st;
  st.q = q;
  st.E = -q * q / (2.0 * pot.m);
  st.i2 = momentum_integral(d, q, 2);
  st.norm_const = 1.0 / std::sqrt(2.0 * kPi * pot.hbar * st.i2);
  return st;
}

double kempf_bound_energy(double beta, const PotentialSpec& pot) {
  if (!(beta > 0)) throw std::domain_error("kempf_bound_energy: beta must be > 0");
  const double w = kPi * pot.vtilde * std::sqrt(beta);
  return -w * w / (pot.m * beta * (1.0 + 2.0 * w + std::sqrt(1.0 + 4.0 * w)));
}

double bound_energy_series(double beta, const PotentialSpec& pot) {
  if (beta < 0) throw std::domain_error("bound_energy_series: beta must be >= 0");
  const double mv = pot.m * pot.V0 / pot.hbar;  // m V0 / hbar, momentum units
  return -mv * mv / (2.0 * pot.m) + mv * mv * mv * std::sqrt(beta) / pot.m -
         2.5 * mv * mv * mv * mv * beta / pot.m;
}

double kempf_norm_prefactor_alt(double beta, const PotentialSpec& pot, double q) {
  if (!(beta > 0)) throw std::domain_error("kempf_norm_prefactor_alt: beta must be > 0");
  if (!(q > 0)) throw std::domain_error("kempf_norm_prefactor_alt: q must be > 0");
  (void)pot;
  const double sq = std::sqrt(beta) * q;
  return std::sqrt(2.0 / kPi) * (1.0 + sq) * std::pow(q, 1.5) /
         std::sqrt(1.0 + 2.0 * sq);
}

double bound_wavefunction(const DeformationSpec& d, const PotentialSpec& pot,
                          const BoundState& state, double x) {
  if (!d.finite_b())
    throw std::domain_error(
        "bound_wavefunction: needs finite b; use a large-b cutoff for the "
        "undeformed limit");
  const double q = state.q;
  const double inv_hbar = 1.0 / pot.hbar;
  auto integrand = [&](double p) {
    const double gp = d.g(d.clamp_to_domain(p));
    return std::cos(p * x * inv_hbar) / (gp * gp + q * q);
  };
  QuadratureOptions opt;
  opt.tol = 1e-10;
  opt.max_eval = 600'000;
  const double cycles = d.b() * std::abs(x) * inv_hbar / kPi;
  opt.initial_intervals = static_cast<int>(std::clamp(std::ceil(cycles) + 1.0, 1.0, 16384.0));
  return state.norm_const * integrate_adaptive(integrand, -d.b(), d.b(), opt).value;
}

double bound_norm_integral(const DeformationSpec& d, const PotentialSpec& pot,
                           const BoundState& state, double x_far) {
  if (!(x_far > 0)) throw std::invalid_argument("bound_norm_integral: x_far must be > 0");
  auto density = [&](double x) {
    const double v = bound_wavefunction(d, pot, state, x);
    return v * v;
  };
  QuadratureOptions opt;
  opt.tol = 3e-7;
  opt.max_eval = 2'000'000;
  const double cycles = d.b() * x_far / (pot.hbar * kPi);
  opt.initial_intervals = static_cast<int>(std::clamp(std::ceil(cycles) + 1.0, 1.0, 32768.0));
  const double core = 2.0 * integrate_adaptive(density, 0.0, x_far, opt).value;

  // Sharp momentum cutoff (g(b) finite) leaves psi ~ 2 N h(b) hbar sin(bx/hbar)/x
  // far out; complete the norm with the analytic tail of that envelope.
  const double gb = d.g(d.clamp_to_domain(d.b()));
  const double hb = 1.0 / (gb * gb + state.q * state.q);
  const double amp = 2.0 * state.norm_const * hb * pot.hbar;
  const double U = d.b() * x_far / pot.hbar;
  double tail = 0.0;
  if (amp * amp / x_far > 1e-18 && U > 20.0) {
    const double s = std::sin(U);
    const double q_int = s * s / U + si_tail(2.0 * U);  // int_U^inf sin^2 u/u^2 du
    tail = 2.0 * amp * amp * (d.b() / pot.hbar) * q_int;  // both tails
  }
  return core + tail;
}

}  // namespace mldelta
