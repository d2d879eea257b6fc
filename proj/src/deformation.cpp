#include "mldelta/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace mldelta {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DeformationSpec DeformationSpec::make(DeformationKind kind, double beta, double b) {
  DeformationSpec d;
  d.kind_ = kind;
  switch (kind) {
    case DeformationKind::Undeformed:
      d.b_ = kInf;
      d.a_ = kInf;
      return d;
    case DeformationKind::Cutoff:
      if (!std::isfinite(b) || !(b > 0))
        throw std::invalid_argument("Cutoff deformation needs finite b > 0");
      d.b_ = b;
      d.a_ = b;
      return d;
    case DeformationKind::Kempf:
      if (!std::isfinite(beta) || !(beta > 0))
        throw std::invalid_argument("Kempf deformation needs beta > 0");
      d.beta_ = beta;
      d.b_ = std::numbers::pi / (2.0 * std::sqrt(beta));
      d.a_ = kInf;
      return d;
    case DeformationKind::MaxMomentum:
      if (!std::isfinite(beta) || !(beta > 0))
        throw std::invalid_argument("MaxMomentum deformation needs beta > 0");
      d.beta_ = beta;
      d.b_ = std::numbers::pi / (2.0 * std::sqrt(beta));
      d.a_ = 1.0 / std::sqrt(beta);
      return d;
    case DeformationKind::Custom:
      throw std::invalid_argument("use DeformationSpec::custom for user evaluators");
  }
  throw std::invalid_argument("unknown deformation kind");
}

DeformationSpec DeformationSpec::custom(Evaluator f, Evaluator g, Evaluator g_inverse,
                                        double b, double a) {
  if (!f || !g || !g_inverse)
    throw std::invalid_argument("custom deformation needs all three evaluators");
  if (!(b > 0) || !(a > 0))
    throw std::invalid_argument("custom deformation needs b > 0 and a > 0");
  DeformationSpec d;
  d.kind_ = DeformationKind::Custom;
  d.b_ = b;
  d.a_ = a;
  d.custom_f_ = std::move(f);
  d.custom_g_ = std::move(g);
  d.custom_g_inv_ = std::move(g_inverse);
  const ConsistencyReport rep = d.consistency_check(65);
  if (!rep.pass())
    throw std::invalid_argument("custom deformation fails the consistency check");
  return d;
}

double DeformationSpec::l0(double hbar) const {
  if (!(hbar > 0)) throw std::invalid_argument("l0: hbar must be > 0");
  if (!finite_b()) return 0.0;
  return std::numbers::pi * hbar / (2.0 * b_);
}

void DeformationSpec::check_p_domain(double p) const {
  if (finite_b() && !(std::abs(p) < b_))
    throw std::domain_error("auxiliary momentum outside (-b, b)");
  if (!std::isfinite(p)) throw std::domain_error("auxiliary momentum must be finite");
}

void DeformationSpec::check_P_domain(double P) const {
  if (finite_a() && !(std::abs(P) < a_))
    throw std::domain_error("physical momentum outside (-a, a)");
  if (!std::isfinite(P)) throw std::domain_error("physical momentum must be finite");
}

double DeformationSpec::f(double P) const {
  check_P_domain(P);
  switch (kind_) {
    case DeformationKind::Undeformed:
    case DeformationKind::Cutoff:
      return 1.0;
    case DeformationKind::Kempf:
      return 1.0 + beta_ * P * P;
    case DeformationKind::MaxMomentum:
      return std::sqrt(std::max(0.0, 1.0 - beta_ * P * P));
    case DeformationKind::Custom:
      return custom_f_(P);
  }
  return 1.0;
}

double DeformationSpec::g(double p) const {
  check_p_domain(p);
  switch (kind_) {
    case DeformationKind::Undeformed:
    case DeformationKind::Cutoff:
      return p;
    case DeformationKind::Kempf: {
      const double s = std::sqrt(beta_);
      return std::tan(s * p) / s;
    }
    case DeformationKind::MaxMomentum: {
      const double s = std::sqrt(beta_);
      return std::sin(s * p) / s;
    }
    case DeformationKind::Custom:
      return custom_g_(p);
  }
  return p;
}

double DeformationSpec::g_inverse(double P) const {
  check_P_domain(P);
  switch (kind_) {
    case DeformationKind::Undeformed:
    case DeformationKind::Cutoff:
      return P;
    case DeformationKind::Kempf: {
      const double s = std::sqrt(beta_);
      return std::atan(s * P) / s;
    }
    case DeformationKind::MaxMomentum: {
      const double s = std::sqrt(beta_);
      return std::asin(std::clamp(s * P, -1.0, 1.0)) / s;
    }
    case DeformationKind::Custom:
      return custom_g_inv_(P);
  }
  return P;
}

double DeformationSpec::clamp_to_domain(double p) const noexcept {
  if (!finite_b()) return p;
  const double m = b_ * (1.0 - kEdgeEpsilon);
  return std::clamp(p, -m, m);
}

ConsistencyReport DeformationSpec::consistency_check(int n_samples) const {
  if (n_samples < 3)
    throw std::invalid_argument("consistency_check: need n_samples >= 3");
  const double span = finite_b() ? 0.9 * b_ : 10.0;
  const double h = std::min(1e-4, 0.05 * span);

  ConsistencyReport rep;
  double g_prev = -kInf;
  for (int i = 0; i < n_samples; ++i) {
    const double p = -span + 2.0 * span * i / (n_samples - 1);
    const double gp = g(p);
    rep.max_oddness_defect = std::max(rep.max_oddness_defect, std::abs(gp + g(-p)));
    if (!(gp > g_prev)) ++rep.monotonicity_violations;
    g_prev = gp;
    const double fd = (g(p + h) - g(p - h)) / (2.0 * h);
    const double fg = f(gp);
    const double defect = std::abs(fd - fg) / std::max(1.0, std::abs(fg));
    rep.max_derivative_defect = std::max(rep.max_derivative_defect, defect);
  }
  rep.derivative_ok = rep.max_derivative_defect < 1e-6;
  rep.odd_ok = rep.max_oddness_defect < 1e-12;
  rep.monotone_ok = rep.monotonicity_violations == 0;
  return rep;
}

}  // namespace mldelta
