#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace mldelta {

/// Built-in deformation functions of the modified commutator [X,P] = i*hbar*f(P).
///   Undeformed:  f = 1,            g(p) = p,                   b = a = inf
///   Cutoff:      f = 1,            g(p) = p,                   b = a finite
///   Kempf:       f = 1 + beta*P^2, g(p) = tan(sqrt(b)p)/sqrt(b), b = pi/(2 sqrt(beta)), a = inf
///   MaxMomentum: f = sqrt(1-beta*P^2), g(p) = sin(sqrt(b)p)/sqrt(b), a = 1/sqrt(beta)
enum class DeformationKind { Undeformed, Cutoff, Kempf, MaxMomentum, Custom };

struct ConsistencyReport {
  double max_derivative_defect = 0.0;  // |g' - f(g)| / max(1, |f(g)|), central differences
  double max_oddness_defect = 0.0;     // |g(p) + g(-p)|
  int monotonicity_violations = 0;
  bool derivative_ok = false;
  bool odd_ok = false;
  bool monotone_ok = false;
  bool pass() const { return derivative_ok && odd_ok && monotone_ok; }
};

/// One deformation pair (f, g) with its momentum domains. Immutable after
/// construction; safe for concurrent reads.
///
/// g maps the auxiliary momentum p in (-b, b) to the physical momentum
/// P = g(p) in (-a, a), with dg/dp = f(g(p)) and b = g^{-1}(a).
class DeformationSpec {
 public:
  using Evaluator = std::function<double(double)>;

  static DeformationSpec make(DeformationKind kind, double beta = 0.0, double b = 0.0);

  /// User-supplied deformation; validated with consistency_check on construction.
  static DeformationSpec custom(Evaluator f, Evaluator g, Evaluator g_inverse,
                                double b, double a);

  DeformationKind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  double b() const noexcept { return b_; }  // may be +inf
  double a() const noexcept { return a_; }  // may be +inf
  bool finite_b() const noexcept { return std::isfinite(b_); }
  bool finite_a() const noexcept { return std::isfinite(a_); }

  /// Kernel length scale l0 = pi*hbar/(2b); 0 when b is infinite.
  double l0(double hbar = 1.0) const;

  double f(double P) const;          // throws std::domain_error for |P| >= a
  double g(double p) const;          // throws std::domain_error for |p| >= b
  double g_inverse(double P) const;  // throws std::domain_error for |P| >= a

  /// Pulls p inside +-b*(1 - kEdgeEpsilon); g diverges at b for Kempf, so
  /// quadrature callers clamp rather than touch the endpoint.
  double clamp_to_domain(double p) const noexcept;

  /// Samples g' - f(g) (central differences), oddness and monotonicity over
  /// an interior grid. n_samples >= 3.
  ConsistencyReport consistency_check(int n_samples) const;

  // A few ulps is enough to keep tan-type g finite; a wider margin would
  // leave a flat ledge in the integrands that quadrature has to resolve
  // whenever a pole sits close to the boundary.
  static constexpr double kEdgeEpsilon = 4.0 * std::numeric_limits<double>::epsilon();

 private:
  DeformationSpec() = default;
  void check_p_domain(double p) const;
  void check_P_domain(double P) const;

  DeformationKind kind_ = DeformationKind::Undeformed;
  double beta_ = 0.0;
  double b_ = std::numeric_limits<double>::infinity();
  double a_ = std::numeric_limits<double>::infinity();
  Evaluator custom_f_, custom_g_, custom_g_inv_;
};

}  // namespace mldelta
