#include "mldelta/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace mldelta {

double pv_log_term(double lo, double hi, const PoleSubtraction& pole) {
  return pole.residue * std::log((hi - pole.pole) / (pole.pole - lo));
}

double pv_subtracted_integral(const std::function<double(double)>& fn, double lo,
                              double hi, std::span<const PoleSubtraction> poles,
                              QuadratureOptions opt, double boundary_guard_frac) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw std::invalid_argument("pv_subtracted_integral: need finite lo < hi");
  const double width = hi - lo;
  const double guard = boundary_guard_frac * width;
  for (const auto& p : poles) {
    if (!std::isfinite(p.pole) || !std::isfinite(p.residue) || p.residue == 0.0)
      throw std::invalid_argument("pv_subtracted_integral: bad pole/residue");
    if (!(p.pole - lo > guard) || !(hi - p.pole > guard))
      throw PoleLocationError("principal value pole at or near an integration boundary");
  }
  const double min_sep = 10.0 * opt.tol;
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      if (std::abs(poles[i].pole - poles[j].pole) <= min_sep)
        throw PoleLocationError("principal value poles closer than the separation guard");

  auto subtracted = [&fn, poles](double p) {
    double s = fn(p);
    for (const auto& pl : poles) s -= pl.residue / (p - pl.pole);
    return s;
  };

  // Quadrature nodes must never approach a pole: the denominator of fn is
  // known only to eps*|scale| there, so the subtraction noise grows like
  // 1/delta^2 (an exact hit is inf - inf). A symmetric window around each
  // pole leaves the adaptive domain entirely; across it the odd pole part
  // integrates to zero and the smooth even part is a trapezoid with
  // O(h'' r^3) error at r = 1e-5 * span.
  std::vector<PoleSubtraction> sorted(poles.begin(), poles.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const PoleSubtraction& a, const PoleSubtraction& b) {
              return a.pole < b.pole;
            });
  std::vector<double> radius(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double r = 1e-5 * width;
    r = std::min(r, 0.45 * (sorted[i].pole - lo));
    r = std::min(r, 0.45 * (hi - sorted[i].pole));
    if (i > 0) r = std::min(r, 0.25 * (sorted[i].pole - sorted[i - 1].pole));
    if (i + 1 < sorted.size())
      r = std::min(r, 0.25 * (sorted[i + 1].pole - sorted[i].pole));
    radius[i] = r;
  }

  QuadratureOptions seg = opt;
  seg.tol = opt.tol / static_cast<double>(sorted.size() + 1);
  double total = 0.0;
  long used = 0;
  double cursor = lo;
  auto run_segment = [&](double a, double b) {
    if (!(b - a > 0.0)) return;
    seg.max_eval = opt.max_eval - used;
    const auto r = integrate_adaptive(subtracted, a, b, seg);
    total += r.value;
    used += r.evaluations;
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    run_segment(cursor, sorted[i].pole - radius[i]);
    total += radius[i] * (subtracted(sorted[i].pole - radius[i]) +
                          subtracted(sorted[i].pole + radius[i]));
    cursor = sorted[i].pole + radius[i];
  }
  run_segment(cursor, hi);
  return total;
}

double principal_value_integral(const std::function<double(double)>& fn, double lo,
                                double hi, std::span<const PoleSubtraction> poles,
                                QuadratureOptions opt) {
  double value = pv_subtracted_integral(fn, lo, hi, poles, opt);
  for (const auto& p : poles) value += pv_log_term(lo, hi, p);
  return value;
}

double find_root_bracketed(const std::function<double(double)>& fn, double lo,
                           double hi, RootOptions opt) {
  if (!(lo < hi)) throw std::invalid_argument("find_root_bracketed: need lo < hi");
  double a = lo, b = hi;
  double fa = fn(a), fb = fn(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw NoSignChangeError("find_root_bracketed: no sign change on [lo, hi]");

  double c = a, fc = fa;
  double d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * opt.xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::abs(d) > tol1)
      b += d;
    else
      b += (xm > 0.0 ? tol1 : -tol1);
    fb = fn(b);
  }
  throw BudgetExceededError("find_root_bracketed: iteration budget exceeded",
                            std::complex<double>(b), std::abs(c - b));
}

std::pair<double, double> expand_bracket(const std::function<double(double)>& fn,
                                         double lo, double hi, int max_expansions) {
  if (!(0.0 < lo) || !(lo < hi))
    throw std::invalid_argument("expand_bracket: need 0 < lo < hi");
  double flo = fn(lo), fhi = fn(hi);
  for (int i = 0; i <= max_expansions; ++i) {
    if (flo == 0.0) return {lo, lo};
    if (fhi == 0.0) return {hi, hi};
    if ((flo > 0.0) != (fhi > 0.0)) return {lo, hi};
    lo *= 0.5;
    hi *= 2.0;
    flo = fn(lo);
    fhi = fn(hi);
  }
  throw NoSignChangeError("expand_bracket: no sign change within expansion budget");
}

std::vector<double> default_eps_schedule(double scale) {
  if (!(scale > 0)) throw std::invalid_argument("default_eps_schedule: scale must be > 0");
  return {1e-2 * scale, 5e-3 * scale, 2.5e-3 * scale, 1.25e-3 * scale};
}

std::complex<double> neville_extrapolate_to_zero(
    std::span<const double> xs, std::span<const std::complex<double>> ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("neville_extrapolate_to_zero: size mismatch");
  std::vector<std::complex<double>> t(ys.begin(), ys.end());
  const std::size_t n = t.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xi = xs[i], xj = xs[i + level];
      t[i] = ((0.0 - xj) * t[i] - (0.0 - xi) * t[i + 1]) / (xi - xj);
    }
  return t[0];
}

std::complex<double> oscillatory_integral_damped(
    const std::function<std::complex<double>(double, double)>& fn, double lo,
    double hi, double phase_rate, std::span<const double> eps_schedule,
    QuadratureOptions opt) {
  if (eps_schedule.size() < 2)
    throw std::invalid_argument("oscillatory_integral_damped: need >= 2 eps values");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0))
      throw std::invalid_argument("oscillatory_integral_damped: eps must be > 0");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw std::invalid_argument(
          "oscillatory_integral_damped: eps schedule must be strictly decreasing");
  }

  QuadratureOptions local = opt;
  const double cycles = std::abs(phase_rate) * (hi - lo) / 4.0;
  const int panels = static_cast<int>(std::clamp(std::ceil(cycles), 1.0, 16384.0));
  local.initial_intervals = std::max(opt.initial_intervals, panels);

  std::vector<std::complex<double>> values;
  values.reserve(eps_schedule.size());
  for (double eps : eps_schedule) {
    auto integrand = [&fn, eps](double p) { return fn(p, eps); };
    values.push_back(integrate_adaptive(integrand, lo, hi, local).value);
  }

  // Successive estimates must contract toward the limit before extrapolating.
  const double floor = 1e-13 * (1.0 + std::abs(values.back()));
  for (std::size_t i = 2; i < values.size(); ++i) {
    const double d_prev = std::abs(values[i - 1] - values[i - 2]);
    const double d_cur = std::abs(values[i] - values[i - 1]);
    if (d_cur > 1.25 * d_prev + floor)
      throw ExtrapolationDivergenceError(
          "oscillatory_integral_damped: eps sequence does not contract");
  }
  return neville_extrapolate_to_zero(eps_schedule, values);
}

}  // namespace mldelta
