#pragma once

// Shared kernels for the exponential Hawkes likelihood. Internal header.

#include <cmath>
#include <span>

#include "bppm/hawkes.hpp"

namespace bppm::hawkes::detail {

// phi1(x) = (1 - e^{-x}) / x, so the compensator jump of an event u time units
// before the horizon is (alpha/beta)(1 - e^{-beta u}) = alpha * u * phi1(beta u).
// phi2 = phi1' and phi3 = phi2' follow from d/dbeta [u phi1(beta u)] = u^2 phi2(beta u)
// and d/dbeta [u^2 phi2(beta u)] = u^3 phi3(beta u). Below kSeriesLimit the
// closed forms cancel badly, so Taylor series are used there (truncation
// error below 1e-19; the closed forms lose at most ~eps/x^3 above it).

inline constexpr int kSeriesTerms = 12;
inline constexpr double kSeriesLimit = 0.25;

// Coefficients of x^k: phi1 (-1)^k/(k+1)!, phi2 (-1)^{k+1}(k+1)/(k+2)!,
// phi3 (-1)^k (k+1)(k+2)/(k+3)!.
struct SeriesTables {
  double p1[kSeriesTerms]{};
  double p2[kSeriesTerms]{};
  double p3[kSeriesTerms]{};
  constexpr SeriesTables() {
    for (int k = 0; k < kSeriesTerms; ++k) {
      double f1 = 1.0;  // 1/(k+1)!
      for (int j = 2; j <= k + 1; ++j) f1 /= j;
      const double f2 = f1 / (k + 2);
      const double f3 = f2 / (k + 3);
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      p1[k] = sign * f1;
      p2[k] = -sign * (k + 1) * f2;
      p3[k] = sign * (k + 1) * (k + 2) * f3;
    }
  }
};
inline constexpr SeriesTables kSeries{};

inline double horner(const double (&c)[kSeriesTerms], double x) noexcept {
  double sum = c[kSeriesTerms - 1];
  for (int k = kSeriesTerms - 2; k >= 0; --k) sum = sum * x + c[k];
  return sum;
}

inline double phi1(double x) noexcept {
  if (x < kSeriesLimit) return horner(kSeries.p1, x);
  return -std::expm1(-x) / x;
}

inline double phi2(double x) noexcept {
  if (x < kSeriesLimit) return horner(kSeries.p2, x);
  const double e = std::exp(-x);
  return (x * e + std::expm1(-x)) / (x * x);
}

inline double phi3(double x) noexcept {
  if (x < kSeriesLimit) return horner(kSeries.p3, x);
  return -std::exp(-x) / x - 2.0 * phi2(x) / x;
}

// phi1, phi2, phi3 at once with a single exponential.
inline void phi123(double x, double& p1, double& p2, double& p3) noexcept {
  if (x < kSeriesLimit) {
    p1 = horner(kSeries.p1, x);
    p2 = horner(kSeries.p2, x);
    p3 = horner(kSeries.p3, x);
    return;
  }
  const double e = std::exp(-x);
  const double inv = 1.0 / x;
  p1 = (1.0 - e) * inv;
  p2 = (e - p1) * inv;
  p3 = -e * inv - 2.0 * p2 * inv;
}

struct UnitWeights {
  static constexpr bool kWeighted = false;
  double operator[](std::size_t) const noexcept { return 1.0; }
};

struct SpanWeights {
  static constexpr bool kWeighted = true;
  std::span<const double> w;
  double operator[](std::size_t s) const noexcept { return w[s]; }
};

// Value-only evaluation via the excitation recursion.
template <class Weights>
double evaluate_value(const Params& p, std::span<const double> times, const Weights& weights, double horizon) {
  const double a = p.alpha;
  const double b = p.beta;
  double value = 0.0;
  double comp = 0.0;
  double excitation = 0.0;  // sum_{r<s} w_r e^{-beta (t_s - t_r)}
  double prev_w = 0.0;
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double w = weights[s];
    if (s > 0) excitation = std::exp(-b * (times[s] - times[s - 1])) * (excitation + prev_w);
    prev_w = w;
    if constexpr (Weights::kWeighted) {
      if (w == 0.0) continue;
    }
    const double u = horizon - times[s];
    value += w * std::log(p.lambda_inf + a * excitation);
    comp += w * u * phi1(b * u);
  }
  return value - p.lambda_inf * horizon - a * comp;
}

template <class Weights>
Derivatives evaluate_derivatives(const Params& p, std::span<const double> times, const Weights& weights,
                                 double horizon) {
  const double a = p.alpha;
  const double b = p.beta;
  const double lam = p.lambda_inf;
  double value = 0.0;
  double r = 0.0, d = 0.0, sq = 0.0;  // sum w e, sum w dt e, sum w dt^2 e
  double prev_w = 0.0;
  double a1 = 0, a2 = 0, a3 = 0;
  double b11 = 0, b12 = 0, b13 = 0, b22 = 0, b23 = 0, b33 = 0, c3 = 0;
  double g0 = 0, g1 = 0, g2 = 0;
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double w = weights[s];
    if (s > 0) {
      const double dt = times[s] - times[s - 1];
      const double e = std::exp(-b * dt);
      const double base = r + prev_w;
      const double sq_new = e * (sq + 2.0 * dt * d + dt * dt * base);
      const double d_new = e * (d + dt * base);
      r = e * base;
      d = d_new;
      sq = sq_new;
    }
    prev_w = w;
    if constexpr (Weights::kWeighted) {
      if (w == 0.0) continue;
    }
    const double x = lam + a * r;
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    value += w * std::log(x);
    a1 += w * inv;
    a2 += w * r * inv;
    a3 += w * d * inv;
    b11 += w * inv2;
    b12 += w * r * inv2;
    b13 += w * d * inv2;
    b22 += w * r * r * inv2;
    b23 += w * r * d * inv2;
    b33 += w * d * d * inv2;
    c3 += w * sq * inv;
    const double u = horizon - times[s];
    const double xu = b * u;
    double p1, p2, p3;
    phi123(xu, p1, p2, p3);
    g0 += w * u * p1;
    g1 += w * u * u * p2;
    g2 += w * u * u * u * p3;
  }
  Derivatives out;
  out.value = value - lam * horizon - a * g0;
  // order: alpha, beta, lambda
  out.gradient = {a2 - g0, -a * a3 - a * g1, a1 - horizon};
  auto& h = out.hessian;
  h[0][0] = -b22;
  h[0][1] = h[1][0] = -a3 + a * b23 - g1;
  h[0][2] = h[2][0] = -b12;
  h[1][1] = a * c3 - a * a * b33 - a * g2;
  h[1][2] = h[2][1] = a * b13;
  h[2][2] = -b11;
  return out;
}

}  // namespace bppm::hawkes::detail
