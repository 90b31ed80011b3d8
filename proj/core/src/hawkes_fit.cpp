#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "bppm/error.hpp"
#include "bppm/hawkes.hpp"
#include "hawkes_detail.hpp"

namespace bppm::hawkes {
namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

Params from_log(const Vec3& theta) { return {std::exp(theta[0]), std::exp(theta[1]), std::exp(theta[2])}; }

// Negative log-likelihood with gradient and Hessian in log-parameter space.
struct LogSpaceEval {
  double f = 0.0;
  Vec3 g = Vec3::Zero();
  Mat3 h = Mat3::Zero();
};

template <class Weights>
LogSpaceEval evaluate(const Vec3& theta, std::span<const double> times, const Weights& weights, double horizon) {
  const Params p = from_log(theta);
  const Derivatives d = detail::evaluate_derivatives(p, times, weights, horizon);
  const Vec3 scale(p.alpha, p.beta, p.lambda_inf);
  LogSpaceEval out;
  out.f = -d.value;
  for (int i = 0; i < 3; ++i) {
    out.g[i] = -scale[i] * d.gradient[static_cast<std::size_t>(i)];
    for (int j = 0; j < 3; ++j)
      out.h(i, j) = -scale[i] * scale[j] * d.hessian[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    out.h(i, i) += out.g[i];
  }
  return out;
}

template <class Weights>
FitResult fit_impl(std::span<const double> times, const Weights& weights, double total_weight, double horizon,
                   const FitOptions& opt) {
  if (!(horizon > 0.0)) throw ArgumentError("fit horizon must be positive");
  FitResult result;
  if (times.empty() || total_weight <= 0.0) {
    result.params = {0.0, opt.beta_floor, opt.lambda_floor};
    result.log_likelihood = -opt.lambda_floor * horizon;
    result.converged = true;
    return result;
  }
  if (opt.poisson_only) {
    const double lam = std::clamp(total_weight / horizon, opt.lambda_floor, opt.upper_bound);
    result.params = {0.0, opt.init ? opt.init->beta : 1.0, lam};
    result.log_likelihood = total_weight * std::log(lam) - lam * horizon;
    result.converged = true;
    return result;
  }

  const Vec3 lo(std::log(opt.alpha_floor), std::log(opt.beta_floor), std::log(opt.lambda_floor));
  const Vec3 hi = Vec3::Constant(std::log(opt.upper_bound));
  Params init = opt.init.value_or(Params{0.5, 1.0, total_weight / horizon});
  Vec3 theta(std::log(std::max(init.alpha, opt.alpha_floor)), std::log(std::max(init.beta, opt.beta_floor)),
             std::log(std::max(init.lambda_inf, opt.lambda_floor)));
  theta = theta.cwiseMax(lo).cwiseMin(hi);

  LogSpaceEval cur = evaluate(theta, times, weights, horizon);
  const double tol = opt.gradient_tolerance;
  int it = 0;
  bool converged = false;
  for (; it < opt.max_iterations; ++it) {
    // Variables pinned at a bound with the gradient pushing outward stay fixed.
    std::array<bool, 3> free{};
    for (int i = 0; i < 3; ++i) {
      const bool at_lo = theta[i] <= lo[i] + 1e-12 && cur.g[i] > 0.0;
      const bool at_hi = theta[i] >= hi[i] - 1e-12 && cur.g[i] < 0.0;
      free[static_cast<std::size_t>(i)] = !(at_lo || at_hi);
    }
    double gmax = 0.0;
    for (int i = 0; i < 3; ++i)
      if (free[static_cast<std::size_t>(i)]) gmax = std::max(gmax, std::abs(cur.g[i]));
    if (gmax <= tol * std::max(1.0, std::abs(cur.f))) {
      converged = true;
      break;
    }

    Mat3 hf = cur.h;
    Vec3 gf = cur.g;
    for (int i = 0; i < 3; ++i) {
      if (free[static_cast<std::size_t>(i)]) continue;
      hf.row(i).setZero();
      hf.col(i).setZero();
      hf(i, i) = 1.0;
      gf[i] = 0.0;
    }
    Vec3 step;
    double mu = 0.0;
    const double diag_scale = std::max(1e-12, hf.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::LLT<Mat3> llt(hf + mu * Mat3::Identity());
      if (llt.info() == Eigen::Success) {
        step = -llt.solve(gf);
        if (step.allFinite()) break;
      }
      mu = mu == 0.0 ? 1e-10 * diag_scale : mu * 10.0;
    }
    // Newton decrement: the predicted gain is already at roundoff level
    if (-gf.dot(step) <= 2e-12 * std::max(1.0, std::abs(cur.f))) {
      converged = true;
      break;
    }
    const double max_step = step.cwiseAbs().maxCoeff();
    if (max_step > 5.0) step *= 5.0 / max_step;

    bool accepted = false;
    double t = 1.0;
    for (int ls = 0; ls < 50; ++ls, t *= 0.5) {
      Vec3 trial = (theta + t * step).cwiseMax(lo).cwiseMin(hi);
      const Vec3 delta = trial - theta;
      if (delta.cwiseAbs().maxCoeff() == 0.0) break;
      LogSpaceEval next = evaluate(trial, times, weights, horizon);
      if (std::isfinite(next.f) && next.f <= cur.f + 1e-4 * cur.g.dot(delta)) {
        theta = trial;
        cur = next;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No representable descent left along the Newton direction.
      converged = gmax <= 1e-5 * std::max(1.0, std::abs(cur.f));
      break;
    }
  }
  result.params = from_log(theta);
  result.log_likelihood = -cur.f;
  result.iterations = it;
  result.converged = converged;
  return result;
}

}  // namespace

FitResult fit_mle(std::span<const double> times, double horizon, const FitOptions& options) {
  return fit_impl(times, detail::UnitWeights{}, static_cast<double>(times.size()), horizon, options);
}

FitResult fit_weighted_mle(std::span<const double> times, std::span<const double> weights, double horizon,
                           const FitOptions& options) {
  if (weights.size() != times.size()) throw ArgumentError("weights and times differ in length");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  return fit_impl(times, detail::SpanWeights{weights}, total, horizon, options);
}

}  // namespace bppm::hawkes
