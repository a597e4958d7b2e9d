#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "fdelab/dde/integrate.hpp"
#include "fdelab/spectrum/roots.hpp"

namespace fdelab::spectrum {

/// x(t) = Re sum_k a_k e^{z_k t}. Taking the real part stands in for adding
/// each conjugate pair a e^{zt} + conj(a) e^{conj(z) t}, halved.
class ExponentialSolution {
 public:
  ExponentialSolution() = default;
  explicit ExponentialSolution(std::vector<std::pair<Complex, Complex>> terms)
      : terms_(std::move(terms)) {}

  double value(double t) const { return moment(t, 0); }
  double derivative(double t) const { return moment(t, 1); }
  double second_derivative(double t) const { return moment(t, 2); }
  double operator()(double t) const { return value(t); }

  /// (amplitude, exponent) pairs.
  const std::vector<std::pair<Complex, Complex>>& terms() const {
    return terms_;
  }

 private:
  /// Re sum a z^n e^{zt}
  double moment(double t, int n) const {
    Complex sum = 0.0;
    for (const auto& [a, z] : terms_) {
      Complex zn = 1.0;
      for (int i = 0; i < n; ++i) zn *= z;
      sum += a * zn * std::exp(z * t);
    }
    return sum.real();
  }

  std::vector<std::pair<Complex, Complex>> terms_;
};

inline ExponentialSolution synthesize_solution(
    const std::vector<std::pair<Complex, SpectrumRoot>>& coeffs) {
  std::vector<std::pair<Complex, Complex>> terms;
  terms.reserve(coeffs.size());
  for (const auto& [a, root] : coeffs) terms.emplace_back(a, root.z);
  return ExponentialSolution(std::move(terms));
}

/// x''(t) = -x(t - 1) as the first-order system (x, x').
struct RetardedOscillator {
  dde::State<2> operator()(double t, const dde::State<2>& y,
                           dde::RhsContext<2>& ctx) const {
    ctx.note_delay(1.0);
    return {y[1], -ctx.history().state(t - 1.0)[0]};
  }
};

struct IntegratorComparison {
  double max_deviation = 0.0;
  std::size_t samples = 0;
  dde::Trajectory<2> trajectory;
};

/// Integrates x''(t) = -x(t - 1) on [0, t_end] from the past x on [-1, 0] and
/// returns the largest |x_numerical - x| on the grid k * sample_dt.
inline IntegratorComparison verify_against_integrator(
    const ExponentialSolution& x, dde::Tolerance tol = {}, double t_end = 10.0,
    double sample_dt = 0.01) {
  dde::PastFunction<2> past{
      [x](double t) { return dde::State<2>{x.value(t), x.derivative(t)}; },
      [x](double t) {
        return dde::State<2>{x.derivative(t), x.second_derivative(t)};
      },
      -1.0};
  IntegratorComparison out{
      0.0, 0, dde::integrate<2>(RetardedOscillator{}, past, 0.0, t_end, tol)};
  const long n = std::lround(t_end / sample_dt);
  for (long i = 0; i <= n; ++i) {
    const double t = std::min(t_end, static_cast<double>(i) * sample_dt);
    out.max_deviation = std::max(
        out.max_deviation, std::abs(out.trajectory.state(t)[0] - x.value(t)));
    ++out.samples;
  }
  return out;
}

inline IntegratorComparison verify_against_integrator(
    const SpectrumRoot& root, dde::Tolerance tol = {}, double t_end = 10.0) {
  return verify_against_integrator(synthesize_solution({{1.0, root}}), tol,
                                   t_end);
}

}  // namespace fdelab::spectrum
