#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "fdelab/error.hpp"

namespace fdelab::spectrum {

using Complex = std::complex<double>;

/// p(z) e^{-delay z}, with p given by ascending coefficients.
struct QuasiTerm {
  std::vector<Complex> coeffs;
  double delay = 0.0;
};

/// g(z) = sum_j p_j(z) e^{-tau_j z}: the characteristic function of a linear
/// retarded equation with constant coefficients and constant delays.
class QuasiPolynomial {
 public:
  explicit QuasiPolynomial(std::vector<QuasiTerm> terms)
      : terms_(std::move(terms)) {
    if (terms_.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "quasi-polynomial has no terms");
    }
  }

  Complex value(Complex z) const {
    Complex sum = 0.0;
    for (const QuasiTerm& term : terms_) {
      sum += horner(term.coeffs, z) * std::exp(-term.delay * z);
    }
    return sum;
  }

  /// g'(z) = sum_j (p_j'(z) - tau_j p_j(z)) e^{-tau_j z}.
  Complex derivative(Complex z) const {
    Complex sum = 0.0;
    for (const QuasiTerm& term : terms_) {
      Complex p = 0.0, dp = 0.0;
      for (auto it = term.coeffs.rbegin(); it != term.coeffs.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
      }
      sum += (dp - term.delay * p) * std::exp(-term.delay * z);
    }
    return sum;
  }

  const std::vector<QuasiTerm>& terms() const { return terms_; }

 private:
  static Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex p = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * z + *it;
    return p;
  }

  std::vector<QuasiTerm> terms_;
};

/// z^2 e^z + 1, the characteristic function of x''(t) = -x(t - 1).
inline QuasiPolynomial retarded_oscillator() {
  return QuasiPolynomial({{{0.0, 0.0, 1.0}, -1.0}, {{1.0}, 0.0}});
}

/// z^2 + 1, the same oscillator without delay.
inline QuasiPolynomial undelayed_oscillator() {
  return QuasiPolynomial({{{1.0, 0.0, 1.0}, 0.0}});
}

}  // namespace fdelab::spectrum
