#include "qmeix/gammafn.hpp"

#include <cmath>

namespace qmeix::special {

namespace {

// Lanczos coefficients for g = 607/128 (Godfrey's set).
constexpr double kG = 607.0 / 128.0;
constexpr double kCoeff[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

Complex lanczos_log_gamma(Complex z) {
  // valid for Re z >= 0.5
  Complex sum = kCoeff[0];
  for (int k = 1; k < 15; ++k) sum += kCoeff[k] / (z - 1.0 + double(k));
  const Complex base = z + kG - 0.5;
  return kLogSqrt2Pi + (z - 0.5) * std::log(base) - base + std::log(sum);
}

}  // namespace

Complex log_gamma(Complex z) {
  int shifts = 0;
  Complex shift_sum{0.0, 0.0};
  while (z.real() < 0.5) {
    shift_sum += std::log(z);
    z += 1.0;
    if (++shifts > 64) break;  // far-left poles are out of this artifact's domain
  }
  return lanczos_log_gamma(z) - shift_sum;
}

double abs_gamma_sq(Complex z) { return std::exp(2.0 * log_gamma(z).real()); }

}  // namespace qmeix::special
