#pragma once

#include "qmeix/types.hpp"

namespace qmeix::special {

// Principal log Gamma for complex z (Lanczos, g = 607/128, 15 terms),
// relative accuracy ~1e-14 away from the poles. For Re z < 0.5 the value is
// obtained through the recurrence log G(z) = log G(z+1) - log z, so the real
// part (all that |Gamma|^2 uses) is exact up to rounding on the whole strip.
Complex log_gamma(Complex z);

// |Gamma(z)|^2 = exp(2 Re log_gamma(z)).
double abs_gamma_sq(Complex z);

}  // namespace qmeix::special
