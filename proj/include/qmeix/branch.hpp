#pragma once

#include <cmath>
#include <complex>

#include "qmeix/types.hpp"

namespace qmeix::cf {

// arg(to/from) in (-pi, pi].
inline double phase_step(const Complex& from, const Complex& to) {
  return std::arg(to / from);
}

// Continuous square root of a nonvanishing path w(t) with w(0) = 1.
// Each call hands in the next sample of w; of the two roots the one closer
// to the previous root is chosen, which is the continuous branch as long as
// successive samples rotate by less than pi.
class SqrtBranchTracker {
 public:
  Complex next(const Complex& w) {
    Complex s = std::sqrt(w);
    if ((s * std::conj(prev_)).real() < 0.0) s = -s;
    prev_ = s;
    return s;
  }
  const Complex& current() const { return prev_; }

 private:
  Complex prev_{1.0, 0.0};
};

}  // namespace qmeix::cf
