#pragma once

#include "greenopt/types.hpp"

namespace greenopt {

// Cylinder functions of integer order 0..2 and positive real argument.
// Power series (extended precision) below x = 12, Hankel asymptotic
// expansion above. Relative accuracy <= 1e-10 on [1e-3, 1e3] away from zeros.
double bessel_j(int n, double x);
double bessel_y(int n, double x);

/// H_n^(kind)(x): kind 1 is J + iY, kind 2 is J - iY.
Complex hankel(int n, int kind, double x);

}  // namespace greenopt
