#pragma once

#include <functional>
#include <limits>

#include "framelift/geometry.hpp"

namespace framelift {

/// Options for the direct-search minimizer on the unit sphere.
struct SphereSearchOptions {
  double initial_step = 0.5;
  int max_evals = 6000;
  double f_spread_tol = 1e-15;
  double simplex_tol = 1e-13;
  // Early exit as soon as a value at or below this is seen.
  double success_value = -std::numeric_limits<double>::infinity();
};

struct SphereSearchResult {
  RealVector x;      // unit vector
  double value = 0;  // f(x)
  int evals = 0;
};

/// Nelder-Mead applied to f restricted to the unit sphere; every trial point
/// is normalized before evaluation. The objective must accept unit vectors.
SphereSearchResult minimize_on_sphere(const std::function<double(const RealVector&)>& f,
                                      const RealVector& start,
                                      const SphereSearchOptions& opt = {});

}  // namespace framelift
