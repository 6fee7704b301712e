#pragma once

#include <string>
#include <vector>

#include "ambient.hpp"

namespace qll {

// Closed-form model spaces, all on a global Cartesian chart.
//   euclidean
//   schwarzschild        m >= 0
//   reissner_nordstrom   m >= 0, q   (carries E = q/r^2 radial)
//   hyperboloid          a > 0       (k = g/a)
//   paraboloid           alpha > 0   (graph t = alpha r^2 / 2 in Minkowski)
//   hyperbolic           a > 0 or Lambda < 0
//   sphere3              R > 0 or Lambda > 0 (stereographic chart)
AmbientSpace make_space(const std::string& name, const Params& params);

std::vector<std::string> catalog_names();

}  // namespace qll
