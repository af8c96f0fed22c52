#pragma once

#include <string>
#include <vector>

#include "okflow/geometry.hpp"

namespace okflow::cli {

// Static SVG: the domain disk (if any), the initial curve in grey and the
// final curve with edges coloured by |residual| (blue low, red high).
std::string render_svg(const Region* initial, const Region& final,
                       const std::vector<std::vector<double>>* residual);

}  // namespace okflow::cli
