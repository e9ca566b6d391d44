#pragma once

#include <string>

#include "shelfplan/plan.hpp"
#include "shelfplan/world.hpp"

namespace shelfplan {

/// Scene (and optionally solution) rendering: workspace, grid dots, solid
/// start discs, dashed goal circles, numbered action arrows with transit and
/// transfer polylines.
std::string render_svg(const Instance& instance, const Plan* plan);

void render_svg_file(const Instance& instance, const Plan* plan, const std::string& path);

}  // namespace shelfplan
