#pragma once

#include "stabscan/atlas.hpp"
#include "stabscan/slicing.hpp"

#include <map>
#include <string>
#include <vector>

namespace stabscan {

enum class RenderStyle { Poincare, Schematic };

struct RenderSpec {
    RenderStyle style = RenderStyle::Schematic;
    int depth = 4;
    bool chambers = true, walls = true, speiser = true, exchange = true, labels = true;
    bool force_poincare = false;  // allow the hyperbolic layout for any driver
    int size = 600;               // pixels
    std::string wall_color = "#333333";
    std::string speiser_color = "#d62728";
    std::string exchange_color = "#1f77b4";
    std::string dot_color = "#000000";
    std::string shade_color = "#9467bd";
    int max_labels = 64;
    // angles in degrees for drivers without boundary coordinates
    std::map<std::string, double> anchors{{"s", 90.0}, {"e", 210.0}, {"t", 330.0}};
};

struct RenderResult {
    std::string svg;
    std::vector<std::string> warnings;
};

// throws PreconditionError for the Poincare style on a parabolic driver without force_poincare
RenderResult render_svg(const ChamberAtlas& at, const CategoryModel& d, const RenderSpec& spec);

}  // namespace stabscan
