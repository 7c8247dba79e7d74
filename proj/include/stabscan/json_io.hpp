#pragma once

#include "stabscan/atlas.hpp"
#include "stabscan/orbit.hpp"
#include "stabscan/slicing.hpp"
#include "stabscan/walk.hpp"

#include <json.hpp>

namespace stabscan {

using json = nlohmann::ordered_json;

// 6 decimals; infinities become the strings "inf" / "-inf", NaN becomes null
json num6(double x);
json kclass_json(const KClass& k);
json charge_json(const ChargeD& z);
json charge_json(const ChargeQ& z);

// "triple" / "pair" for a2, the chamber key otherwise
std::string chamber_label(const StabilityPoint& p);

json category_model_json(const CategoryModel& d);
json point_json(const StabilityPoint& p);
json atlas_json(const ChamberAtlas& at);
json boundary_json(const ChamberAtlas& at);
json orbit_json(const StabilityPoint& p, const DiskReport& r);
json walk_json(const WalkReport& r);

}  // namespace stabscan
