#pragma once

#include <string>

#include "core/empirical.hpp"
#include "core/geometry.hpp"

namespace hsd::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// {"vertices": [[x, y], ...]}, CCW; an empty list encodes the empty region.
// Parsing validates finiteness and convex position.
std::string region_to_json(const geom::ConvexRegion& r);
geom::ConvexRegion region_from_json(const std::string& text);

// CSV with header "x,y,w"
emp::WeightedSample sample_from_csv(const std::string& text);
std::string sample_to_csv(const emp::WeightedSample& s);

}  // namespace hsd::io
