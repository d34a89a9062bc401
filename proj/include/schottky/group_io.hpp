#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schottky/moebius.hpp"

namespace schottky {

// Circle-pairing data as read from a group document:
//   {"genus": g, "circles": [{"center_re", "center_im", "radius"}, ...], "label": ...}
// Circles are in marking order, C_i paired with C_{i+g}.
struct GroupDocument {
    int genus = 0;
    std::vector<CircleSpec> circles;
    std::optional<std::string> label;
};

GroupDocument parse_group_document(const std::string& text);
// Keys are written in the order genus, circles, label; doubles round-trip exactly.
std::string dump_group_document(const GroupDocument& doc);
GroupDocument load_group_file(const std::string& path);

// "sym2", "sym3" (reference groups) and "overlap2" (invalid on purpose).
GroupDocument preset(const std::string& name);
std::vector<std::string> preset_names();

SchottkyGroup build_group(const GroupDocument& doc);
// Every radius multiplied by `factor`, centers unchanged.
GroupDocument scale_radii(GroupDocument doc, double factor);

}  // namespace schottky
