#include "schottky/group_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "schottky/error.hpp"

namespace schottky {

using ojson = nlohmann::ordered_json;

GroupDocument parse_group_document(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail("InvalidDocument", e.what());
    }
    if (!j.is_object()) fail("InvalidDocument", "top level must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "genus" && key != "circles" && key != "label") fail("InvalidDocument", "unknown field " + key);
    if (!j.contains("genus") || !j["genus"].is_number_integer()) fail("InvalidDocument", "genus must be an integer");
    if (!j.contains("circles") || !j["circles"].is_array()) fail("InvalidDocument", "circles must be an array");
    GroupDocument doc;
    doc.genus = j["genus"].get<int>();
    for (const auto& c : j["circles"]) {
        if (!c.is_object()) fail("InvalidDocument", "circle entries must be objects");
        for (const char* k : {"center_re", "center_im", "radius"})
            if (!c.contains(k) || !c[k].is_number()) fail("InvalidDocument", std::string("circle needs numeric ") + k);
        doc.circles.push_back({{c["center_re"].get<double>(), c["center_im"].get<double>()}, c["radius"].get<double>()});
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) fail("InvalidDocument", "label must be a string");
        doc.label = j["label"].get<std::string>();
    }
    return doc;
}

std::string dump_group_document(const GroupDocument& doc) {
    ojson j;
    j["genus"] = doc.genus;
    j["circles"] = ojson::array();
    for (const auto& c : doc.circles)
        j["circles"].push_back({{"center_re", c.center.real()}, {"center_im", c.center.imag()}, {"radius", c.radius}});
    if (doc.label) j["label"] = *doc.label;
    return j.dump(2) + "\n";
}

GroupDocument load_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("InvalidDocument", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_group_document(ss.str());
}

namespace {

GroupDocument real_centers(int g, std::vector<double> centers, double radius, std::string label) {
    GroupDocument d;
    d.genus = g;
    for (double c : centers) d.circles.push_back({{c, 0.0}, radius});
    d.label = std::move(label);
    return d;
}

}  // namespace

GroupDocument preset(const std::string& name) {
    // Reflection z -> -z swaps C_i and C_{i+g}, so letters k and k+g play
    // symmetric roles.
    if (name == "sym2") return real_centers(2, {-3, -1, 3, 1}, 0.5, "sym2");
    if (name == "sym3") return real_centers(3, {-5, -3, -1, 5, 3, 1}, 0.4, "sym3");
    if (name == "overlap2") return real_centers(2, {-1, -0.5, 0.5, 1}, 0.6, "overlap2");
    fail("UnknownPreset", name);
}

std::vector<std::string> preset_names() { return {"sym2", "sym3", "overlap2"}; }

SchottkyGroup build_group(const GroupDocument& doc) { return build_schottky(doc.genus, doc.circles); }

GroupDocument scale_radii(GroupDocument doc, double factor) {
    if (!(factor > 0)) fail("InvalidArgument", "scale factor must be positive");
    for (auto& c : doc.circles) c.radius *= factor;
    return doc;
}

}  // namespace schottky
