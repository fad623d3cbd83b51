#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvelink/curves.hpp"

namespace curvelink {

// Curve file schema:
//   {"space": "r3"|"s3"|"h3",
//    "kind": "great_circle"|"polygonal"|"embedded_r3",
//    "orientation": 1|-1, ...}
// great_circle: "u", "v" (4 reals each, S³ only)
// polygonal:    "points": rows of 3 reals (r3) or 4 reals (s3/h3)
// embedded_r3:  "scale", "curve": nested r3 curve object

using json = nlohmann::ordered_json;

inline Space space_from_string(const std::string& s) {
    if (s == "r3") return Space::R3;
    if (s == "s3") return Space::S3;
    if (s == "h3") return Space::H3;
    throw precondition_error("unknown space tag: " + s);
}

namespace detail {

inline Vec4 point_from_json(Space space, const json& row) {
    if (space == Space::R3) {
        if (row.size() != 3) throw precondition_error("r3 points are 3 reals");
        return {0.0, row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
    }
    if (row.size() != 4) throw precondition_error("s3/h3 points are 4 reals");
    return {row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
            row[3].get<double>()};
}

inline json point_to_json(Space space, const Vec4& p) {
    if (space == Space::R3) return json::array({p[1], p[2], p[3]});
    return json::array({p[0], p[1], p[2], p[3]});
}

}  // namespace detail

inline Curve curve_from_json(const json& j) {
    Space space = space_from_string(j.at("space").get<std::string>());
    std::string kind = j.at("kind").get<std::string>();
    int orient = j.value("orientation", 1);
    if (orient != 1 && orient != -1)
        throw precondition_error("orientation must be 1 or -1");

    if (kind == "great_circle") {
        if (space != Space::S3)
            throw precondition_error("great_circle curves live on s3");
        Vec4 u = detail::point_from_json(space, j.at("u"));
        Vec4 v = detail::point_from_json(space, j.at("v"));
        return great_circle(u, v).with_orientation(orient);
    }
    if (kind == "polygonal") {
        std::vector<Vec4> pts;
        for (const auto& row : j.at("points"))
            pts.push_back(detail::point_from_json(space, row));
        for (const auto& p : pts)
            if (point_residual(space, p) > 1e-8)
                throw precondition_error("polygonal point violates the space constraint");
        return Curve::polygonal(space, std::move(pts)).with_orientation(orient);
    }
    if (kind == "embedded_r3") {
        if (space == Space::R3)
            throw precondition_error("embedded_r3 curves live on s3 or h3");
        double scale = j.at("scale").get<double>();
        Curve base = curve_from_json(j.at("curve"));
        return embed_r3_curve(space, base, scale).with_orientation(orient);
    }
    throw precondition_error("unknown curve kind: " + kind);
}

inline json great_circle_to_json(const Vec4& u, const Vec4& v, int orient = 1) {
    json j;
    j["space"] = "s3";
    j["kind"] = "great_circle";
    j["u"] = detail::point_to_json(Space::S3, u);
    j["v"] = detail::point_to_json(Space::S3, v);
    j["orientation"] = orient;
    return j;
}

inline json polygonal_to_json(Space space, const std::vector<Vec4>& pts, int orient = 1) {
    json j;
    j["space"] = to_string(space);
    j["kind"] = "polygonal";
    json rows = json::array();
    for (const auto& p : pts) rows.push_back(detail::point_to_json(space, p));
    j["points"] = std::move(rows);
    j["orientation"] = orient;
    return j;
}

inline json embedded_to_json(Space space, double scale, const json& r3_curve,
                             int orient = 1) {
    json j;
    j["space"] = to_string(space);
    j["kind"] = "embedded_r3";
    j["scale"] = scale;
    j["curve"] = r3_curve;
    j["orientation"] = orient;
    return j;
}

inline Curve load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open curve file: " + path);
    json j;
    in >> j;
    return curve_from_json(j);
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw precondition_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace curvelink
