#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parcelize/errors.hpp"
#include "parcelize/image_io.hpp"
#include "parcelize/polygon.hpp"

namespace parcelize {

/// Row-order affine transform from pixel to world coordinates:
/// X = c[0] + x*c[1] + y*c[2], Y = c[3] + x*c[4] + y*c[5].
struct Geotransform {
    std::array<double, 6> c{0, 1, 0, 0, 0, 1};

    Point apply(const Point& p) const {
        return Point{c[0] + p.x * c[1] + p.y * c[2], c[3] + p.x * c[4] + p.y * c[5]};
    }
};

namespace detail {

inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace detail

/// Canonical GeoJSON FeatureCollection text: one feature per line, fixed
/// 6-decimal coordinates, features in input order, rings explicitly closed.
/// The fixed formatting makes write -> read -> write byte-stable.
inline std::string to_geojson(const std::vector<Polygon>& polys,
                              const std::optional<Geotransform>& geo = std::nullopt) {
    std::ostringstream os;
    os << "{\n\"type\": \"FeatureCollection\",\n\"features\": [";
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const Polygon& p = polys[i];
        os << (i ? ",\n" : "\n");
        os << "{ \"type\": \"Feature\", \"properties\": { \"id\": " << p.id
           << ", \"area\": " << detail::fixed6(std::abs(signed_area(p)))
           << " }, \"geometry\": { \"type\": \"Polygon\", \"coordinates\": [[";
        auto emit = [&](const Point& raw) {
            const Point pt = geo ? geo->apply(raw) : raw;
            os << "[" << detail::fixed6(pt.x) << ", " << detail::fixed6(pt.y) << "]";
        };
        for (std::size_t k = 0; k < p.vertices.size(); ++k) {
            if (k) os << ", ";
            emit(p.vertices[k]);
        }
        os << ", ";
        emit(p.vertices.front());  // GeoJSON rings repeat the first position
        os << "]] } }";
    }
    os << "\n]\n}\n";
    return os.str();
}

inline void write_geojson(const std::vector<Polygon>& polys, const std::string& path,
                          const std::optional<Geotransform>& geo = std::nullopt) {
    detail::atomic_write(path, to_geojson(polys, geo));
}

/// Parses a FeatureCollection of Polygon features. Only the exterior ring is
/// used; the closing duplicate vertex is dropped and clockwise rings are
/// reversed to the library's counter-clockwise convention. Errors carry the
/// feature index.
inline std::vector<Polygon> read_geojson(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array())
        throw IoError(path + ": not a GeoJSON FeatureCollection");

    std::vector<Polygon> polys;
    const auto& features = doc["features"];
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto& f = features[i];
        const std::string where = path + ": feature " + std::to_string(i);
        if (!f.is_object() || f.value("type", "") != "Feature" || !f.contains("geometry"))
            throw IoError(where + ": malformed feature");
        const auto& g = f["geometry"];
        if (!g.is_object() || g.value("type", "") != "Polygon")
            throw IoError(where + ": geometry must be a Polygon");
        if (!g.contains("coordinates") || !g["coordinates"].is_array() ||
            g["coordinates"].empty())
            throw IoError(where + ": missing coordinates");

        const auto& ring = g["coordinates"][0];
        Polygon poly;
        poly.id = static_cast<std::int64_t>(polys.size());
        if (f.contains("properties") && f["properties"].is_object() &&
            f["properties"].contains("id") && f["properties"]["id"].is_number())
            poly.id = f["properties"]["id"].get<std::int64_t>();

        for (const auto& pos : ring) {
            if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
                throw IoError(where + ": malformed ring position");
            poly.vertices.push_back(Point{pos[0].get<double>(), pos[1].get<double>()});
        }
        if (poly.vertices.size() >= 2 && poly.vertices.front() == poly.vertices.back())
            poly.vertices.pop_back();
        if (poly.vertices.size() < 3) throw IoError(where + ": ring has fewer than 3 vertices");
        if (signed_area(poly) < 0.0)
            std::reverse(poly.vertices.begin(), poly.vertices.end());
        polys.push_back(std::move(poly));
    }
    return polys;
}

inline std::string to_wkt(const Polygon& poly,
                          const std::optional<Geotransform>& geo = std::nullopt) {
    std::ostringstream os;
    os << "POLYGON ((";
    auto emit = [&](const Point& raw) {
        const Point pt = geo ? geo->apply(raw) : raw;
        os << detail::fixed6(pt.x) << " " << detail::fixed6(pt.y);
    };
    for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
        if (k) os << ", ";
        emit(poly.vertices[k]);
    }
    os << ", ";
    emit(poly.vertices.front());
    os << "))";
    return os.str();
}

inline void write_wkt(const std::vector<Polygon>& polys, const std::string& path,
                      const std::optional<Geotransform>& geo = std::nullopt) {
    std::string text;
    for (const Polygon& p : polys) text += to_wkt(p, geo) + "\n";
    detail::atomic_write(path, text);
}

}  // namespace parcelize
