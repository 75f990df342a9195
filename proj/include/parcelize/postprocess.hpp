#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "parcelize/errors.hpp"
#include "parcelize/polygon.hpp"
#include "parcelize/simplify.hpp"

namespace parcelize {

struct PostprocessConfig {
    double gsd = 0.0;       // meters per pixel
    double min_area = 0.0;  // square meters
    SimplifyParams simplify;

    void validate() const {
        if (gsd <= 0.0) throw ConfigError("gsd must be > 0");
        if (min_area < 0.0) throw ConfigError("min_area must be >= 0");
        simplify.validate();
    }
};

/// Keeps polygons whose metric area |signed_area| * gsd^2 is >= min_area.
inline std::vector<Polygon> area_filter(const std::vector<Polygon>& polys, double min_area,
                                        double gsd) {
    if (gsd <= 0.0) throw ConfigError("gsd must be > 0");
    std::vector<Polygon> out;
    out.reserve(polys.size());
    for (const Polygon& p : polys) {
        if (std::abs(signed_area(p)) * gsd * gsd >= min_area) out.push_back(p);
    }
    return out;
}

/// Removes every polygon fully vertex-contained in a strictly larger polygon
/// of the original set. Identical rings (equal area, mutual containment) keep
/// the earliest in input order. Containment is tested against the original
/// pre-removal set so chains A in B in C leave only C.
inline std::vector<Polygon> nested_filter(const std::vector<Polygon>& polys) {
    const std::size_t n = polys.size();
    std::vector<double> area(n);
    for (std::size_t i = 0; i < n; ++i) area[i] = std::abs(signed_area(polys[i]));

    auto contained_in = [&](std::size_t inner, std::size_t outer) {
        for (const Point& pt : polys[inner].vertices) {
            if (point_in_polygon(pt, polys[outer]) == Location::Outside) return false;
        }
        return true;
    };

    std::vector<bool> removed(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (area[j] > area[i]) {
                if (contained_in(i, j)) {
                    removed[i] = true;
                    break;
                }
            } else if (area[j] == area[i] && j < i) {
                if (contained_in(i, j) && contained_in(j, i)) {
                    removed[i] = true;
                    break;
                }
            }
        }
    }
    std::vector<Polygon> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!removed[i]) out.push_back(polys[i]);
    }
    return out;
}

struct SimplifyBatchResult {
    std::vector<Polygon> polygons;  // 1:1 with input
    std::vector<std::int64_t> over_simplified_ids;
    std::vector<std::string> errors;  // "id: message" per failed polygon, input kept
};

/// Applies the selected simplifier to each polygon independently. Failures
/// never abort the batch: the offending polygon passes through unchanged and
/// the error is recorded.
inline SimplifyBatchResult simplify_all(const std::vector<Polygon>& polys,
                                        const SimplifyParams& params) {
    params.validate();
    SimplifyBatchResult res;
    res.polygons.reserve(polys.size());
    for (const Polygon& p : polys) {
        try {
            SimplifyOutcome out = simplify(p, params);
            if (out.over_simplified) res.over_simplified_ids.push_back(p.id);
            res.polygons.push_back(std::move(out.polygon));
        } catch (const std::exception& e) {
            res.errors.push_back(std::to_string(p.id) + ": " + e.what());
            res.polygons.push_back(p);
        }
    }
    return res;
}

struct StepCounts {
    std::string name;
    std::size_t in = 0;
    std::size_t out = 0;
};

struct PostprocessReport {
    std::array<StepCounts, 3> steps;
    std::vector<std::int64_t> over_simplified_ids;
    std::vector<std::string> simplify_errors;

    std::string to_text() const {
        std::ostringstream os;
        for (const StepCounts& s : steps)
            os << s.name << " in=" << s.in << " out=" << s.out << "\n";
        if (!over_simplified_ids.empty()) {
            os << "over_simplified_ids=";
            for (std::size_t i = 0; i < over_simplified_ids.size(); ++i)
                os << (i ? "," : "") << over_simplified_ids[i];
            os << "\n";
        }
        for (const std::string& e : simplify_errors) os << "simplify_error " << e << "\n";
        return os.str();
    }
};

struct PostprocessResult {
    std::vector<Polygon> polygons;
    PostprocessReport report;
};

/// The three cleanup steps in their fixed order: area filter, nested-polygon
/// removal, simplification.
inline PostprocessResult run_postprocess(const std::vector<Polygon>& polys,
                                         const PostprocessConfig& cfg) {
    cfg.validate();
    PostprocessResult res;

    const std::vector<Polygon> after_area = area_filter(polys, cfg.min_area, cfg.gsd);
    res.report.steps[0] = {"area_filter", polys.size(), after_area.size()};

    const std::vector<Polygon> after_nested = nested_filter(after_area);
    res.report.steps[1] = {"nested_filter", after_area.size(), after_nested.size()};

    SimplifyBatchResult simplified = simplify_all(after_nested, cfg.simplify);
    res.report.steps[2] = {"simplify", after_nested.size(), simplified.polygons.size()};
    res.report.over_simplified_ids = std::move(simplified.over_simplified_ids);
    res.report.simplify_errors = std::move(simplified.errors);
    res.polygons = std::move(simplified.polygons);
    return res;
}

}  // namespace parcelize
