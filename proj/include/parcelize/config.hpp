#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "parcelize/errors.hpp"
#include "parcelize/geojson.hpp"
#include "parcelize/postprocess.hpp"
#include "parcelize/raster.hpp"
#include "parcelize/simplify.hpp"

namespace parcelize {

inline AggregationMode parse_aggregation(const std::string& s) {
    if (s == "max") return AggregationMode::Max;
    if (s == "avg" || s == "average") return AggregationMode::Average;
    if (s == "sum") return AggregationMode::Sum;
    if (s == "hmean" || s == "harmonic_mean") return AggregationMode::HarmonicMean;
    throw ConfigError("unknown aggregation mode '" + s + "' (max|avg|sum|hmean)");
}

inline std::string aggregation_name(AggregationMode m) {
    switch (m) {
        case AggregationMode::Max: return "max";
        case AggregationMode::Average: return "avg";
        case AggregationMode::Sum: return "sum";
        default: return "hmean";
    }
}

inline SimplifyMethod parse_simplify_method(const std::string& s) {
    if (s == "pocket" || s == "pocket_based") return SimplifyMethod::PocketBased;
    if (s == "dp" || s == "douglas_peucker") return SimplifyMethod::DouglasPeucker;
    throw ConfigError("unknown simplify method '" + s + "' (pocket|dp)");
}

inline std::string simplify_method_name(SimplifyMethod m) {
    return m == SimplifyMethod::PocketBased ? "pocket" : "dp";
}

/// All pipeline tunables. Window/stride carry their stated defaults; every
/// other stage parameter is optional and must be provided (file or flag)
/// before the stage that needs it runs.
struct PipelineConfig {
    int window = 400;
    int stride = 200;
    AggregationMode aggregation = AggregationMode::Average;

    std::optional<double> canny_sigma;
    std::optional<double> canny_low;
    std::optional<double> canny_high;

    std::optional<double> gsd;       // meters per pixel
    std::optional<double> min_area;  // square meters
    std::optional<SimplifyMethod> simplify_method;
    std::optional<double> t;
    std::optional<double> epsilon;
    int simplify_passes = 1;

    std::optional<int> buffer_width;
    std::string label;
    std::optional<Geotransform> geotransform;

    PostprocessConfig postprocess_config() const {
        if (!gsd) throw ConfigError("missing required parameter: gsd");
        if (!min_area) throw ConfigError("missing required parameter: min-area");
        if (!simplify_method) throw ConfigError("missing required parameter: simplify method");
        PostprocessConfig cfg;
        cfg.gsd = *gsd;
        cfg.min_area = *min_area;
        cfg.simplify.method = *simplify_method;
        cfg.simplify.passes = simplify_passes;
        if (*simplify_method == SimplifyMethod::PocketBased) {
            if (!t) throw ConfigError("missing required parameter: t (pocket threshold)");
            cfg.simplify.t = *t;
        } else {
            if (!epsilon) throw ConfigError("missing required parameter: epsilon (DP tolerance)");
            cfg.simplify.epsilon = *epsilon;
        }
        cfg.validate();
        return cfg;
    }

    int required_buffer_width() const {
        if (!buffer_width) throw ConfigError("missing required parameter: buffer width");
        if (*buffer_width < 1) throw ConfigError("buffer width must be >= 1");
        return *buffer_width;
    }

    void require_canny() const {
        if (!canny_sigma || !canny_low || !canny_high)
            throw ConfigError("edge map requested but canny sigma/low/high not configured");
    }

    /// Canonical key=value echo embedded in every report.
    std::string echo() const {
        std::ostringstream os;
        os << "window=" << window << "\n";
        os << "stride=" << stride << "\n";
        os << "aggregation=" << aggregation_name(aggregation) << "\n";
        auto opt = [&](const char* key, const std::optional<double>& v) {
            os << key << "=";
            if (v)
                os << detail::fixed6(*v);
            else
                os << "unset";
            os << "\n";
        };
        opt("canny_sigma", canny_sigma);
        opt("canny_low", canny_low);
        opt("canny_high", canny_high);
        opt("gsd", gsd);
        opt("min_area", min_area);
        os << "simplify=" << (simplify_method ? simplify_method_name(*simplify_method) : "unset")
           << "\n";
        opt("t", t);
        opt("epsilon", epsilon);
        os << "simplify_passes=" << simplify_passes << "\n";
        os << "buffer_width=" << (buffer_width ? std::to_string(*buffer_width) : "unset") << "\n";
        os << "label=" << label << "\n";
        return os.str();
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double config_number(const std::string& value, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (...) {
        throw ConfigError(where + ": expected a number, got '" + value + "'");
    }
}

}  // namespace detail

/// Parses the key=value config file. Sections mirror the pipeline stages:
///
///   [pipeline]   window, stride, aggregation
///   [canny]      sigma, low, high
///   [postprocess] gsd, min_area
///   [simplify]   method, t, epsilon, passes
///   [evaluate]   buffer_width
///   [geotransform] gt0..gt5
///
/// Unknown keys are errors; command-line flags override file values.
inline PipelineConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);

    PipelineConfig cfg;
    std::array<double, 6> gt{0, 1, 0, 0, 0, 1};
    bool has_gt = false;

    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": malformed section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));

        if (section == "pipeline") {
            if (key == "window")
                cfg.window = static_cast<int>(detail::config_number(value, where));
            else if (key == "stride")
                cfg.stride = static_cast<int>(detail::config_number(value, where));
            else if (key == "aggregation")
                cfg.aggregation = parse_aggregation(value);
            else
                throw ConfigError(where + ": unknown key '" + key + "' in [pipeline]");
        } else if (section == "canny") {
            if (key == "sigma")
                cfg.canny_sigma = detail::config_number(value, where);
            else if (key == "low")
                cfg.canny_low = detail::config_number(value, where);
            else if (key == "high")
                cfg.canny_high = detail::config_number(value, where);
            else
                throw ConfigError(where + ": unknown key '" + key + "' in [canny]");
        } else if (section == "postprocess") {
            if (key == "gsd")
                cfg.gsd = detail::config_number(value, where);
            else if (key == "min_area")
                cfg.min_area = detail::config_number(value, where);
            else
                throw ConfigError(where + ": unknown key '" + key + "' in [postprocess]");
        } else if (section == "simplify") {
            if (key == "method")
                cfg.simplify_method = parse_simplify_method(value);
            else if (key == "t")
                cfg.t = detail::config_number(value, where);
            else if (key == "epsilon")
                cfg.epsilon = detail::config_number(value, where);
            else if (key == "passes")
                cfg.simplify_passes = static_cast<int>(detail::config_number(value, where));
            else
                throw ConfigError(where + ": unknown key '" + key + "' in [simplify]");
        } else if (section == "evaluate") {
            if (key == "buffer_width")
                cfg.buffer_width = static_cast<int>(detail::config_number(value, where));
            else
                throw ConfigError(where + ": unknown key '" + key + "' in [evaluate]");
        } else if (section == "geotransform") {
            if (key.size() == 3 && key[0] == 'g' && key[1] == 't' && key[2] >= '0' && key[2] <= '5') {
                gt[key[2] - '0'] = detail::config_number(value, where);
                has_gt = true;
            } else {
                throw ConfigError(where + ": unknown key '" + key + "' in [geotransform]");
            }
        } else {
            throw ConfigError(where + ": key outside any known section");
        }
    }
    if (has_gt) cfg.geotransform = Geotransform{gt};
    return cfg;
}

}  // namespace parcelize
