#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "parcelize/canny.hpp"
#include "parcelize/config.hpp"
#include "parcelize/errors.hpp"
#include "parcelize/evaluate.hpp"
#include "parcelize/fixture.hpp"
#include "parcelize/geojson.hpp"
#include "parcelize/image_io.hpp"
#include "parcelize/otsu.hpp"
#include "parcelize/postprocess.hpp"
#include "parcelize/raster.hpp"
#include "parcelize/trace.hpp"

namespace parcelize {

namespace detail {

inline void write_text(const std::string& path, const std::string& text) {
    atomic_write(path, text);
}

inline std::string kv_bool(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline std::string eval_metrics_kv(const EvalReport& r, long long ref_nonbinary) {
    std::ostringstream os;
    os << "label=" << r.method_label << "\n"
       << "buffer_width=" << r.buffer_width << "\n"
       << "precision=" << detail::fixed6(r.precision) << "\n"
       << "recall=" << detail::fixed6(r.recall) << "\n"
       << "fscore=" << detail::fixed6(r.fscore) << "\n"
       << "recall_exceeds_100=" << detail::kv_bool(r.recall_exceeds_100) << "\n"
       << "tp=" << r.counts.tp << "\n"
       << "fp=" << r.counts.fp << "\n"
       << "fn=" << r.counts.fn_ << "\n"
       << "tn=" << r.counts.tn << "\n"
       << "predicted_pixels=" << (r.counts.tp + r.counts.fp) << "\n"
       << "buffered_reference_pixels=" << (r.counts.tp + r.counts.fn_) << "\n"
       << "clamped_vertices=" << r.clamped_vertices << "\n"
       << "reference_nonbinary_pixels=" << ref_nonbinary << "\n";
    return os.str();
}

inline std::string eval_report_text(const EvalReport& r, long long ref_nonbinary,
                                    const PipelineConfig& cfg) {
    char line[160];
    std::ostringstream os;
    os << "boundary evaluation: " << r.method_label << "\n";
    std::snprintf(line, sizeof(line), "precision = %.2f %%\n", r.precision);
    os << line;
    std::snprintf(line, sizeof(line), "recall    = %.2f %%%s\n", r.recall,
                  r.recall_exceeds_100 ? "  (exceeds 100: buffer-corrected)" : "");
    os << line;
    std::snprintf(line, sizeof(line), "f-score   = %.2f %%\n", r.fscore);
    os << line;
    os << "\n" << eval_metrics_kv(r, ref_nonbinary) << "\n[config]\n" << cfg.echo();
    return os.str();
}

/// Probability mask -> polygons: Otsu threshold, binarize, trace regions.
struct VectorizeStage {
    OtsuResult otsu;
    RasterGrid binary;
    std::vector<Polygon> polygons;
};

inline VectorizeStage vectorize_mask(const RasterGrid& mask) {
    VectorizeStage st;
    st.otsu = otsu_threshold(mask);
    st.binary = binarize(mask, st.otsu.threshold);
    st.polygons = extract_polygons(st.binary);
    return st;
}

struct CommandResult {
    std::vector<Polygon> polygons;
    std::optional<EvalReport> eval;
    std::string geojson_path;
};

/// `vectorize`: mask file -> GeoJSON of raw traced polygons.
inline CommandResult cmd_vectorize(const std::string& mask_path, const PipelineConfig& cfg,
                                   const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const RasterGrid mask = read_mask(mask_path);
    VectorizeStage st = vectorize_mask(mask);

    CommandResult res;
    res.geojson_path = (std::filesystem::path(out_dir) / "polygons.geojson").string();
    write_geojson(st.polygons, res.geojson_path, cfg.geotransform);

    std::ostringstream report;
    report << "vectorize " << mask_path << "\n"
           << "otsu_threshold=" << detail::fixed6(st.otsu.threshold) << "\n"
           << "otsu_degenerate=" << detail::kv_bool(st.otsu.degenerate) << "\n"
           << "polygons=" << st.polygons.size() << "\n\n[config]\n"
           << cfg.echo();
    detail::write_text((std::filesystem::path(out_dir) / "vectorize_report.txt").string(),
                       report.str());
    res.polygons = std::move(st.polygons);
    return res;
}

/// `postprocess`: GeoJSON in -> filtered/simplified GeoJSON + step report.
inline CommandResult cmd_postprocess(const std::string& geojson_in, const PipelineConfig& cfg,
                                     const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::vector<Polygon> polys = read_geojson(geojson_in);
    PostprocessResult post = run_postprocess(polys, cfg.postprocess_config());

    CommandResult res;
    res.geojson_path = (std::filesystem::path(out_dir) / "polygons_post.geojson").string();
    write_geojson(post.polygons, res.geojson_path, cfg.geotransform);
    detail::write_text((std::filesystem::path(out_dir) / "postprocess_report.txt").string(),
                       post.report.to_text() + "\n[config]\n" + cfg.echo());
    res.polygons = std::move(post.polygons);
    return res;
}

/// `evaluate`: predicted polygons (GeoJSON, pixel space) vs 1-px reference
/// boundary mask, at the configured buffer width.
inline EvalReport cmd_evaluate(const std::string& pred_geojson, const std::string& ref_mask_path,
                               const PipelineConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::vector<Polygon> polys = read_geojson(pred_geojson);
    const BinaryMaskResult ref = read_binary_mask(ref_mask_path);

    for (const Polygon& p : polys) {
        for (const Point& v : p.vertices) {
            if (v.x < 0.0 || v.x > ref.mask.width || v.y < 0.0 || v.y > ref.mask.height)
                throw ConfigError("prediction extent exceeds the reference frame (" +
                                  std::to_string(ref.mask.width) + "x" +
                                  std::to_string(ref.mask.height) + ")");
        }
    }

    EvalConfig ecfg;
    ecfg.buffer_width = cfg.required_buffer_width();
    ecfg.frame_width = ref.mask.width;
    ecfg.frame_height = ref.mask.height;
    const EvalReport report = evaluate_full(polys, ref.mask, ecfg,
                                            cfg.label.empty() ? "prediction" : cfg.label);

    detail::write_text((std::filesystem::path(out_dir) / "eval_report.txt").string(),
                       eval_report_text(report, ref.nonbinary_pixels, cfg));
    detail::write_text((std::filesystem::path(out_dir) / "eval_metrics.kv").string(),
                       eval_metrics_kv(report, ref.nonbinary_pixels));
    return report;
}

/// `pipeline`: mask -> tiling round trip -> Otsu/binarize -> trace ->
/// postprocess -> optional evaluation, in one invocation.
inline CommandResult cmd_pipeline(const std::string& mask_path,
                                  const std::optional<std::string>& ref_mask_path,
                                  const PipelineConfig& cfg, const std::string& out_dir,
                                  bool keep_intermediates) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);
    std::ostringstream report;

    if (!ref_mask_path && cfg.buffer_width)
        throw ConfigError("evaluation requested (--buffer) but no reference mask given");

    const RasterGrid mask = read_mask(mask_path);
    report << "input " << mask_path << " " << mask.width << "x" << mask.height << "\n";

    // Tiling round trip: the detector that would consume the patches is out
    // of scope, so patches carry the input values and the aggregation modes
    // recombine them.
    const std::vector<Patch> patches = patchify(mask, cfg.window, cfg.stride);
    AggregateResult agg = aggregate_patches(patches, mask.width, mask.height, cfg.aggregation);
    report << "patches=" << patches.size() << " aggregation=" << aggregation_name(cfg.aggregation)
           << "\n";
    if (agg.uncovered_pixels > 0)
        report << "warning: uncovered_pixels=" << agg.uncovered_pixels << "\n";

    // Summation leaves overlap regions above 1; rescale into [0, 1] so the
    // Otsu histogram stays meaningful.
    if (cfg.aggregation == AggregationMode::Sum) {
        float maxv = 0.0f;
        for (float v : agg.grid.values) maxv = std::max(maxv, v);
        if (maxv > 1.0f) {
            for (float& v : agg.grid.values) v /= maxv;
            report << "sum_rescaled_by=" << detail::fixed6(maxv) << "\n";
        }
    }

    VectorizeStage st = vectorize_mask(agg.grid);
    report << "otsu_threshold=" << detail::fixed6(st.otsu.threshold)
           << " degenerate=" << detail::kv_bool(st.otsu.degenerate) << "\n";
    report << "traced_polygons=" << st.polygons.size() << "\n";

    if (keep_intermediates) {
        write_pgm(agg.grid, (out / "aggregated.pgm").string());
        write_pgm(st.binary, (out / "binary.pgm").string());
        cfg.require_canny();
        const RasterGrid edges =
            canny_edges(st.binary, *cfg.canny_sigma, *cfg.canny_low, *cfg.canny_high);
        write_pgm(edges, (out / "edges.pgm").string());
        write_geojson(st.polygons, (out / "polygons_raw.geojson").string());
        report << "intermediates=aggregated.pgm,binary.pgm,edges.pgm,polygons_raw.geojson\n";
    }

    PostprocessResult post = run_postprocess(st.polygons, cfg.postprocess_config());
    report << post.report.to_text();

    CommandResult res;
    res.geojson_path = (out / "polygons.geojson").string();
    write_geojson(post.polygons, res.geojson_path, cfg.geotransform);
    detail::write_text((out / "postprocess_report.txt").string(),
                       post.report.to_text() + "\n[config]\n" + cfg.echo());

    if (ref_mask_path) {
        const BinaryMaskResult ref = read_binary_mask(*ref_mask_path);
        if (ref.mask.width != mask.width || ref.mask.height != mask.height)
            throw ConfigError("reference dimensions " + std::to_string(ref.mask.width) + "x" +
                              std::to_string(ref.mask.height) + " do not match the mask " +
                              std::to_string(mask.width) + "x" + std::to_string(mask.height));
        EvalConfig ecfg;
        ecfg.buffer_width = cfg.required_buffer_width();
        ecfg.frame_width = ref.mask.width;
        ecfg.frame_height = ref.mask.height;
        const std::string label =
            cfg.label.empty() ? (cfg.simplify_method ? simplify_method_name(*cfg.simplify_method)
                                                     : "prediction")
                              : cfg.label;
        res.eval = evaluate_full(post.polygons, ref.mask, ecfg, label);
        detail::write_text((out / "eval_report.txt").string(),
                           eval_report_text(*res.eval, ref.nonbinary_pixels, cfg));
        detail::write_text((out / "eval_metrics.kv").string(),
                           eval_metrics_kv(*res.eval, ref.nonbinary_pixels));
        report << "precision=" << detail::fixed6(res.eval->precision)
               << " recall=" << detail::fixed6(res.eval->recall)
               << " fscore=" << detail::fixed6(res.eval->fscore) << "\n";
    }

    report << "\n[config]\n" << cfg.echo();
    detail::write_text((out / "pipeline_report.txt").string(), report.str());
    res.polygons = std::move(post.polygons);
    return res;
}

struct CompareRow {
    int buffer_width = 0;
    SimplifyMethod method = SimplifyMethod::DouglasPeucker;
    EvalReport report;
};

/// `compare`: both simplification methods at each buffer width, one shared
/// vectorize pass. Produces the four-row accuracy grid.
inline std::vector<CompareRow> cmd_compare(const std::string& mask_path,
                                           const std::string& ref_mask_path,
                                           const PipelineConfig& cfg,
                                           const std::vector<int>& buffer_widths,
                                           const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (buffer_widths.empty()) throw ConfigError("compare needs at least one buffer width");
    if (!cfg.t) throw ConfigError("missing required parameter: t (pocket threshold)");
    if (!cfg.epsilon) throw ConfigError("missing required parameter: epsilon (DP tolerance)");

    const RasterGrid mask = read_mask(mask_path);
    const BinaryMaskResult ref = read_binary_mask(ref_mask_path);
    if (ref.mask.width != mask.width || ref.mask.height != mask.height)
        throw ConfigError("reference dimensions do not match the mask");

    VectorizeStage st = vectorize_mask(mask);

    std::vector<CompareRow> rows;
    for (const SimplifyMethod method :
         {SimplifyMethod::DouglasPeucker, SimplifyMethod::PocketBased}) {
        PipelineConfig mcfg = cfg;
        mcfg.simplify_method = method;
        PostprocessResult post = run_postprocess(st.polygons, mcfg.postprocess_config());
        const std::string method_name =
            method == SimplifyMethod::PocketBased ? "pocket_based" : "douglas_peucker";
        write_geojson(post.polygons,
                      (std::filesystem::path(out_dir) / ("polygons_" + method_name + ".geojson"))
                          .string(),
                      cfg.geotransform);
        for (int bw : buffer_widths) {
            EvalConfig ecfg;
            ecfg.buffer_width = bw;
            ecfg.frame_width = ref.mask.width;
            ecfg.frame_height = ref.mask.height;
            CompareRow row;
            row.buffer_width = bw;
            row.method = method;
            row.report = evaluate_full(post.polygons, ref.mask, ecfg, method_name);
            rows.push_back(std::move(row));
        }
    }
    // Grid order mirrors the accuracy table: by buffer width, then method.
    std::sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
        if (a.buffer_width != b.buffer_width) return a.buffer_width < b.buffer_width;
        return a.method == SimplifyMethod::DouglasPeucker && b.method == SimplifyMethod::PocketBased;
    });

    std::ostringstream grid;
    grid << "buffer_width  method           precision  recall    fscore\n";
    for (const CompareRow& r : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-12d  %-15s  %-9.2f  %-8.2f  %-8.2f\n", r.buffer_width,
                      r.report.method_label.c_str(), r.report.precision, r.report.recall,
                      r.report.fscore);
        grid << line;
    }
    grid << "\n[config]\n" << cfg.echo();
    detail::write_text((std::filesystem::path(out_dir) / "compare_grid.txt").string(), grid.str());
    return rows;
}

/// `gen-fixture`: writes mask.pgm, ref.pgm and fixture_manifest.txt.
inline Fixture cmd_gen_fixture(const FixtureParams& params, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    Fixture fx = generate_fixture(params);
    write_pgm(fx.prob_mask, (std::filesystem::path(out_dir) / "mask.pgm").string());
    write_pgm(fx.ref_boundary, (std::filesystem::path(out_dir) / "ref.pgm").string());
    detail::write_text((std::filesystem::path(out_dir) / "fixture_manifest.txt").string(),
                       fx.manifest(params));
    return fx;
}

}  // namespace parcelize
