// Command-line frontend: converts field-probability masks into simplified
// parcel polygons and scores detected boundaries against buffered references.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parcelize/parcelize.hpp"

namespace {

using parcelize::PipelineConfig;

struct CommonFlags {
    std::string config_path;
    std::optional<int> window, stride, buffer, passes;
    std::optional<std::string> agg, simplify, label;
    std::optional<double> gsd, min_area, t, epsilon;
    std::optional<double> canny_sigma, canny_low, canny_high;
    std::vector<double> geotransform;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value config file; flags win");
        cmd->add_option("--window", window, "patch window in pixels (default 400)");
        cmd->add_option("--stride", stride, "patch stride in pixels (default 200)");
        cmd->add_option("--agg", agg, "overlap aggregation: max|avg|sum|hmean");
        cmd->add_option("--gsd", gsd, "ground sample distance, meters per pixel");
        cmd->add_option("--min-area", min_area, "minimum parcel area in m^2");
        cmd->add_option("--simplify", simplify, "simplifier: pocket|dp");
        cmd->add_option("--t", t, "pocket threshold ratio (>= 1)");
        cmd->add_option("--epsilon", epsilon, "Douglas-Peucker tolerance in pixels");
        cmd->add_option("--simplify-passes", passes, "re-apply the simplifier N times (default 1)");
        cmd->add_option("--buffer", buffer, "reference buffer width in pixels");
        cmd->add_option("--label", label, "label recorded in evaluation reports");
        cmd->add_option("--canny-sigma", canny_sigma, "Gaussian sigma for the edge map");
        cmd->add_option("--canny-low", canny_low, "Canny low threshold (gradient magnitude)");
        cmd->add_option("--canny-high", canny_high, "Canny high threshold (gradient magnitude)");
        cmd->add_option("--geotransform", geotransform,
                        "affine gt0..gt5: X = gt0 + x*gt1 + y*gt2, Y = gt3 + x*gt4 + y*gt5")
            ->expected(6);
    }

    PipelineConfig build() const {
        PipelineConfig cfg;
        if (!config_path.empty()) cfg = parcelize::parse_config_file(config_path);
        if (window) cfg.window = *window;
        if (stride) cfg.stride = *stride;
        if (agg) cfg.aggregation = parcelize::parse_aggregation(*agg);
        if (gsd) cfg.gsd = *gsd;
        if (min_area) cfg.min_area = *min_area;
        if (simplify) cfg.simplify_method = parcelize::parse_simplify_method(*simplify);
        if (t) cfg.t = *t;
        if (epsilon) cfg.epsilon = *epsilon;
        if (passes) cfg.simplify_passes = *passes;
        if (buffer) cfg.buffer_width = *buffer;
        if (label) cfg.label = *label;
        if (canny_sigma) cfg.canny_sigma = *canny_sigma;
        if (canny_low) cfg.canny_low = *canny_low;
        if (canny_high) cfg.canny_high = *canny_high;
        if (!geotransform.empty()) {
            parcelize::Geotransform gt;
            for (int i = 0; i < 6; ++i) gt.c[i] = geotransform[i];
            cfg.geotransform = gt;
        }
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parcelize: field masks -> cadastral parcel polygons -> accuracy reports"};
    app.require_subcommand(1);

    std::string mask_path, ref_path, geojson_path, out_dir = ".";
    bool keep_intermediates = false;
    std::vector<int> buffers{5, 6};

    CommonFlags vect_flags, post_flags, eval_flags, pipe_flags, cmp_flags;

    CLI::App* vect = app.add_subcommand("vectorize", "mask file -> raw polygon GeoJSON");
    vect->add_option("mask", mask_path, "probability mask (PGM P2/P5 or grayscale PNG)")
        ->required();
    vect->add_option("--out-dir", out_dir, "output directory");
    vect_flags.attach(vect);

    CLI::App* post = app.add_subcommand("postprocess",
                                        "GeoJSON -> area filter, nested removal, simplify");
    post->add_option("geojson", geojson_path, "polygon FeatureCollection")->required();
    post->add_option("--out-dir", out_dir, "output directory");
    post_flags.attach(post);

    CLI::App* eval = app.add_subcommand("evaluate",
                                        "predicted GeoJSON vs 1-px reference boundary mask");
    eval->add_option("geojson", geojson_path, "predicted polygons, pixel coordinates")->required();
    eval->add_option("ref", ref_path, "reference boundary mask (binary, 1 px wide)")->required();
    eval->add_option("--out-dir", out_dir, "output directory");
    eval_flags.attach(eval);

    CLI::App* pipe = app.add_subcommand("pipeline", "vectorize -> postprocess -> evaluate");
    pipe->add_option("mask", mask_path, "probability mask")->required();
    pipe->add_option("--ref", ref_path, "reference boundary mask (enables evaluation)");
    pipe->add_option("--out-dir", out_dir, "output directory");
    pipe->add_flag("--keep-intermediates", keep_intermediates,
                   "write aggregated/binary/edge rasters and the raw polygons");
    pipe_flags.attach(pipe);

    CLI::App* cmp = app.add_subcommand("compare",
                                       "accuracy grid: both simplifiers x buffer widths");
    cmp->add_option("mask", mask_path, "probability mask")->required();
    cmp->add_option("ref", ref_path, "reference boundary mask")->required();
    cmp->add_option("--buffers", buffers, "buffer widths for the grid (default 5 6)");
    cmp->add_option("--out-dir", out_dir, "output directory");
    cmp_flags.attach(cmp);

    parcelize::FixtureParams fxp;
    CLI::App* gen = app.add_subcommand("gen-fixture",
                                       "synthetic farm grid: mask.pgm + ref.pgm");
    gen->add_option("--size", fxp.size, "frame edge in pixels (default 1000)");
    gen->add_option("--farms", fxp.farms, "parcels per side (default 10)");
    gen->add_option("--seed", fxp.seed, "RNG seed (default 1)");
    gen->add_option("--flip-prob", fxp.flip_probability,
                    "per-pixel flip probability inside the noise band");
    gen->add_option("--out-dir", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (vect->parsed()) {
            auto res = parcelize::cmd_vectorize(mask_path, vect_flags.build(), out_dir);
            std::printf("wrote %s (%zu polygons)\n", res.geojson_path.c_str(),
                        res.polygons.size());
        } else if (post->parsed()) {
            auto res = parcelize::cmd_postprocess(geojson_path, post_flags.build(), out_dir);
            std::printf("wrote %s (%zu polygons)\n", res.geojson_path.c_str(),
                        res.polygons.size());
        } else if (eval->parsed()) {
            auto report = parcelize::cmd_evaluate(geojson_path, ref_path, eval_flags.build(),
                                                  out_dir);
            std::printf("precision=%.2f recall=%.2f fscore=%.2f%s\n", report.precision,
                        report.recall, report.fscore,
                        report.recall_exceeds_100 ? " (recall > 100)" : "");
        } else if (pipe->parsed()) {
            std::optional<std::string> ref;
            if (!ref_path.empty()) ref = ref_path;
            auto res = parcelize::cmd_pipeline(mask_path, ref, pipe_flags.build(), out_dir,
                                               keep_intermediates);
            std::printf("wrote %s (%zu polygons)\n", res.geojson_path.c_str(),
                        res.polygons.size());
            if (res.eval)
                std::printf("precision=%.2f recall=%.2f fscore=%.2f%s\n", res.eval->precision,
                            res.eval->recall, res.eval->fscore,
                            res.eval->recall_exceeds_100 ? " (recall > 100)" : "");
        } else if (cmp->parsed()) {
            auto rows = parcelize::cmd_compare(mask_path, ref_path, cmp_flags.build(), buffers,
                                               out_dir);
            std::printf("buffer_width  method           precision  recall    fscore\n");
            for (const auto& r : rows)
                std::printf("%-12d  %-15s  %-9.2f  %-8.2f  %-8.2f\n", r.buffer_width,
                            r.report.method_label.c_str(), r.report.precision, r.report.recall,
                            r.report.fscore);
        } else if (gen->parsed()) {
            auto fx = parcelize::cmd_gen_fixture(fxp, out_dir);
            std::printf("wrote %s/mask.pgm and %s/ref.pgm (flipped %lld pixels)\n",
                        out_dir.c_str(), out_dir.c_str(), fx.flipped_pixels);
        }
    } catch (const parcelize::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const parcelize::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const parcelize::MetricError& e) {
        std::fprintf(stderr, "undefined metric: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
