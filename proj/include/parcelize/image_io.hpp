#pragma once

#include <png.h>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "parcelize/errors.hpp"
#include "parcelize/raster.hpp"

namespace parcelize {

namespace detail {

// Next PGM header token, skipping whitespace and '#' comments.
inline std::string pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) break;
    }
    if (c == EOF) return tok;
    do {
        tok.push_back(static_cast<char>(c));
    } while ((c = in.get()) != EOF && !std::isspace(c));
    return tok;
}

inline int pgm_int(std::istream& in, const std::string& path, const char* what) {
    const std::string tok = pgm_token(in);
    try {
        return std::stoi(tok);
    } catch (...) {
        throw IoError(path + ": malformed PGM header (" + what + ")");
    }
}

struct PngReadCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngReadCloser() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

}  // namespace detail

/// Reads a plain (P2) or raw (P5) 8-bit PGM as a probability grid, value
/// divided by maxval.
inline RasterGrid read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    const std::string magic = detail::pgm_token(in);
    if (magic != "P2" && magic != "P5") throw IoError(path + ": not a PGM file (P2/P5)");
    const int w = detail::pgm_int(in, path, "width");
    const int h = detail::pgm_int(in, path, "height");
    const int maxval = detail::pgm_int(in, path, "maxval");
    if (w < 1 || h < 1) throw IoError(path + ": invalid PGM dimensions");
    if (maxval < 1 || maxval > 255) throw IoError(path + ": only 8-bit PGM supported");

    RasterGrid g = RasterGrid::make(w, h, GridKind::Probability, 0.0f);
    if (magic == "P5") {
        // Exactly one whitespace byte separates the header from the raster.
        std::vector<std::uint8_t> raw(g.pixel_count());
        if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
            throw IoError(path + ": truncated PGM raster");
        for (std::size_t i = 0; i < raw.size(); ++i)
            g.values[i] = static_cast<float>(raw[i]) / static_cast<float>(maxval);
    } else {
        for (std::size_t i = 0; i < g.pixel_count(); ++i) {
            const int v = detail::pgm_int(in, path, "pixel");
            if (v < 0 || v > maxval) throw IoError(path + ": PGM pixel out of range");
            g.values[i] = static_cast<float>(v) / static_cast<float>(maxval);
        }
    }
    return g;
}

/// Reads an 8-bit grayscale PNG as a probability grid (value / 255).
/// Grayscale+alpha drops the alpha channel; 16-bit depth is reduced to 8.
inline RasterGrid read_png(const std::string& path) {
    detail::PngReadCloser ctx;
    ctx.fp = std::fopen(path.c_str(), "rb");
    if (!ctx.fp) throw IoError("cannot open " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, ctx.fp) != 8 || png_sig_cmp(header, 0, 8))
        throw IoError(path + ": not a PNG file");

    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) throw IoError(path + ": libpng init failed");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) throw IoError(path + ": libpng init failed");
    if (setjmp(png_jmpbuf(ctx.png))) throw IoError(path + ": PNG decode error");

    png_init_io(ctx.png, ctx.fp);
    png_set_sig_bytes(ctx.png, 8);
    png_read_info(ctx.png, ctx.info);

    const png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
    const png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
    const int color = png_get_color_type(ctx.png, ctx.info);
    const int depth = png_get_bit_depth(ctx.png, ctx.info);

    if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_GRAY_ALPHA)
        throw IoError(path + ": expected a grayscale PNG");
    if (depth == 16) png_set_strip_16(ctx.png);
    if (depth < 8) png_set_expand_gray_1_2_4_to_8(ctx.png);
    if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(ctx.png);
    png_set_interlace_handling(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    RasterGrid g = RasterGrid::make(static_cast<int>(w), static_cast<int>(h),
                                    GridKind::Probability, 0.0f);
    std::vector<std::uint8_t> row(w);
    std::vector<std::vector<std::uint8_t>> rows(h, row);
    std::vector<png_bytep> row_ptrs(h);
    for (png_uint_32 y = 0; y < h; ++y) row_ptrs[y] = rows[y].data();
    png_read_image(ctx.png, row_ptrs.data());

    for (png_uint_32 y = 0; y < h; ++y) {
        for (png_uint_32 x = 0; x < w; ++x)
            g.at(static_cast<int>(x), static_cast<int>(y)) = rows[y][x] / 255.0f;
    }
    return g;
}

/// Dispatches on the file's magic bytes: PGM (P2/P5) or PNG.
inline RasterGrid read_mask(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError("cannot open " + path);
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(path);
    if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') return read_png(path);
    throw IoError(path + ": unsupported mask format (want PGM P2/P5 or grayscale PNG)");
}

struct BinaryMaskResult {
    RasterGrid mask;
    long long nonbinary_pixels = 0;  // inputs not exactly 0 or 255, thresholded at 0.5
};

/// Loads a mask that is expected to be binary (e.g. a 1-px reference
/// boundary); values other than 0/255 are thresholded at 0.5 and counted.
inline BinaryMaskResult read_binary_mask(const std::string& path) {
    const RasterGrid prob = read_mask(path);
    BinaryMaskResult res;
    res.mask = RasterGrid::make(prob.width, prob.height, GridKind::Binary, 0.0f);
    for (std::size_t i = 0; i < prob.values.size(); ++i) {
        const float v = prob.values[i];
        if (v != 0.0f && v != 1.0f) ++res.nonbinary_pixels;
        res.mask.values[i] = v > 0.5f ? 1.0f : 0.0f;
    }
    return res;
}

namespace detail {

inline void atomic_write(const std::string& path, const std::string& bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path);
}

}  // namespace detail

/// Writes a grid as binary PGM (P5, maxval 255). Binary and edge grids map
/// {0, 1} to {0, 255}; probability grids are scaled by 255 and rounded.
inline void write_pgm(const RasterGrid& grid, const std::string& path) {
    std::string bytes;
    bytes.reserve(grid.pixel_count() + 32);
    bytes += "P5\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\n255\n";
    for (float v : grid.values) {
        int byte;
        if (grid.kind == GridKind::Probability) {
            byte = static_cast<int>(std::lround(v * 255.0f));
            byte = byte < 0 ? 0 : (byte > 255 ? 255 : byte);
        } else {
            byte = v != 0.0f ? 255 : 0;
        }
        bytes.push_back(static_cast<char>(static_cast<unsigned char>(byte)));
    }
    detail::atomic_write(path, bytes);
}

}  // namespace parcelize
