// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <png.h>

#include "chebresize/error.hpp"
#include "chebresize/image.hpp"

namespace chebresize {

enum class ImageFormat { pgm, ppm, png };

[[nodiscard]] inline const char* to_string(ImageFormat f) {
    switch (f) {
        case ImageFormat::pgm: return "pgm";
        case ImageFormat::ppm: return "ppm";
        case ImageFormat::png: return "png";
    }
    return "?";
}

/// Format implied by a file extension (case-insensitive): .pgm, .ppm, .pnm, .png.
[[nodiscard]] inline std::optional<ImageFormat> format_from_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm") return ImageFormat::pgm;
    if (ext == ".ppm" || ext == ".pnm") return ImageFormat::ppm;
    if (ext == ".png") return ImageFormat::png;
    return std::nullopt;
}

struct WriteOptions {
    /// Allows writing an RGB image to PGM by converting it to BT.601 luma.
    bool luma_convert = false;
    /// Emit plain (ASCII) PNM, P2/P3, instead of raw P5/P6.
    bool ascii = false;
};

namespace detail {

[[nodiscard]] inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageIoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& header,
                       const std::vector<std::uint8_t>& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ImageIoError("cannot open " + path.string() + " for writing");
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out) throw ImageIoError("write failed for " + path.string());
}

/// Cursor over a Netpbm header or plain raster: whitespace and '#' comments
/// separate decimal tokens.
class PnmScanner {
public:
    explicit PnmScanner(const std::vector<std::uint8_t>& data, std::size_t pos) : data_(data), pos_(pos) {}

    [[nodiscard]] std::optional<std::uint64_t> next_uint() {
        skip_space();
        if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) return std::nullopt;
        std::uint64_t v = 0;
        while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
            v = v * 10 + (data_[pos_++] - '0');
            if (v > 0xFFFFFFFFull) return std::nullopt;
        }
        return v;
    }

    [[nodiscard]] std::size_t pos() const { return pos_; }
    [[nodiscard]] bool at_space() const { return pos_ < data_.size() && std::isspace(data_[pos_]); }
    void advance() { ++pos_; }

private:
    void skip_space() {
        while (pos_ < data_.size()) {
            if (std::isspace(data_[pos_])) {
                ++pos_;
            } else if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& data_;
    std::size_t pos_;
};

[[nodiscard]] inline ImageBuffer decode_pnm(const std::vector<std::uint8_t>& data, const std::string& name) {
    if (data.size() < 2 || data[0] != 'P') throw ImageIoError("malformed header in " + name + ": not a PNM file");
    const char kind = static_cast<char>(data[1]);
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
        throw ImageIoError("unsupported format in " + name + ": PNM variant P" + std::string(1, kind));
    const std::size_t channels = (kind == '3' || kind == '6') ? 3 : 1;
    const bool ascii = kind == '2' || kind == '3';

    PnmScanner scan(data, 2);
    const auto width = scan.next_uint();
    const auto height = scan.next_uint();
    const auto maxval = scan.next_uint();
    if (!width || !height || !maxval || *width == 0 || *height == 0 || *maxval == 0)
        throw ImageIoError("malformed header in " + name);
    if (*maxval > 255) throw ImageIoError("unsupported bit depth in " + name + ": maxval " + std::to_string(*maxval));
    if (*maxval != 255)
        throw ImageIoError("unsupported maxval in " + name + ": " + std::to_string(*maxval) + " (only 255)");
    if (*width > (std::uint64_t{1} << 20) || *height > (std::uint64_t{1} << 20))
        throw ImageIoError("malformed header in " + name + ": implausible dimensions");

    const Size size{static_cast<std::size_t>(*height), static_cast<std::size_t>(*width)};
    const std::size_t count = size.rows * size.cols * channels;
    std::vector<std::uint8_t> samples(count);
    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = scan.next_uint();
            if (!v) throw ImageIoError("truncated raster in " + name);
            if (*v > 255) throw ImageIoError("malformed raster in " + name + ": sample exceeds maxval");
            samples[i] = static_cast<std::uint8_t>(*v);
        }
    } else {
        if (!scan.at_space()) throw ImageIoError("malformed header in " + name + ": missing separator");
        scan.advance();
        if (data.size() - scan.pos() < count) throw ImageIoError("truncated raster in " + name);
        std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(scan.pos()), count, samples.begin());
    }
    return ImageBuffer::from_interleaved(size, channels, samples);
}

[[nodiscard]] inline std::uint32_t read_be32(const std::vector<std::uint8_t>& d, std::size_t at) {
    return (std::uint32_t{d[at]} << 24) | (std::uint32_t{d[at + 1]} << 16) | (std::uint32_t{d[at + 2]} << 8) |
           std::uint32_t{d[at + 3]};
}

struct PngMemoryReader {
    const std::vector<std::uint8_t>* data;
    std::size_t pos;
};

inline void png_read_from_memory(png_structp png, png_bytep out, png_size_t length) {
    auto* reader = static_cast<PngMemoryReader*>(png_get_io_ptr(png));
    if (reader->data->size() - reader->pos < length) png_error(png, "unexpected end of PNG data");
    std::copy_n(reader->data->begin() + static_cast<std::ptrdiff_t>(reader->pos), length, out);
    reader->pos += length;
}

inline void png_store_error(png_structp png, png_const_charp message) {
    auto* buffer = static_cast<char*>(png_get_error_ptr(png));
    std::snprintf(buffer, 256, "%s", message);
    std::longjmp(png_jmpbuf(png), 1);
}

inline void png_ignore_warning(png_structp, png_const_charp) {}

/// Decodes an 8-bit gray or RGB PNG into interleaved samples. Only trivially
/// destructible objects are created after setjmp. Returns false and fills
/// `error` on failure.
inline bool png_decode_rows(const std::vector<std::uint8_t>& data, std::size_t rows, std::size_t row_bytes,
                            std::vector<std::uint8_t>& samples, std::vector<png_bytep>& row_ptrs, char* error) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, error, png_store_error, png_ignore_warning);
    if (!png) {
        std::snprintf(error, 256, "cannot allocate PNG decoder");
        return false;
    }
    png_infop info = png_create_info_struct(png);
    PngMemoryReader reader{&data, 0};
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        return false;
    }
    png_set_read_fn(png, &reader, png_read_from_memory);
    png_read_info(png, info);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    if (png_get_rowbytes(png, info) != row_bytes) png_error(png, "unexpected row layout");
    for (std::size_t r = 0; r < rows; ++r) row_ptrs[r] = samples.data() + r * row_bytes;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

[[nodiscard]] inline ImageBuffer decode_png(const std::vector<std::uint8_t>& data, const std::string& name) {
    static constexpr std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (data.size() < 33 || !std::equal(std::begin(kSignature), std::end(kSignature), data.begin()) ||
        data[12] != 'I' || data[13] != 'H' || data[14] != 'D' || data[15] != 'R')
        throw ImageIoError("malformed header in " + name + ": bad PNG signature or IHDR");
    const std::uint32_t width = read_be32(data, 16);
    const std::uint32_t height = read_be32(data, 20);
    const int bit_depth = data[24];
    const int color_type = data[25];
    if (width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20))
        throw ImageIoError("malformed header in " + name + ": implausible dimensions");
    if (color_type == 4 || color_type == 6) throw ImageIoError("alpha channel not supported in " + name);
    if (color_type != 0 && color_type != 2)
        throw ImageIoError("unsupported format in " + name + ": PNG color type " + std::to_string(color_type));
    if (bit_depth != 8)
        throw ImageIoError("unsupported bit depth in " + name + ": " + std::to_string(bit_depth) + "-bit PNG");

    const std::size_t channels = color_type == 2 ? 3 : 1;
    const Size size{height, width};
    std::vector<std::uint8_t> samples(size.rows * size.cols * channels);
    std::vector<png_bytep> rows(size.rows);
    char error[256] = {0};
    if (!png_decode_rows(data, size.rows, size.cols * channels, samples, rows, error))
        throw ImageIoError("malformed PNG data in " + name + ": " + error);
    return ImageBuffer::from_interleaved(size, channels, samples);
}

inline bool png_encode(FILE* file, std::size_t rows, std::size_t cols, int color_type,
                       std::vector<png_bytep>& row_ptrs, char* error) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, error, png_store_error, png_ignore_warning);
    if (!png) {
        std::snprintf(error, 256, "cannot allocate PNG encoder");
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, info ? &info : nullptr);
        return false;
    }
    png_init_io(png, file);
    png_set_IHDR(png, info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

}  // namespace detail

/// Reads an 8-bit PGM/PPM (plain or raw) or 8-bit gray/RGB PNG. The format is
/// detected from the file contents, not the extension.
[[nodiscard]] inline ImageBuffer read_image(const std::filesystem::path& path) {
    const auto data = detail::read_file(path);
    const std::string name = path.string();
    if (data.size() >= 2 && data[0] == 'P') return detail::decode_pnm(data, name);
    if (data.size() >= 4 && data[0] == 0x89 && data[1] == 'P' && data[2] == 'N' && data[3] == 'G')
        return detail::decode_png(data, name);
    throw ImageIoError("unsupported format in " + name + ": not PNM or PNG");
}

/// Writes a quantized copy of `image`. Gray images may be written as PPM
/// (replicated channels); RGB to PGM requires WriteOptions::luma_convert.
inline void write_image(const ImageBuffer& image, const std::filesystem::path& path, ImageFormat format,
                        WriteOptions options = {}) {
    if (image.empty()) throw ImageIoError("cannot write an empty image");
    ImageBuffer out = image;
    if (format == ImageFormat::pgm && image.is_rgb()) {
        if (!options.luma_convert)
            throw ImageIoError("cannot write an RGB image as PGM without luma conversion");
        const Plane y = 0.299 * image.channel(0) + 0.587 * image.channel(1) + 0.114 * image.channel(2);
        out = ImageBuffer(y);
    }
    if (format == ImageFormat::ppm && !out.is_rgb()) out = ImageBuffer({out.channel(0), out.channel(0), out.channel(0)});

    const std::vector<std::uint8_t> bytes = out.to_interleaved();
    const std::size_t channels = out.channel_count();
    if (format == ImageFormat::png) {
        std::vector<png_bytep> rows(out.rows());
        auto* base = const_cast<std::uint8_t*>(bytes.data());
        for (std::size_t r = 0; r < out.rows(); ++r) rows[r] = base + r * out.cols() * channels;
        FILE* file = std::fopen(path.string().c_str(), "wb");
        if (!file) throw ImageIoError("cannot open " + path.string() + " for writing");
        char error[256] = {0};
        const bool ok = detail::png_encode(file, out.rows(), out.cols(),
                                           channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, rows, error);
        const bool closed = std::fclose(file) == 0;
        if (!ok) throw ImageIoError("PNG encoding failed for " + path.string() + ": " + error);
        if (!closed) throw ImageIoError("write failed for " + path.string());
        return;
    }

    const char magic = channels == 3 ? (options.ascii ? '3' : '6') : (options.ascii ? '2' : '5');
    const std::string header = std::string("P") + magic + "\n" + std::to_string(out.cols()) + " " +
                               std::to_string(out.rows()) + "\n255\n";
    if (!options.ascii) {
        detail::write_file(path, header, bytes);
        return;
    }
    std::string text;
    const std::size_t per_line = out.cols() * channels;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        text += std::to_string(bytes[i]);
        text += ((i + 1) % per_line == 0) ? '\n' : ' ';
    }
    detail::write_file(path, header, std::vector<std::uint8_t>(text.begin(), text.end()));
}

/// Writes using the format implied by the file extension.
inline void write_image(const ImageBuffer& image, const std::filesystem::path& path, WriteOptions options = {}) {
    const auto format = format_from_extension(path);
    if (!format) throw ImageIoError("unsupported format for " + path.string() + ": unknown extension");
    write_image(image, path, *format, options);
}

}  // namespace chebresize
