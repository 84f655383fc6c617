// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "chebresize/bicubic.hpp"
#include "chebresize/image.hpp"
#include "chebresize/image_io.hpp"
#include "chebresize/metrics.hpp"
#include "chebresize/parallel.hpp"
#include "chebresize/resize.hpp"

namespace chebresize {

/// Column header shared by every machine-readable report line.
inline constexpr const char* kCsvHeader = "command,input,method,n,m,N,M,mse,psnr,ssim,elapsed_s";
/// Benchmark reports append these columns to kCsvHeader.
inline constexpr const char* kBenchCsvExtra = "factor,direction,exact_count";

/// Numeric CSV field; infinity is written as the literal "inf".
[[nodiscard]] inline std::string csv_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// Resizes with any of the supported methods.
[[nodiscard]] inline ImageBuffer resize_with(Method method, const ImageBuffer& input, Size target, bool quantize = true) {
    switch (method) {
        case Method::lci: return resize_lci(input, target, quantize);
        case Method::bicubic: return resize_bicubic(input, target, {.antialias = true, .quantize = quantize});
        case Method::equispaced_lagrange: return resize_equispaced_lagrange(input, target, quantize);
    }
    throw std::invalid_argument("unknown method");
}

/// Size of the synthetic input used to test `direction` resizers at factor s
/// against a target of size `target`: floor(N/s) when testing upscalers, N*s
/// (floored for non-integer s) when testing downscalers.
[[nodiscard]] inline Size generated_input_size(Size target, double s, Direction direction) {
    if (!(s > 1.0) || !std::isfinite(s)) throw std::invalid_argument("benchmark factor must be greater than 1");
    const Direction opposite = direction == Direction::up ? Direction::down : Direction::up;
    const Size size{scaled_extent(target.rows, s, opposite), scaled_extent(target.cols, s, opposite)};
    if (size.rows < 2 || size.cols < 2)
        throw std::invalid_argument("target " + to_string(target) + " is too small for factor " + csv_number(s));
    return size;
}

/// Builds the common input image for testing `direction` resizers: the target
/// resized by the bicubic baseline in the opposite direction.
[[nodiscard]] inline ImageBuffer generate_input(const ImageBuffer& target, double s, Direction direction) {
    return resize_bicubic(target, generated_input_size(target.size(), s, direction));
}

struct BenchPlan {
    std::filesystem::path dataset_dir;
    std::vector<double> factors{2.0, 3.0, 4.0};
    std::vector<Direction> directions{Direction::down};
    std::vector<Method> methods{Method::lci, Method::bicubic};
    SsimParams ssim{};
    /// When false, elapsed times are reported as 0 so reports are byte-stable.
    bool timing = true;
    std::size_t workers = thread_count();
};

struct BenchRecord {
    std::string image_id;
    Method method = Method::lci;
    Direction direction = Direction::down;
    double factor = 0.0;
    Size source;
    Size target;
    MetricsReport metrics;
};

struct BenchAverage {
    Method method = Method::lci;
    Direction direction = Direction::down;
    double factor = 0.0;
    std::size_t images = 0;
    /// Rows with mse = 0 (infinite PSNR).
    std::size_t exact_count = 0;
    double mean_mse = 0.0;
    /// Mean over finite rows; +infinity only when every row is exact.
    double mean_psnr = 0.0;
    double mean_ssim = 0.0;
    double mean_elapsed_s = 0.0;
};

struct BenchReport {
    std::vector<BenchRecord> records;
    std::vector<BenchAverage> averages;
    std::vector<std::string> warnings;
};

inline void validate_plan(const BenchPlan& plan) {
    if (plan.factors.empty() || plan.directions.empty() || plan.methods.empty())
        throw std::invalid_argument("benchmark plan needs at least one factor, direction and method");
    for (double f : plan.factors)
        if (!(f > 1.0) || !std::isfinite(f)) throw std::invalid_argument("benchmark factors must be greater than 1");
}

/// Group means per (method, direction, factor), in first-seen order of the records.
[[nodiscard]] inline std::vector<BenchAverage> average_records(const std::vector<BenchRecord>& records) {
    std::vector<BenchAverage> out;
    std::vector<double> psnr_sum;
    for (const auto& r : records) {
        auto it = std::find_if(out.begin(), out.end(), [&](const BenchAverage& a) {
            return a.method == r.method && a.direction == r.direction && a.factor == r.factor;
        });
        if (it == out.end()) {
            out.push_back({r.method, r.direction, r.factor});
            psnr_sum.push_back(0.0);
            it = out.end() - 1;
        }
        auto& a = *it;
        ++a.images;
        a.mean_mse += r.metrics.mse;
        a.mean_ssim += r.metrics.ssim;
        a.mean_elapsed_s += r.metrics.elapsed_s.value_or(0.0);
        if (std::isinf(r.metrics.psnr))
            ++a.exact_count;
        else
            psnr_sum[static_cast<std::size_t>(it - out.begin())] += r.metrics.psnr;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& a = out[i];
        const auto n = static_cast<double>(a.images);
        a.mean_mse /= n;
        a.mean_ssim /= n;
        a.mean_elapsed_s /= n;
        const std::size_t finite = a.images - a.exact_count;
        a.mean_psnr = finite == 0 ? std::numeric_limits<double>::infinity() : psnr_sum[i] / static_cast<double>(finite);
    }
    return out;
}

[[nodiscard]] inline std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw std::invalid_argument(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && format_from_extension(entry.path())) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

/// Runs every method on every (image, factor, direction) of the plan. Each
/// image file is the reference; the input shared by all methods is generated
/// once from it with the bicubic baseline.
[[nodiscard]] inline BenchReport run_plan(const BenchPlan& plan) {
    validate_plan(plan);
    const auto files = list_images(plan.dataset_dir);

    struct ImageResult {
        std::vector<BenchRecord> records;
        std::vector<std::string> warnings;
        bool decoded = false;
    };
    std::vector<ImageResult> results(files.size());

    parallel_for(files.size(), [&](std::size_t i) {
        auto& out = results[i];
        const std::string id = files[i].filename().string();
        ImageBuffer reference;
        try {
            reference = read_image(files[i]);
        } catch (const ImageIoError& e) {
            out.warnings.push_back("skipping " + id + ": " + e.what());
            return;
        }
        out.decoded = true;
        for (double factor : plan.factors)
            for (Direction direction : plan.directions) {
                ImageBuffer input;
                try {
                    input = generate_input(reference, factor, direction);
                } catch (const std::invalid_argument& e) {
                    out.warnings.push_back("skipping " + id + " at factor " + csv_number(factor) + ": " + e.what());
                    continue;
                }
                for (Method method : plan.methods) {
                    if (method == Method::equispaced_lagrange) {
                        const Size a = input.size(), b = reference.size();
                        if (std::max({a.rows, a.cols, b.rows, b.cols}) > kEquispacedSizeGuard) {
                            out.warnings.push_back("skipping equispaced_lagrange on " + id + ": exceeds " +
                                                   std::to_string(kEquispacedSizeGuard) + " pixels per axis");
                            continue;
                        }
                    }
                    const auto start = std::chrono::steady_clock::now();
                    const ImageBuffer result = resize_with(method, input, reference.size());
                    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
                    BenchRecord record{id, method, direction, factor, input.size(), reference.size(),
                                       evaluate_metrics(reference, result, plan.ssim)};
                    record.metrics.elapsed_s = plan.timing ? elapsed.count() : 0.0;
                    out.records.push_back(std::move(record));
                }
            }
    }, plan.workers);

    BenchReport report;
    std::size_t decoded = 0;
    for (auto& r : results) {
        decoded += r.decoded ? 1 : 0;
        report.warnings.insert(report.warnings.end(), r.warnings.begin(), r.warnings.end());
        report.records.insert(report.records.end(), r.records.begin(), r.records.end());
    }
    if (decoded == 0) throw std::runtime_error("no decodable images in " + plan.dataset_dir.string());
    for (double f : plan.factors)
        if (std::floor(f) != f &&
            std::find(plan.directions.begin(), plan.directions.end(), Direction::down) != plan.directions.end())
            report.warnings.push_back("factor " + csv_number(f) +
                                      " is not an integer: downscale inputs use the floor-size extrapolation");
    report.averages = average_records(report.records);
    return report;
}

[[nodiscard]] inline std::string format_record(const BenchRecord& r) {
    return std::string("bench,") + r.image_id + "," + to_string(r.method) + "," + std::to_string(r.source.rows) + "," +
           std::to_string(r.source.cols) + "," + std::to_string(r.target.rows) + "," + std::to_string(r.target.cols) +
           "," + csv_number(r.metrics.mse) + "," + csv_number(r.metrics.psnr) + "," + csv_number(r.metrics.ssim) +
           "," + csv_number(r.metrics.elapsed_s.value_or(0.0)) + "," + csv_number(r.factor) + "," +
           to_string(r.direction) + "," + (r.metrics.mse == 0.0 ? "1" : "0");
}

[[nodiscard]] inline std::string format_average(const BenchAverage& a) {
    return std::string("bench-average,") + std::to_string(a.images) + " images," + to_string(a.method) + ",,,,," +
           csv_number(a.mean_mse) + "," + csv_number(a.mean_psnr) + "," + csv_number(a.mean_ssim) + "," +
           csv_number(a.mean_elapsed_s) + "," + csv_number(a.factor) + "," + to_string(a.direction) + "," +
           std::to_string(a.exact_count);
}

/// Writes records.csv and averages.csv into `dir`, creating it if needed.
inline void write_reports(const BenchReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::string header = std::string(kCsvHeader) + "," + kBenchCsvExtra + "\n";
    std::ofstream records(dir / "records.csv", std::ios::trunc);
    records << header;
    for (const auto& r : report.records) records << format_record(r) << "\n";
    std::ofstream averages(dir / "averages.csv", std::ios::trunc);
    averages << header;
    for (const auto& a : report.averages) averages << format_average(a) << "\n";
    if (!records || !averages) throw std::runtime_error("failed to write reports in " + dir.string());
}

/// Both sides of the odd-factor error bound for one image.
struct OddFactorCheck {
    std::size_t factor = 0;
    double noise_amplitude = 0.0;
    /// MSE between the clean image and the noisy input.
    double input_mse = 0.0;
    /// MSE between the decimated clean image and the LCI output.
    double output_mse = 0.0;
    double bound = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
    bool holds = false;
};

/// Downscales `image` plus uniform noise in [-delta, delta] by the odd factor
/// s with LCI and compares against the exact decimation of the clean image.
/// With delta = 0 the output must match exactly; otherwise the output MSE must
/// not exceed s^2 times the input MSE (plus 1e-9). All values are unquantized.
[[nodiscard]] inline OddFactorCheck verify_odd_factor_bound(const ImageBuffer& image, std::size_t s, double delta,
                                                            std::uint64_t seed = 1) {
    if (s < 3 || s % 2 == 0) throw std::invalid_argument("factor must be an odd integer >= 3");
    if (image.rows() % s != 0 || image.cols() % s != 0)
        throw std::invalid_argument("image size " + to_string(image.size()) + " is not divisible by " + std::to_string(s));
    if (!(delta >= 0.0)) throw std::invalid_argument("noise amplitude must be non-negative");

    std::vector<Plane> noisy = image.channels();
    if (delta > 0.0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> noise(-delta, delta);
        for (auto& p : noisy)
            for (Eigen::Index r = 0; r < p.rows(); ++r)
                for (Eigen::Index c = 0; c < p.cols(); ++c) p(r, c) += noise(rng);
    }
    const ImageBuffer input(std::move(noisy));
    const ImageBuffer reference = decimate_odd(image, s);
    const ImageBuffer output = resize_lci(input, reference.size(), false);

    SsimParams params;
    params.samples = SampleMode::raw;
    OddFactorCheck check;
    check.factor = s;
    check.noise_amplitude = delta;
    check.input_mse = mse(image, input, SampleMode::raw);
    check.output_mse = mse(reference, output, SampleMode::raw);
    check.bound = static_cast<double>(s * s) * check.input_mse;
    check.psnr = psnr_from_mse(check.output_mse);
    check.ssim = ssim(reference, output, params);
    check.holds = delta == 0.0 ? (check.output_mse == 0.0 && check.ssim == 1.0)
                               : check.output_mse <= check.bound + 1e-9;
    return check;
}

}  // namespace chebresize
