// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chebresize/bench.hpp"
#include "chebresize/bicubic.hpp"
#include "chebresize/image_io.hpp"
#include "chebresize/metrics.hpp"
#include "chebresize/nodes.hpp"
#include "chebresize/resize.hpp"

namespace chebresize::cli {

inline constexpr const char* kCsvHelp =
    "CSV output (--csv) prints a header and one row per result with the columns\n"
    "  command,input,method,n,m,N,M,mse,psnr,ssim,elapsed_s\n"
    "where n x m is the source size and N x M the result size (rows x columns),\n"
    "psnr is the literal 'inf' for identical images, and empty fields are not\n"
    "applicable. bench rows append factor,direction,exact_count.\n"
    "Set CHEBRESIZE_THREADS to cap internal parallelism (0 = one per core).";

namespace detail {

[[nodiscard]] inline std::string format_g(double v, int digits) {
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// Shortest text that reads back to exactly `v`.
[[nodiscard]] inline std::string format_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

[[nodiscard]] inline std::string format_fixed(double v, int decimals) {
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

/// Parses "ROWSxCOLS".
[[nodiscard]] inline Size parse_size(const std::string& text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) throw std::invalid_argument("size must look like ROWSxCOLS, got '" + text + "'");
    std::size_t used_r = 0, used_c = 0;
    const std::string rs = text.substr(0, x), cs = text.substr(x + 1);
    long long r = -1, c = -1;
    try {
        r = std::stoll(rs, &used_r);
        c = std::stoll(cs, &used_c);
    } catch (const std::exception&) {
    }
    if (r < 1 || c < 1 || used_r != rs.size() || used_c != cs.size())
        throw std::invalid_argument("size must look like ROWSxCOLS with positive integers, got '" + text + "'");
    return {static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
}

[[nodiscard]] inline Method require_method(const std::string& name) {
    const auto m = parse_method(name);
    if (!m) throw std::invalid_argument("unknown method '" + name + "' (lci, bicubic, equispaced_lagrange)");
    return *m;
}

[[nodiscard]] inline SsimMode require_ssim_mode(const std::string& name) {
    if (name == "global") return SsimMode::global;
    if (name == "windowed") return SsimMode::windowed;
    throw std::invalid_argument("unknown SSIM mode '" + name + "' (global, windowed)");
}

[[nodiscard]] inline std::string csv_row(const std::string& command, const std::string& input, const std::string& method,
                                         Size source, Size result, const std::optional<MetricsReport>& metrics,
                                         std::optional<double> elapsed) {
    std::string row = command + "," + input + "," + method + "," + std::to_string(source.rows) + "," +
                      std::to_string(source.cols) + "," + std::to_string(result.rows) + "," +
                      std::to_string(result.cols) + ",";
    if (metrics)
        row += csv_number(metrics->mse) + "," + csv_number(metrics->psnr) + "," + csv_number(metrics->ssim) + ",";
    else
        row += ",,,";
    row += elapsed ? csv_number(*elapsed) : std::string();
    return row;
}

[[nodiscard]] inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

/// Runs the command line tool. Returns the process exit status; normal output
/// goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Image resizing by Lagrange interpolation at Chebyshev nodes"};
    app.require_subcommand(1);
    app.footer(kCsvHelp);

    // resize
    struct {
        std::string input, output, size, method = "lci";
        double scale = 0.0;
        bool up = false, down = false, csv = false, no_timing = false, luma = false, no_antialias = false;
    } rs;
    auto* resize_cmd = app.add_subcommand("resize", "Resize an image to a target size or by a scale factor");
    resize_cmd->add_option("input", rs.input, "Input image (PGM, PPM or PNG)")->required();
    resize_cmd->add_option("output", rs.output, "Output image; format from the extension")->required();
    auto* size_opt = resize_cmd->add_option("--size", rs.size, "Target size ROWSxCOLS (height x width)");
    auto* scale_opt = resize_cmd->add_option("--scale", rs.scale, "Scale factor; needs --up or --down");
    size_opt->excludes(scale_opt);
    auto* up_flag = resize_cmd->add_flag("--up", rs.up, "Enlarge by --scale");
    auto* down_flag = resize_cmd->add_flag("--down", rs.down, "Shrink by --scale");
    up_flag->excludes(down_flag);
    up_flag->needs(scale_opt);
    down_flag->needs(scale_opt);
    resize_cmd->add_option("--method", rs.method, "lci (default), bicubic or equispaced_lagrange");
    resize_cmd->add_flag("--no-antialias", rs.no_antialias, "Disable bicubic antialiasing when shrinking");
    resize_cmd->add_flag("--luma", rs.luma, "Allow writing an RGB result to PGM as luma");
    resize_cmd->add_flag("--csv", rs.csv, "Machine-readable output");
    resize_cmd->add_flag("--no-timing", rs.no_timing, "Omit elapsed time");

    // metrics / compare share SSIM options
    struct {
        std::string reference, candidate, ssim_mode = "global";
        std::size_t window = 8;
        bool unsquared = false, raw = false, csv = false, no_timing = false;
        std::vector<std::string> methods{"lci", "bicubic"};
    } ms;
    auto* metrics_cmd = app.add_subcommand("metrics", "MSE, PSNR and SSIM between two images of equal size");
    metrics_cmd->add_option("reference", ms.reference, "Reference image")->required();
    metrics_cmd->add_option("candidate", ms.candidate, "Candidate image")->required();
    auto* compare_cmd =
        app.add_subcommand("compare", "Resize an input to the reference size with each method and score the results");
    compare_cmd->add_option("reference", ms.reference, "Reference (target) image")->required();
    compare_cmd->add_option("input", ms.candidate, "Input image to resize")->required();
    compare_cmd->add_option("--methods", ms.methods, "Methods to run")->delimiter(',');
    for (auto* cmd : {metrics_cmd, compare_cmd}) {
        cmd->add_option("--ssim-mode", ms.ssim_mode, "global (default) or windowed");
        cmd->add_option("--window", ms.window, "Window size for windowed SSIM");
        cmd->add_flag("--unsquared-constants", ms.unsquared, "Use c1 = 0.01 L, c2 = 0.03 L");
        cmd->add_flag("--csv", ms.csv, "Machine-readable output");
        cmd->add_flag("--no-timing", ms.no_timing, "Omit elapsed time");
    }
    compare_cmd->add_flag("--raw", ms.raw, "Score unquantized results");

    // nodes
    struct {
        std::size_t mu = 0;
        bool chebyshev = false, equispaced = false, angles = false, csv = false;
    } ns;
    auto* nodes_cmd = app.add_subcommand("nodes", "Print an interpolation node set, one node per line");
    nodes_cmd->add_option("mu", ns.mu, "Number of nodes")->required();
    auto* cheb_flag = nodes_cmd->add_flag("--chebyshev", ns.chebyshev, "First-kind Chebyshev nodes (default)");
    auto* equi_flag = nodes_cmd->add_flag("--equispaced", ns.equispaced, "Interior equispaced nodes");
    cheb_flag->excludes(equi_flag);
    nodes_cmd->add_flag("--angles", ns.angles, "Also print the angle of each Chebyshev node");
    nodes_cmd->add_flag("--csv", ns.csv, "CSV output with columns k,node,angle");

    // bench
    struct {
        std::string dir, out = "bench-out", ssim_mode = "global";
        std::vector<double> factors{2.0, 3.0, 4.0};
        std::vector<std::string> directions{"down"};
        std::vector<std::string> methods{"lci", "bicubic"};
        std::size_t workers = 0;
        bool no_timing = false, csv = false;
    } bs;
    auto* bench_cmd = app.add_subcommand("bench", "Benchmark methods on a directory of reference images");
    bench_cmd->add_option("dataset", bs.dir, "Directory of PGM/PPM/PNG images")->required();
    bench_cmd->add_option("--factors", bs.factors, "Scale factors > 1")->delimiter(',');
    bench_cmd->add_option("--directions", bs.directions, "up and/or down")->delimiter(',');
    bench_cmd->add_option("--methods", bs.methods, "lci, bicubic, equispaced_lagrange")->delimiter(',');
    bench_cmd->add_option("--ssim-mode", bs.ssim_mode, "global (default) or windowed");
    bench_cmd->add_option("--out", bs.out, "Directory for records.csv and averages.csv");
    bench_cmd->add_option("--workers", bs.workers, "Images processed in parallel (0 = auto)");
    bench_cmd->add_flag("--no-timing", bs.no_timing, "Report elapsed times as 0");
    bench_cmd->add_flag("--csv", bs.csv, "Print averages as CSV instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (resize_cmd->parsed()) {
            if (rs.size.empty() && scale_opt->count() == 0) throw std::invalid_argument("one of --size or --scale is required");
            ResizeSpec spec;
            spec.method = detail::require_method(rs.method);
            if (!rs.size.empty()) {
                spec.intent = detail::parse_size(rs.size);
            } else {
                if (rs.up == rs.down) throw std::invalid_argument("--scale needs exactly one of --up or --down");
                spec.intent = ScaleFactor{rs.scale, rs.up ? Direction::up : Direction::down};
            }
            const ImageBuffer input = read_image(rs.input);
            const ResolvedTarget target = resolve_target(spec, input.size());
            for (const auto& w : target.warnings) err << "warning: " << w << "\n";
            if (spec.method == Method::equispaced_lagrange)
                if (auto w = equispaced_size_warning(input.size())) err << "warning: " << *w << "\n";
            const auto start = std::chrono::steady_clock::now();
            const ImageBuffer result =
                spec.method == Method::bicubic
                    ? resize_bicubic(input, target.size, {.antialias = !rs.no_antialias, .quantize = true})
                    : resize_with(spec.method, input, target.size);
            const double elapsed = detail::seconds_since(start);
            write_image(result, rs.output, WriteOptions{.luma_convert = rs.luma});
            const std::optional<double> shown = rs.no_timing ? std::nullopt : std::optional<double>(elapsed);
            if (rs.csv) {
                out << kCsvHeader << "\n"
                    << detail::csv_row("resize", rs.input, to_string(spec.method), input.size(), result.size(),
                                       std::nullopt, shown)
                    << "\n";
            } else {
                out << "resize " << to_string(input.size()) << " -> " << to_string(result.size())
                    << " method=" << to_string(spec.method);
                if (shown) out << " elapsed=" << detail::format_fixed(*shown, 6) << " s";
                out << "\n";
            }
            return 0;
        }

        if (metrics_cmd->parsed() || compare_cmd->parsed()) {
            SsimParams params;
            params.mode = detail::require_ssim_mode(ms.ssim_mode);
            params.window = ms.window;
            params.squared_constants = !ms.unsquared;
            const ImageBuffer reference = read_image(ms.reference);
            const ImageBuffer other = read_image(ms.candidate);
            if (reference.channel_count() != other.channel_count())
                throw std::invalid_argument("images differ in channel count");

            struct Row {
                std::string method;
                MetricsReport report;
            };
            std::vector<Row> rows;
            const bool is_compare = compare_cmd->parsed();
            if (!is_compare) {
                if (reference.size() != other.size())
                    throw std::invalid_argument("image sizes differ: " + to_string(reference.size()) + " vs " +
                                                to_string(other.size()));
                const auto start = std::chrono::steady_clock::now();
                MetricsReport r = evaluate_metrics(reference, other, params);
                r.elapsed_s = detail::seconds_since(start);
                rows.push_back({"-", r});
            } else {
                if (ms.raw) params.samples = SampleMode::raw;
                for (const auto& name : ms.methods) {
                    const Method method = detail::require_method(name);
                    const auto start = std::chrono::steady_clock::now();
                    const ImageBuffer result = resize_with(method, other, reference.size(), !ms.raw);
                    const double elapsed = detail::seconds_since(start);
                    MetricsReport r = evaluate_metrics(reference, result, params);
                    r.elapsed_s = elapsed;
                    rows.push_back({to_string(method), r});
                }
            }
            const std::string command = is_compare ? "compare" : "metrics";
            if (ms.csv) out << kCsvHeader << "\n";
            for (const auto& row : rows) {
                const std::optional<double> shown = ms.no_timing ? std::nullopt : row.report.elapsed_s;
                if (ms.csv) {
                    const Size result_size = reference.size();
                    const Size source_size = is_compare ? other.size() : reference.size();
                    out << detail::csv_row(command, ms.candidate, row.method, source_size, result_size, row.report, shown)
                        << "\n";
                    continue;
                }
                if (is_compare) out << "[" << row.method << "]\n";
                out << "MSE  " << detail::format_g(row.report.mse, 10) << "\n"
                    << "PSNR " << detail::format_fixed(row.report.psnr, 3) << " dB\n"
                    << "SSIM " << detail::format_fixed(row.report.ssim, 3) << " (" << to_string(row.report.ssim_mode)
                    << ")\n";
                if (shown) out << "time " << detail::format_fixed(*shown, 6) << " s\n";
            }
            return 0;
        }

        if (nodes_cmd->parsed()) {
            if (ns.mu == 0) throw std::invalid_argument("mu must be at least 1");
            if (ns.csv) out << "k,node,angle\n";
            if (ns.equispaced) {
                const EquispacedGrid grid(ns.mu);
                for (std::size_t k = 0; k < grid.order(); ++k) {
                    if (ns.csv)
                        out << k + 1 << "," << detail::format_exact(grid.nodes()[k]) << ",\n";
                    else
                        out << detail::format_exact(grid.nodes()[k]) << "\n";
                }
                return 0;
            }
            const ChebyshevGrid grid(ns.mu);
            for (std::size_t k = 0; k < grid.order(); ++k) {
                const std::string node = detail::format_exact(grid.nodes()[k]);
                const std::string angle = detail::format_exact(grid.angles()[k]);
                if (ns.csv)
                    out << k + 1 << "," << node << "," << angle << "\n";
                else if (ns.angles)
                    out << node << " " << angle << "\n";
                else
                    out << node << "\n";
            }
            return 0;
        }

        if (bench_cmd->parsed()) {
            BenchPlan plan;
            plan.dataset_dir = bs.dir;
            plan.factors = bs.factors;
            plan.directions.clear();
            for (const auto& d : bs.directions) {
                if (d == "up")
                    plan.directions.push_back(Direction::up);
                else if (d == "down")
                    plan.directions.push_back(Direction::down);
                else
                    throw std::invalid_argument("unknown direction '" + d + "' (up, down)");
            }
            plan.methods.clear();
            for (const auto& m : bs.methods) plan.methods.push_back(detail::require_method(m));
            plan.ssim.mode = detail::require_ssim_mode(bs.ssim_mode);
            plan.timing = !bs.no_timing;
            if (bs.workers > 0) plan.workers = bs.workers;
            const BenchReport report = run_plan(plan);
            for (const auto& w : report.warnings) err << "warning: " << w << "\n";
            write_reports(report, bs.out);
            if (bs.csv) {
                out << kCsvHeader << "," << kBenchCsvExtra << "\n";
                for (const auto& a : report.averages) out << format_average(a) << "\n";
            } else {
                out << "SSIM mode: " << to_string(plan.ssim.mode) << "\n";
                for (const auto& a : report.averages) {
                    const std::string label = a.method == Method::bicubic ? "BIC-like" : to_string(a.method);
                    out << (a.direction == Direction::up ? "x" : ":") << csv_number(a.factor) << " " << label
                        << ": PSNR " << detail::format_fixed(a.mean_psnr, 3) << " SSIM "
                        << detail::format_fixed(a.mean_ssim, 3) << " exact " << a.exact_count << "/" << a.images;
                    if (plan.timing) out << " T " << detail::format_fixed(a.mean_elapsed_s, 4) << " s";
                    out << "\n";
                }
                out << "wrote " << (std::filesystem::path(bs.out) / "records.csv").string() << " and averages.csv\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace chebresize::cli
