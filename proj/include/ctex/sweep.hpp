#ifndef CTEX_SWEEP_HPP
#define CTEX_SWEEP_HPP

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "ctex/compositor.hpp"
#include "ctex/error.hpp"
#include "ctex/saliency.hpp"

// Pose-error sweeps: salience metrics of composites as one pose component
// moves away from alignment.

namespace ctex {

enum class SweepAxis { TranslationX, TranslationY, Rotation, Scale };

inline std::string_view to_string(SweepAxis a)
{
    switch (a) {
    case SweepAxis::TranslationX: return "translation_x";
    case SweepAxis::TranslationY: return "translation_y";
    case SweepAxis::Rotation: return "rotation";
    case SweepAxis::Scale: return "scale";
    }
    return "unknown";
}

inline std::optional<SweepAxis> parse_sweep_axis(std::string_view s)
{
    for (SweepAxis a : {SweepAxis::TranslationX, SweepAxis::TranslationY, SweepAxis::Rotation, SweepAxis::Scale})
        if (s == to_string(a))
            return a;
    if (s == "tx")
        return SweepAxis::TranslationX;
    if (s == "ty")
        return SweepAxis::TranslationY;
    if (s == "theta")
        return SweepAxis::Rotation;
    return std::nullopt;
}

/// Offsets are pixels, pixels, radians or a unitless scale factor.
struct SweepSpec {
    SweepAxis axis = SweepAxis::TranslationX;
    std::vector<double> offsets;
    std::vector<VisMode> modes;
    BlendMode blend = BlendMode::AdditiveOST;
    double alpha = 1.0;
    SaliencyParams saliency{};
};

inline double identity_offset(SweepAxis axis) { return axis == SweepAxis::Scale ? 1.0 : 0.0; }

inline void validate(const SweepSpec& spec)
{
    if (spec.offsets.empty())
        throw InvalidArgument("sweep needs at least one offset");
    if (spec.modes.empty())
        throw InvalidArgument("sweep needs at least one mode");
    for (std::size_t i = 1; i < spec.offsets.size(); ++i)
        if (!(spec.offsets[i] > spec.offsets[i - 1]))
            throw InvalidArgument("sweep offsets must be strictly increasing");
    if (std::find(spec.offsets.begin(), spec.offsets.end(), identity_offset(spec.axis)) == spec.offsets.end())
        throw InvalidArgument("sweep offsets must include the identity offset");
    if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0))
        throw InvalidArgument("sweep alpha must lie in [0,1]");
}

/// Pose with one component set from the sweep offset, the rest identity.
inline Pose2D sweep_pose(SweepAxis axis, double offset)
{
    switch (axis) {
    case SweepAxis::TranslationX: return {offset, 0.0, 0.0, 1.0};
    case SweepAxis::TranslationY: return {0.0, offset, 0.0, 1.0};
    case SweepAxis::Rotation: return {0.0, 0.0, offset, 1.0};
    case SweepAxis::Scale: return {0.0, 0.0, 0.0, offset};
    }
    return {};
}

struct SweepRow {
    VisMode mode{};
    SweepAxis axis{};
    double offset = 0.0;
    double integral = 0.0;
    double max = 0.0;
};

struct SweepResult {
    std::string scene_id;
    std::string params_hash;
    std::vector<std::pair<std::string, std::string>> manifest; // echoed as "# key=value"
    std::vector<SweepRow> rows;
};

inline std::string format_g(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// FNV-1a 64 of a canonical description of (scene, spec).
inline std::string sweep_params_hash(const std::string& scene_id, const SweepSpec& spec)
{
    std::ostringstream canon;
    canon << "scene=" << scene_id << ";axis=" << to_string(spec.axis) << ";offsets=";
    for (double o : spec.offsets)
        canon << format_g(o, 17) << ',';
    canon << ";modes=";
    for (VisMode m : spec.modes)
        canon << to_string(m) << ',';
    canon << ";blend=" << to_string(spec.blend) << ";alpha=" << format_g(spec.alpha, 17)
          << ";work_max_dim=" << spec.saliency.work_max_dim << ";sigma=" << format_g(spec.saliency.sigma, 17);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : canon.str()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

/// Metrics of one composite frame.
inline SaliencyMetrics frame_metrics(const Scene& scene, VisMode mode, const Pose2D& pose, BlendMode blend_mode,
                                     double alpha, const SaliencyParams& params = {})
{
    return metrics(saliency_map(compose(scene, mode, pose, blend_mode, alpha), params));
}

/// Evaluates every (mode, offset) cell; rows come out mode-major in spec
/// order regardless of `threads`. Cells are independent, so parallel and
/// serial runs give identical rows.
inline SweepResult run_sweep(const Scene& scene, const SweepSpec& spec, unsigned threads = 0)
{
    validate(spec);
    for (VisMode m : spec.modes)
        if (!scene.assets.contains(m))
            throw MissingAsset("scene '" + scene.id + "' has no asset for mode " + std::string(to_string(m)));

    SweepResult result;
    result.scene_id = scene.id;
    result.params_hash = sweep_params_hash(scene.id, spec);
    result.manifest = {{"scene", scene.id},
                       {"axis", std::string(to_string(spec.axis))},
                       {"blend", std::string(to_string(spec.blend))},
                       {"alpha", format_g(spec.alpha, 9)},
                       {"work_max_dim", std::to_string(spec.saliency.work_max_dim)},
                       {"sigma", format_g(spec.saliency.sigma, 9)},
                       {"params_hash", result.params_hash}};

    const std::size_t n_off = spec.offsets.size();
    result.rows.resize(spec.modes.size() * n_off);
    auto eval = [&](std::size_t cell) {
        const VisMode mode = spec.modes[cell / n_off];
        const double offset = spec.offsets[cell % n_off];
        const SaliencyMetrics m = frame_metrics(scene, mode, sweep_pose(spec.axis, offset), spec.blend,
                                                spec.alpha, spec.saliency);
        result.rows[cell] = {mode, spec.axis, offset, m.integral, m.max};
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t cells = result.rows.size();
    if (threads <= 1 || cells <= 1) {
        for (std::size_t c = 0; c < cells; ++c)
            eval(c);
        return result;
    }
    std::vector<std::future<void>> workers;
    for (unsigned t = 0; t < threads; ++t)
        workers.push_back(std::async(std::launch::async, [&, t] {
            for (std::size_t c = t; c < cells; c += threads)
                eval(c);
        }));
    for (auto& w : workers)
        w.get();
    return result;
}

inline constexpr std::string_view kCsvHeader = "mode,axis,offset,integral,max";

inline std::string to_csv(const SweepResult& result)
{
    std::string out;
    for (const auto& [k, v] : result.manifest)
        out += "# " + k + "=" + v + "\n";
    out += kCsvHeader;
    out += '\n';
    for (const SweepRow& r : result.rows) {
        out += std::string(to_string(r.mode)) + ',' + std::string(to_string(r.axis)) + ','
            + format_g(r.offset, 9) + ',' + format_g(r.integral, 9) + ',' + format_g(r.max, 9) + '\n';
    }
    return out;
}

inline void export_csv(const SweepResult& result, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << to_csv(result);
    if (!out)
        throw IoError("write failed: " + path.string());
}

/// Inverse of to_csv.
inline SweepResult parse_csv(std::string_view text)
{
    SweepResult result;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto body = line.substr(line.find_first_not_of("# "));
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                result.manifest.emplace_back(body.substr(0, eq), body.substr(eq + 1));
                if (body.substr(0, eq) == "scene")
                    result.scene_id = body.substr(eq + 1);
                if (body.substr(0, eq) == "params_hash")
                    result.params_hash = body.substr(eq + 1);
            }
            continue;
        }
        if (!header) {
            if (line != kCsvHeader)
                throw DecodeError("unexpected CSV header: " + line);
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 5)
            throw DecodeError("malformed CSV row: " + line);
        const auto mode = parse_vis_mode(f[0]);
        const auto axis = parse_sweep_axis(f[1]);
        if (!mode || !axis)
            throw DecodeError("unknown mode or axis in row: " + line);
        try {
            result.rows.push_back({*mode, *axis, std::stod(f[2]), std::stod(f[3]), std::stod(f[4])});
        } catch (const std::exception&) {
            throw DecodeError("non-numeric value in row: " + line);
        }
    }
    if (!header)
        throw DecodeError("missing CSV header");
    return result;
}

inline SweepResult import_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

} // namespace ctex

#endif // CTEX_SWEEP_HPP
