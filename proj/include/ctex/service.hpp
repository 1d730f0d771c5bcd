#ifndef CTEX_SERVICE_HPP
#define CTEX_SERVICE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctex/compositor.hpp"
#include "ctex/error.hpp"
#include "ctex/png_io.hpp"
#include "ctex/saliency.hpp"
#include "ctex/scene_io.hpp"
#include "ctex/sweep.hpp"

// Alignment trials: sessions over immutable scenes, stateless frame
// rendering, and error scoring against a hidden ground-truth pose.

namespace ctex {

using json = nlohmann::json;

/// Service-level failure carrying the HTTP status it maps to.
class ServiceError : public Error {
public:
    ServiceError(int status, const std::string& what) : Error(what), status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

struct TrialErrors {
    double translation_px = 0.0;
    double rotation_deg = 0.0;
    double scale = 0.0;
};

/// Euclidean translation error, absolute wrapped rotation error in degrees,
/// and |ln(s / s_truth)|.
inline TrialErrors score_pose(const Pose2D& pose, const Pose2D& truth)
{
    TrialErrors e;
    e.translation_px = std::hypot(pose.tx() - truth.tx(), pose.ty() - truth.ty());
    e.rotation_deg = std::abs(wrap_angle(pose.theta() - truth.theta())) * 180.0 / std::numbers::pi;
    e.scale = std::abs(std::log(pose.scale() / truth.scale()));
    return e;
}

struct TrialRecord {
    std::string session_id;
    std::string scene;
    VisMode mode{};
    double elapsed_ms = 0.0;
    TrialErrors errors;
};

inline json pose_to_json(const Pose2D& p)
{
    return {{"tx", p.tx()}, {"ty", p.ty()}, {"theta", p.theta()}, {"scale", p.scale()}};
}

/// Pose from a JSON object; missing components default to identity.
inline Pose2D pose_from_json(const json& j)
{
    if (!j.is_object())
        throw ServiceError(400, "pose must be an object");
    auto get = [&](const char* key, double dflt) {
        if (!j.contains(key))
            return dflt;
        if (!j[key].is_number())
            throw ServiceError(400, std::string("pose field '") + key + "' must be a number");
        return j[key].get<double>();
    };
    try {
        return Pose2D(get("tx", 0.0), get("ty", 0.0), get("theta", 0.0), get("scale", 1.0));
    } catch (const InvalidArgument& e) {
        throw ServiceError(400, e.what());
    }
}

inline json to_json(const TrialRecord& r)
{
    return {{"session_id", r.session_id},
            {"scene", r.scene},
            {"mode", std::string(to_string(r.mode))},
            {"elapsed_ms", r.elapsed_ms},
            {"translation_err", r.errors.translation_px},
            {"rotation_err", r.errors.rotation_deg},
            {"scale_err", r.errors.scale}};
}

inline TrialRecord trial_from_json(const json& j)
{
    TrialRecord r;
    r.session_id = j.at("session_id").get<std::string>();
    r.scene = j.at("scene").get<std::string>();
    const auto mode = parse_vis_mode(j.at("mode").get<std::string>());
    if (!mode)
        throw DecodeError("unknown mode in trial record");
    r.mode = *mode;
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.errors = {j.at("translation_err").get<double>(), j.at("rotation_err").get<double>(),
                j.at("scale_err").get<double>()};
    return r;
}

/// Reads a JSON-lines trial log.
inline std::vector<TrialRecord> read_trial_log(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::vector<TrialRecord> out;
    std::string line;
    while (std::getline(in, line))
        if (!trim(line).empty())
            out.push_back(trial_from_json(json::parse(line)));
    return out;
}

struct Session {
    std::string id;
    std::string scene_id;
    VisMode mode{};
    BlendMode blend{};
    double alpha = 1.0;
    Pose2D truth;
    Pose2D initial;
    std::uint64_t seed = 0;
    std::chrono::steady_clock::time_point start;
    std::int64_t start_epoch_ms = 0;
    std::optional<TrialRecord> committed;
};

struct FrameResult {
    Image image;
    SaliencyMetrics metrics;
};

/// Jitter ranges for randomized trial starts.
struct JitterRange {
    double translation = 24.0;
    double rotation = 0.5;
    double log_scale = 0.2;
};

inline Pose2D jitter_pose(std::uint64_t seed, const JitterRange& range = {})
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> t(-range.translation, range.translation);
    std::uniform_real_distribution<double> r(-range.rotation, range.rotation);
    std::uniform_real_distribution<double> s(-range.log_scale, range.log_scale);
    const double tx = t(rng), ty = t(rng), theta = r(rng), ls = s(rng);
    return {tx, ty, theta, std::exp(ls)};
}

struct ServiceOptions {
    SaliencyParams saliency{};
    std::optional<std::filesystem::path> trial_log;
};

class AlignService {
public:
    explicit AlignService(std::vector<Scene> scenes, ServiceOptions opt = ServiceOptions()) : opt_(std::move(opt))
    {
        for (Scene& s : scenes) {
            const std::string id = s.id;
            scenes_.emplace(id, std::make_shared<const Scene>(std::move(s)));
        }
    }

    json list_scenes() const
    {
        json out = json::array();
        for (const auto& [id, s] : scenes_) {
            json modes = json::array();
            for (VisMode m : s->modes())
                modes.push_back(std::string(to_string(m)));
            out.push_back({{"id", id}, {"name", s->name}, {"modes", modes},
                           {"frame", {s->frame_width, s->frame_height}}});
        }
        return out;
    }

    /// Body: {scene, mode, blend?, alpha?, jitter?, seed?}
    json create_session(const json& body)
    {
        if (!body.is_object())
            throw ServiceError(400, "request body must be a JSON object");
        const std::string scene_id = body.value("scene", "");
        const auto scene = find_scene(scene_id);
        const auto mode = parse_vis_mode(body.value("mode", std::string("complementary_photometric")));
        if (!mode)
            throw ServiceError(400, "unknown mode");
        if (!scene->assets.contains(*mode))
            throw ServiceError(404, "scene '" + scene_id + "' has no mode " + std::string(to_string(*mode)));
        const auto blend = parse_blend_mode(body.value("blend", std::string("additive")));
        if (!blend)
            throw ServiceError(400, "unknown blend mode");
        double alpha = default_alpha(*blend);
        if (body.contains("alpha")) {
            if (!body["alpha"].is_number())
                throw ServiceError(400, "alpha must be a number");
            alpha = body["alpha"].get<double>();
        }
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw ServiceError(400, "alpha must lie in [0,1]");

        Session s;
        s.scene_id = scene_id;
        s.mode = *mode;
        s.blend = *blend;
        s.alpha = alpha;
        s.truth = Pose2D::identity();
        s.start = std::chrono::steady_clock::now();
        s.start_epoch_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::system_clock::now().time_since_epoch())
                               .count();
        {
            std::lock_guard lock(mu_);
            s.seed = body.contains("seed") && body["seed"].is_number_unsigned() ? body["seed"].get<std::uint64_t>()
                                                                                 : id_rng_();
            s.id = next_id_locked();
            if (body.value("jitter", false))
                s.initial = jitter_pose(s.seed);
            sessions_.emplace(s.id, s);
        }
        return {{"session_id", s.id},
                {"frame", {scene->frame_width, scene->frame_height}},
                {"initial_pose", pose_to_json(s.initial)},
                {"seed", s.seed},
                {"mode", std::string(to_string(s.mode))},
                {"blend", std::string(to_string(s.blend))},
                {"alpha", s.alpha}};
    }

    /// Composite for a session at `pose`, with its salience metrics.
    FrameResult frame(const std::string& session_id, const Pose2D& pose) const
    {
        const Session s = get_session(session_id);
        const auto scene = find_scene(s.scene_id);
        FrameResult r{compose(*scene, s.mode, pose, s.blend, s.alpha), {}};
        r.metrics = metrics(saliency_map(r.image, opt_.saliency));
        return r;
    }

    Image saliency_image(const std::string& session_id, const Pose2D& pose) const
    {
        const Session s = get_session(session_id);
        const auto scene = find_scene(s.scene_id);
        return saliency_heatmap(saliency_map(compose(*scene, s.mode, pose, s.blend, s.alpha), opt_.saliency));
    }

    /// Body: {session, pose}. A session commits at most once.
    TrialRecord commit(const json& body)
    {
        if (!body.is_object() || !body.contains("session") || !body["session"].is_string())
            throw ServiceError(400, "commit needs a session id");
        if (!body.contains("pose"))
            throw ServiceError(400, "commit needs a pose");
        const Pose2D pose = pose_from_json(body["pose"]);
        const std::string id = body["session"].get<std::string>();

        std::lock_guard lock(mu_);
        const auto it = sessions_.find(id);
        if (it == sessions_.end())
            throw ServiceError(404, "unknown session " + id);
        Session& s = it->second;
        if (s.committed)
            throw ServiceError(409, "session " + id + " already committed");
        TrialRecord rec;
        rec.session_id = id;
        rec.scene = s.scene_id;
        rec.mode = s.mode;
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - s.start).count();
        rec.errors = score_pose(pose, s.truth);
        s.committed = rec;
        trials_.push_back(rec);
        if (opt_.trial_log) {
            std::ofstream log(*opt_.trial_log, std::ios::app);
            if (!log)
                throw IoError("cannot append to trial log " + opt_.trial_log->string());
            log << to_json(rec).dump() << '\n';
        }
        return rec;
    }

    json trials() const
    {
        std::lock_guard lock(mu_);
        json out = json::array();
        for (const TrialRecord& r : trials_)
            out.push_back(to_json(r));
        return out;
    }

    Session get_session(const std::string& id) const
    {
        std::lock_guard lock(mu_);
        const auto it = sessions_.find(id);
        if (it == sessions_.end())
            throw ServiceError(404, "unknown session " + id);
        return it->second;
    }

    std::shared_ptr<const Scene> find_scene(const std::string& id) const
    {
        const auto it = scenes_.find(id);
        if (it == scenes_.end())
            throw ServiceError(404, "unknown scene " + id);
        return it->second;
    }

private:
    std::string next_id_locked()
    {
        for (;;) {
            char buf[24];
            std::snprintf(buf, sizeof buf, "s%016llx", static_cast<unsigned long long>(id_rng_()));
            if (!sessions_.contains(buf))
                return buf;
        }
    }

    ServiceOptions opt_;
    std::map<std::string, std::shared_ptr<const Scene>> scenes_;
    mutable std::mutex mu_;
    std::map<std::string, Session> sessions_;
    std::vector<TrialRecord> trials_;
    std::mt19937_64 id_rng_{std::random_device{}()};
};

/// Bundled fixtures plus every *.scene manifest in `dir` (if given).
inline std::vector<Scene> load_scenes(const std::optional<std::filesystem::path>& dir)
{
    std::vector<Scene> scenes{checker_scene(), triangles_scene()};
    if (!dir)
        return scenes;
    if (!std::filesystem::is_directory(*dir))
        throw IoError("scenes dir not found: " + dir->string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(*dir))
        if (e.is_regular_file() && e.path().extension() == ".scene")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
        scenes.push_back(load_scene(f));
    return scenes;
}

} // namespace ctex

#endif // CTEX_SERVICE_HPP
