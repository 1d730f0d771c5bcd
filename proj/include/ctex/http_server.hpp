#ifndef CTEX_HTTP_SERVER_HPP
#define CTEX_HTTP_SERVER_HPP

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

// Eigen must be seen before httplib: resolv.h defines a _res macro.
#include "ctex/png_io.hpp"
#include "ctex/service.hpp"
#include "ctex/sweep.hpp"

#include <httplib.h>

// HTTP binding of AlignService. Everything here is translation between
// requests and service calls.

namespace ctex {

inline constexpr int kDefaultPort = 8765;
inline constexpr const char* kPortEnv = "CTEX_PORT";

/// CTEX_PORT if set and valid, else `fallback`.
inline int resolve_port(int fallback)
{
    const char* env = std::getenv(kPortEnv);
    if (!env || !*env)
        return fallback;
    char* end = nullptr;
    const long p = std::strtol(env, &end, 10);
    if (*end != '\0' || p < 0 || p > 65535)
        return fallback;
    return static_cast<int>(p);
}

namespace detail {

inline void send_json(httplib::Response& res, const json& body, int status = 200)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, int status, const std::string& msg)
{
    send_json(res, {{"error", msg}}, status);
}

inline json parse_body(const httplib::Request& req)
{
    try {
        return json::parse(req.body);
    } catch (const json::parse_error& e) {
        throw ServiceError(400, std::string("malformed JSON: ") + e.what());
    }
}

/// Pose from query parameters; absent components are identity.
inline Pose2D query_pose(const httplib::Request& req)
{
    auto get = [&](const char* key, double dflt) {
        if (!req.has_param(key))
            return dflt;
        const std::string v = req.get_param_value(key);
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used == v.size())
                return d;
        } catch (const std::exception&) {
        }
        throw ServiceError(400, std::string("malformed pose parameter ") + key + "=" + v);
    };
    try {
        return Pose2D(get("tx", 0.0), get("ty", 0.0), get("theta", 0.0), get("scale", 1.0));
    } catch (const InvalidArgument& e) {
        throw ServiceError(400, e.what());
    }
}

inline std::string query_session(const httplib::Request& req)
{
    if (!req.has_param("session"))
        throw ServiceError(400, "missing session parameter");
    return req.get_param_value("session");
}

template <class F>
httplib::Server::Handler guarded(F f)
{
    return [f](const httplib::Request& req, httplib::Response& res) {
        try {
            f(req, res);
        } catch (const ServiceError& e) {
            send_error(res, e.status(), e.what());
        } catch (const InvalidArgument& e) {
            send_error(res, 400, e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, e.what());
        }
    };
}

} // namespace detail

inline void register_routes(httplib::Server& server, AlignService& service,
                            const std::optional<std::filesystem::path>& static_dir = std::nullopt)
{
    using detail::guarded;

    server.Get("/api/scenes", guarded([&service](const httplib::Request&, httplib::Response& res) {
        detail::send_json(res, service.list_scenes());
    }));

    server.Post("/api/session", guarded([&service](const httplib::Request& req, httplib::Response& res) {
        detail::send_json(res, service.create_session(detail::parse_body(req)));
    }));

    server.Get("/api/frame", guarded([&service](const httplib::Request& req, httplib::Response& res) {
        const FrameResult f = service.frame(detail::query_session(req), detail::query_pose(req));
        const auto png = encode_png(f.image);
        res.set_header("X-Salience-Integral", format_g(f.metrics.integral, 17));
        res.set_header("X-Salience-Max", format_g(f.metrics.max, 17));
        res.set_header("Access-Control-Expose-Headers", "X-Salience-Integral, X-Salience-Max");
        res.set_content(std::string(png.begin(), png.end()), "image/png");
    }));

    server.Get("/api/saliency", guarded([&service](const httplib::Request& req, httplib::Response& res) {
        const auto png = encode_png(service.saliency_image(detail::query_session(req), detail::query_pose(req)));
        res.set_content(std::string(png.begin(), png.end()), "image/png");
    }));

    server.Post("/api/commit", guarded([&service](const httplib::Request& req, httplib::Response& res) {
        detail::send_json(res, to_json(service.commit(detail::parse_body(req))));
    }));

    server.Get("/api/trials", guarded([&service](const httplib::Request&, httplib::Response& res) {
        detail::send_json(res, service.trials());
    }));

    if (static_dir)
        server.set_mount_point("/", static_dir->string());
}

} // namespace ctex

#endif // CTEX_HTTP_SERVER_HPP
