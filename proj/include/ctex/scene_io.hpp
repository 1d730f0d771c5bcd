#ifndef CTEX_SCENE_IO_HPP
#define CTEX_SCENE_IO_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ctex/compositor.hpp"
#include "ctex/error.hpp"
#include "ctex/geometry.hpp"
#include "ctex/png_io.hpp"
#include "ctex/saliency.hpp"
#include "ctex/sweep.hpp"

// Text formats: polygons as "x y" lines, scenes as "key = value" manifests.

namespace ctex {

inline std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// One vertex per line, counter-clockwise; blank lines and '#' comments skipped.
inline Polygon2D parse_polygon(const std::string& text)
{
    std::vector<Vec2> pts;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        std::istringstream ls(line);
        Vec2 p;
        std::string rest;
        if (!(ls >> p.x >> p.y) || (ls >> rest))
            throw DecodeError("polygon line " + std::to_string(lineno) + ": expected 'x y'");
        pts.push_back(p);
    }
    return Polygon2D(std::move(pts));
}

inline Polygon2D load_polygon(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_polygon(buf.str());
}

inline std::string format_polygon(const Polygon2D& poly)
{
    std::string out;
    for (const Vec2& v : poly.vertices())
        out += format_g(v.x, 17) + " " + format_g(v.y, 17) + "\n";
    return out;
}

namespace detail {

inline double parse_number(const std::string& key, const std::string& v)
{
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw DecodeError("scene key '" + key + "': not a number: " + v);
    }
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!trim(item).empty())
            out.push_back(trim(item));
    return out;
}

} // namespace detail

inline ColorRGB parse_color(const std::string& key, const std::string& v)
{
    const auto parts = detail::split(v, ',');
    if (parts.size() != 3)
        throw DecodeError("scene key '" + key + "': expected r,g,b");
    ColorRGB c{detail::parse_number(key, parts[0]), detail::parse_number(key, parts[1]),
               detail::parse_number(key, parts[2])};
    for (double ch : {c.r, c.g, c.b})
        if (!(ch >= 0.0 && ch <= 1.0))
            throw DecodeError("scene key '" + key + "': channels must lie in [0,1]");
    return c;
}

inline std::pair<int, int> parse_size(const std::string& key, const std::string& v)
{
    const auto x = v.find('x');
    if (x == std::string::npos)
        throw DecodeError("scene key '" + key + "': expected WxH");
    const double w = detail::parse_number(key, trim(v.substr(0, x)));
    const double h = detail::parse_number(key, trim(v.substr(x + 1)));
    if (w < 1 || h < 1 || w != std::floor(w) || h != std::floor(h))
        throw DecodeError("scene key '" + key + "': sizes must be positive integers");
    return {static_cast<int>(w), static_cast<int>(h)};
}

/// Scene from a manifest. Recognized keys:
///   id, name, texture (PNG path relative to the manifest, or builtin:checker /
///   builtin:triangles), frame = WxH, object = WxH, background = r,g,b,
///   modes = comma list, target = r,g,b, complement = invert|vst|patch,
///   vst_tol, patch, mask, stroke_width, stroke_color, geo_grid, geo_flags,
///   wire_grid, fresnel_band, fresnel_power, fresnel_tint.
/// Any other key is kept as metadata.
inline Scene parse_scene(const std::string& text, const std::filesystem::path& base_dir = {},
                         const std::string& default_id = "scene")
{
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DecodeError("scene line " + std::to_string(lineno) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end())
            return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto resolve = [&](const std::string& p) { return base_dir.empty() ? std::filesystem::path(p) : base_dir / p; };

    const std::string id = take("id").value_or(default_id);
    const std::string name = take("name").value_or(id);
    const std::string tex_ref = take("texture").value_or("");
    if (tex_ref.empty())
        throw DecodeError("scene '" + id + "': missing texture");
    Image texture = tex_ref == "builtin:checker" ? checker_texture()
        : tex_ref == "builtin:triangles"        ? triangles_texture()
                                                : load_png(resolve(tex_ref));
    if (const auto v = take("object")) {
        const auto [w, h] = parse_size("object", *v);
        texture = resize_bilinear(texture, w, h);
    }
    int frame_w = 2 * texture.width(), frame_h = 2 * texture.height();
    if (const auto v = take("frame"))
        std::tie(frame_w, frame_h) = parse_size("frame", *v);
    ColorRGB background = kFixtureBackground;
    if (const auto v = take("background"))
        background = parse_color("background", *v);

    std::vector<VisMode> modes(kAllModes.begin(), kAllModes.end());
    if (const auto v = take("modes")) {
        modes.clear();
        for (const auto& m : detail::split(*v, ',')) {
            const auto mode = parse_vis_mode(m);
            if (!mode)
                throw DecodeError("scene '" + id + "': unknown mode " + m);
            modes.push_back(*mode);
        }
    }

    SceneOptions opt;
    if (const auto v = take("target"))
        opt.target = parse_color("target", *v);
    const std::string complement = take("complement").value_or("invert");
    if (const auto v = take("vst_tol"))
        opt.vst_tolerance = detail::parse_number("vst_tol", *v);
    const auto patch = take("patch");
    const auto mask = take("mask");
    if (complement == "vst") {
        opt.vst_complement = true;
    } else if (complement == "patch") {
        if (!patch || !mask)
            throw DecodeError("scene '" + id + "': complement = patch needs patch and mask");
        opt.patch = resize_bilinear(load_png(resolve(*patch)), texture.width(), texture.height());
        opt.patch_roi = mask_from_image(
            resize_bilinear(load_png(resolve(*mask)), texture.width(), texture.height()));
    } else if (complement != "invert") {
        throw DecodeError("scene '" + id + "': unknown complement kind " + complement);
    }
    if (const auto v = take("stroke_width"))
        opt.stroke_width = detail::parse_number("stroke_width", *v);
    if (const auto v = take("stroke_color"))
        opt.stroke_color = parse_color("stroke_color", *v);
    if (const auto v = take("geo_grid"))
        opt.geometric.delaunay_grid = static_cast<int>(detail::parse_number("geo_grid", *v));
    if (const auto v = take("geo_flags")) {
        ComplementConfig& g = opt.geometric;
        g.edges = g.diagonals = g.bisectors = g.incircle = g.circumcircle = g.delaunay = false;
        for (const auto& f : detail::split(*v, ',')) {
            if (f == "edges") g.edges = true;
            else if (f == "diagonals") g.diagonals = true;
            else if (f == "bisectors") g.bisectors = true;
            else if (f == "incircle") g.incircle = true;
            else if (f == "circumcircle") g.circumcircle = true;
            else if (f == "delaunay") g.delaunay = true;
            else throw DecodeError("scene '" + id + "': unknown geometric primitive " + f);
        }
    }
    if (const auto v = take("wire_grid"))
        opt.wireframe_grid = static_cast<int>(detail::parse_number("wire_grid", *v));
    if (const auto v = take("fresnel_band"))
        opt.fresnel_band = detail::parse_number("fresnel_band", *v);
    if (const auto v = take("fresnel_power"))
        opt.fresnel_power = detail::parse_number("fresnel_power", *v);
    if (const auto v = take("fresnel_tint"))
        opt.fresnel_tint = parse_color("fresnel_tint", *v);

    Scene scene = build_scene(id, std::move(texture), frame_w, frame_h, background, modes, opt);
    scene.name = name;
    scene.metadata = std::map<std::string, std::string>(kv.begin(), kv.end());
    return scene;
}

inline Scene load_scene(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), path.parent_path(), path.stem().string());
}

/// Bundled fixture by id, or a manifest path.
inline Scene resolve_scene(const std::string& ref)
{
    if (ref == "checker")
        return checker_scene();
    if (ref == "triangles")
        return triangles_scene();
    return load_scene(ref);
}

} // namespace ctex

#endif // CTEX_SCENE_IO_HPP
