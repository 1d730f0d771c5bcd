#ifndef CTEX_COMPOSITOR_HPP
#define CTEX_COMPOSITOR_HPP

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctex/error.hpp"
#include "ctex/geometry.hpp"
#include "ctex/image.hpp"
#include "ctex/texture_lab.hpp"

// Planar alignment scene: a static real texture and a movable virtual
// replica rendered in one of several visualization modes.

namespace ctex {

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double theta)
{
    double t = std::remainder(theta, 2.0 * std::numbers::pi);
    if (t <= -std::numbers::pi)
        t += 2.0 * std::numbers::pi;
    return t;
}

/// Similarity pose of the virtual replica: translation in pixels, rotation
/// in radians and uniform scale about the object center. Scale stands in
/// for misalignment in depth.
class Pose2D {
public:
    static constexpr double kMinScale = 0.1;
    static constexpr double kMaxScale = 10.0;

    Pose2D() = default;
    Pose2D(double tx, double ty, double theta, double scale)
        : tx_(tx), ty_(ty), theta_(wrap_angle(theta)), scale_(scale)
    {
        if (!std::isfinite(tx) || !std::isfinite(ty) || !std::isfinite(theta) || !std::isfinite(scale))
            throw InvalidArgument("pose components must be finite");
        if (scale < kMinScale || scale > kMaxScale)
            throw InvalidArgument("pose scale must lie in [0.1, 10]");
    }

    static Pose2D identity() { return {}; }

    double tx() const { return tx_; }
    double ty() const { return ty_; }
    double theta() const { return theta_; }
    double scale() const { return scale_; }

    Pose2D translated(double dx, double dy) const { return {tx_ + dx, ty_ + dy, theta_, scale_}; }

    friend bool operator==(const Pose2D&, const Pose2D&) = default;

private:
    double tx_ = 0.0;
    double ty_ = 0.0;
    double theta_ = 0.0;
    double scale_ = 1.0;
};

enum class VisMode { ComplementaryPhotometric, ComplementaryGeometric, Silhouette, Wireframe, Fresnel };
enum class BlendMode { AdditiveOST, OverVST };

inline constexpr std::array<VisMode, 5> kAllModes{VisMode::ComplementaryPhotometric,
                                                  VisMode::ComplementaryGeometric, VisMode::Silhouette,
                                                  VisMode::Wireframe, VisMode::Fresnel};

inline std::string_view to_string(VisMode m)
{
    switch (m) {
    case VisMode::ComplementaryPhotometric: return "complementary_photometric";
    case VisMode::ComplementaryGeometric: return "complementary_geometric";
    case VisMode::Silhouette: return "silhouette";
    case VisMode::Wireframe: return "wireframe";
    case VisMode::Fresnel: return "fresnel";
    }
    return "unknown";
}

inline std::string_view to_string(BlendMode m)
{
    return m == BlendMode::AdditiveOST ? "additive" : "over";
}

inline std::optional<VisMode> parse_vis_mode(std::string_view s)
{
    for (VisMode m : kAllModes)
        if (s == to_string(m))
            return m;
    if (s == "complementary" || s == "photometric")
        return VisMode::ComplementaryPhotometric;
    if (s == "geometric")
        return VisMode::ComplementaryGeometric;
    return std::nullopt;
}

inline std::optional<BlendMode> parse_blend_mode(std::string_view s)
{
    if (s == "additive" || s == "ost")
        return BlendMode::AdditiveOST;
    if (s == "over" || s == "vst")
        return BlendMode::OverVST;
    return std::nullopt;
}

/// Replica alpha used when a caller does not pick one.
inline double default_alpha(BlendMode m) { return m == BlendMode::AdditiveOST ? 1.0 : 0.6; }

struct ObjectRect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    Vec2 center() const { return {x + 0.5 * (width - 1), y + 0.5 * (height - 1)}; }
    bool contains(int px, int py) const { return px >= x && py >= y && px < x + width && py < y + height; }
};

inline ObjectRect centered_rect(int frame_w, int frame_h, int w, int h)
{
    return {(frame_w - w) / 2, (frame_h - h) / 2, w, h};
}

/// Resamples `src` under `pose` into a frame_w x frame_h canvas.
///
/// At identity the source lands with its top-left pixel at `placement`.
/// Rotation and scale pivot on the source center. Samples are bilinear in
/// premultiplied space with transparent texels beyond the source border;
/// samples that fall exactly on a texel are copied verbatim, so identity
/// and integer translations reproduce the source bit for bit.
inline Image warp(const Image& src, const Pose2D& pose, int frame_w, int frame_h, Vec2 placement)
{
    Image out(frame_w, frame_h);
    const Vec2 src_center{0.5 * (src.width() - 1), 0.5 * (src.height() - 1)};
    const Vec2 frame_center = placement + src_center;
    const double c = std::cos(pose.theta()), s = std::sin(pose.theta());
    const double inv_scale = 1.0 / pose.scale();

    auto texel = [&](int x, int y) -> Rgba {
        if (!src.contains(x, y))
            return kTransparent;
        const Rgba& p = src.at(x, y);
        return {p.r * p.a, p.g * p.a, p.b * p.a, p.a};
    };

    for (int y = 0; y < frame_h; ++y)
        for (int x = 0; x < frame_w; ++x) {
            const double dx = x - frame_center.x - pose.tx();
            const double dy = y - frame_center.y - pose.ty();
            const double sx = (c * dx + s * dy) * inv_scale + src_center.x;
            const double sy = (-s * dx + c * dy) * inv_scale + src_center.y;
            const double fx = std::floor(sx), fy = std::floor(sy);
            if (fx < -1.0 || fy < -1.0 || fx >= src.width() || fy >= src.height())
                continue;
            const int x0 = static_cast<int>(fx), y0 = static_cast<int>(fy);
            const double tx = sx - fx, ty = sy - fy;
            if (tx == 0.0 && ty == 0.0) {
                if (src.contains(x0, y0))
                    out.at(x, y) = src.at(x0, y0);
                continue;
            }
            const Rgba p00 = texel(x0, y0), p10 = texel(x0 + 1, y0);
            const Rgba p01 = texel(x0, y0 + 1), p11 = texel(x0 + 1, y0 + 1);
            auto mix = [&](double Rgba::*ch) {
                return (1 - ty) * ((1 - tx) * p00.*ch + tx * p10.*ch)
                    + ty * ((1 - tx) * p01.*ch + tx * p11.*ch);
            };
            // Rounding in the rotation leaves ~1e-16 coverage slivers outside the footprint.
            const double a = mix(&Rgba::a);
            if (a <= 1e-12)
                continue;
            out.at(x, y) = {clamp01(mix(&Rgba::r) / a), clamp01(mix(&Rgba::g) / a),
                            clamp01(mix(&Rgba::b) / a), clamp01(a)};
        }
    return out;
}

/// Places `src` centered in the frame.
inline Image warp(const Image& src, const Pose2D& pose, int frame_w, int frame_h)
{
    const ObjectRect r = centered_rect(frame_w, frame_h, src.width(), src.height());
    return warp(src, pose, frame_w, frame_h, {double(r.x), double(r.y)});
}

/// Combines an overlay with a base image.
///
/// AdditiveOST adds a_o * overlay to the base (light addition of an optical
/// see-through display) and keeps the base alpha. OverVST is source-over.
inline Image blend(const Image& base, const Image& overlay, BlendMode mode)
{
    if (!base.same_shape(overlay))
        throw DimensionMismatch("blend: base and overlay sizes differ");
    Image out = base;
    auto dst = out.pixels();
    auto ov = overlay.pixels();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const Rgba& o = ov[i];
        Rgba& d = dst[i];
        if (mode == BlendMode::AdditiveOST) {
            d.r = clamp01(d.r + o.a * o.r);
            d.g = clamp01(d.g + o.a * o.g);
            d.b = clamp01(d.b + o.a * o.b);
        } else {
            const double k = 1.0 - o.a;
            d.r = o.a * o.r + k * d.r;
            d.g = o.a * o.g + k * d.g;
            d.b = o.a * o.b + k * d.b;
            d.a = o.a + k * d.a;
        }
    }
    return out;
}

/// Rim glow approximating a fresnel shader on a planar object: interior
/// pixels within `band_w` of the silhouette get intensity (1 - d/band_w)^power.
inline Image fresnel_field(const Polygon2D& silhouette, int width, int height, double band_w,
                           double power, const ColorRGB& tint)
{
    if (band_w < 1.0)
        throw InvalidArgument("fresnel band width must be >= 1");
    if (!(power > 0.0))
        throw InvalidArgument("fresnel power must be > 0");
    Image img(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const Vec2 p{double(x), double(y)};
            if (!silhouette.contains(p))
                continue;
            const double d = silhouette.boundary_distance(p);
            if (d > band_w)
                continue;
            const double intensity = std::pow(1.0 - d / band_w, power);
            img.at(x, y) = {tint.r * intensity, tint.g * intensity, tint.b * intensity, intensity};
        }
    return img;
}

/// How the replica assets of a scene are derived from the real texture.
struct SceneOptions {
    ColorRGB target = kWhite; // inversion target of the photometric complement
    bool vst_complement = false;
    double vst_tolerance = kDefaultVstTolerance;
    std::optional<Mask> patch_roi; // non-homogeneous complement when set together with patch
    std::optional<Image> patch;
    ColorRGB stroke_color = kWhite;
    double stroke_width = 1.0;
    ComplementConfig geometric{};
    int wireframe_grid = 8;
    double fresnel_band = 8.0;
    double fresnel_power = 2.0;
    ColorRGB fresnel_tint = kWhite;
};

struct Scene {
    std::string id;
    std::string name;
    int frame_width = 0;
    int frame_height = 0;
    ColorRGB background{};
    Image real_texture{1, 1};
    ObjectRect object_rect{};
    std::map<VisMode, Image> assets; // texture-local, same size as real_texture
    std::map<std::string, std::string> metadata;

    /// Object outline in frame coordinates (border pixel centers).
    Polygon2D silhouette() const
    {
        const auto& r = object_rect;
        return Polygon2D::rectangle(r.x, r.y, r.x + r.width - 1, r.y + r.height - 1);
    }

    Vec2 placement() const { return {double(object_rect.x), double(object_rect.y)}; }

    std::vector<VisMode> modes() const
    {
        std::vector<VisMode> out;
        for (const auto& [m, img] : assets)
            out.push_back(m);
        return out;
    }
};

/// Texture-local outline through the border pixel centers.
inline Polygon2D local_outline(int width, int height)
{
    return Polygon2D::rectangle(0, 0, width - 1, height - 1);
}

inline Image make_asset(const Image& tex, VisMode mode, const SceneOptions& opt)
{
    const int w = tex.width(), h = tex.height();
    switch (mode) {
    case VisMode::ComplementaryPhotometric:
        if (opt.patch_roi && opt.patch)
            return patch_complement(tex, *opt.patch_roi, *opt.patch);
        if (opt.vst_complement)
            return vst_complement(tex, predominant_color(tex), opt.vst_tolerance);
        return invert_complement(tex, opt.target);
    case VisMode::ComplementaryGeometric: {
        ComplementConfig cfg = opt.geometric;
        cfg.stroke_color = opt.stroke_color;
        cfg.stroke_width = opt.stroke_width;
        return rasterize(geometric_complement(local_outline(w, h), cfg), w, h);
    }
    case VisMode::Silhouette: {
        PrimitiveSet set;
        set.segments = polygon_edges(local_outline(w, h));
        set.stroke_color = opt.stroke_color;
        set.stroke_width = opt.stroke_width;
        return rasterize(set, w, h);
    }
    case VisMode::Wireframe: {
        PrimitiveSet set;
        set.segments = triangulation_segments(
            delaunay(polygon_with_interior_grid(local_outline(w, h), opt.wireframe_grid)));
        set.stroke_color = opt.stroke_color;
        set.stroke_width = opt.stroke_width;
        return rasterize(set, w, h);
    }
    case VisMode::Fresnel:
        return fresnel_field(local_outline(w, h), w, h, opt.fresnel_band, opt.fresnel_power,
                             opt.fresnel_tint);
    }
    throw MissingAsset("unknown visualization mode");
}

/// Builds a scene with the real texture centered in the frame and one
/// asset per requested mode.
inline Scene build_scene(std::string id, Image texture, int frame_w, int frame_h, ColorRGB background,
                         const std::vector<VisMode>& modes, const SceneOptions& opt = {})
{
    if (texture.width() > frame_w || texture.height() > frame_h)
        throw InvalidArgument("object does not fit inside the frame");
    Scene s;
    s.id = id;
    s.name = std::move(id);
    s.frame_width = frame_w;
    s.frame_height = frame_h;
    s.background = background;
    s.object_rect = centered_rect(frame_w, frame_h, texture.width(), texture.height());
    for (VisMode m : modes)
        s.assets.emplace(m, make_asset(texture, m, opt));
    s.real_texture = std::move(texture);
    return s;
}

/// Virtual replica layer: the mode's asset warped by `pose`, alpha scaled.
inline Image render_virtual(const Scene& scene, VisMode mode, const Pose2D& pose, double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InvalidArgument("replica alpha must lie in [0,1]");
    const auto it = scene.assets.find(mode);
    if (it == scene.assets.end())
        throw MissingAsset("scene '" + scene.id + "' has no asset for mode " + std::string(to_string(mode)));
    Image layer = warp(it->second, pose, scene.frame_width, scene.frame_height, scene.placement());
    for (Rgba& p : layer.pixels())
        p.a *= alpha;
    return layer;
}

/// Background with the static real texture at its home placement.
inline Image compose_real(const Scene& scene)
{
    const ColorRGB& bg = scene.background;
    Image frame(scene.frame_width, scene.frame_height, Rgba{bg.r, bg.g, bg.b, 1.0});
    const Image real = warp(scene.real_texture, Pose2D::identity(), scene.frame_width,
                            scene.frame_height, scene.placement());
    return blend(frame, real, BlendMode::OverVST);
}

/// Full composite: background, real object, then the replica blended on top.
inline Image compose(const Scene& scene, VisMode mode, const Pose2D& pose, BlendMode blend_mode,
                     double alpha)
{
    return blend(compose_real(scene), render_virtual(scene, mode, pose, alpha), blend_mode);
}

/// 8 x 8 black/white checker, `cell` pixels per square; top-left square black.
inline Image checker_texture(int cells = 8, int cell = 8)
{
    Image img(cells * cell, cells * cell);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const double v = ((x / cell + y / cell) % 2 == 0) ? 0.0 : 1.0;
            img.at(x, y) = {v, v, v, 1.0};
        }
    return img;
}

/// Black and white triangles of several sizes: square cells of a quadtree
/// layout, each split along a diagonal into a black and a white half.
inline Image triangles_texture(int size = 64)
{
    struct Cell {
        int x, y, s;
    };
    const int h = size / 2, q = size / 4, e = size / 8;
    std::vector<Cell> cells{{0, 0, h}, {h, h, h}};
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
            cells.push_back({h + i * q, j * q, q});
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            cells.push_back({i * e, h + j * e, e});

    Image img(size, size, Rgba{1, 1, 1, 1});
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const Cell& c = cells[k];
        const bool anti = (k % 2) == 1;
        for (int y = 0; y < c.s; ++y)
            for (int x = 0; x < c.s; ++x) {
                const bool lower = anti ? (x + y >= c.s) : (y > x);
                const double v = lower ? 0.0 : 1.0;
                img.at(c.x + x, c.y + y) = {v, v, v, 1.0};
            }
    }
    return img;
}

inline constexpr ColorRGB kFixtureBackground{0.5, 0.5, 0.5};

/// Bundled fixture: 64 x 64 checker in a 128 x 128 frame, all modes.
inline Scene checker_scene()
{
    Scene s = build_scene("checker", checker_texture(), 128, 128, kFixtureBackground,
                          {kAllModes.begin(), kAllModes.end()});
    s.name = "Checker 8x8";
    return s;
}

/// Bundled fixture: triangle texture, cube face of 9.1 cm edge.
inline Scene triangles_scene()
{
    Scene s = build_scene("triangles", triangles_texture(), 128, 128, kFixtureBackground,
                          {kAllModes.begin(), kAllModes.end()});
    s.name = "Black/white triangles";
    s.metadata["physical_edge_cm"] = "9.1";
    return s;
}

} // namespace ctex

#endif // CTEX_COMPOSITOR_HPP
