// ctex: command-line front end for the complementary-texture engine.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ctex/compositor.hpp"
#include "ctex/geometry.hpp"
#include "ctex/http_server.hpp"
#include "ctex/plot.hpp"
#include "ctex/png_io.hpp"
#include "ctex/saliency.hpp"
#include "ctex/scene_io.hpp"
#include "ctex/service.hpp"
#include "ctex/sweep.hpp"
#include "ctex/texture_lab.hpp"

#include <CLI11.hpp>

namespace fs = std::filesystem;
using namespace ctex;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

ColorRGB color_arg(const std::string& flag, const std::string& v)
{
    return parse_color(flag, v);
}

VisMode mode_arg(const std::string& v)
{
    const auto m = parse_vis_mode(v);
    if (!m)
        throw InvalidArgument("unknown mode: " + v);
    return *m;
}

BlendMode blend_arg(const std::string& v)
{
    const auto b = parse_blend_mode(v);
    if (!b)
        throw InvalidArgument("unknown blend mode: " + v);
    return *b;
}

std::vector<double> number_list(const std::string& v)
{
    std::vector<double> out;
    for (const auto& item : detail::split(v, ','))
        out.push_back(detail::parse_number("list", item));
    return out;
}

struct ComplementArgs {
    std::string in, out;
    std::string target = "1,1,1";
    bool vst = false;
    double tol = kDefaultVstTolerance;
    std::string patch, mask;
};

int run_complement(const ComplementArgs& a)
{
    const Image tex = load_png(a.in);
    if (!a.patch.empty() || !a.mask.empty()) {
        if (a.patch.empty() || a.mask.empty())
            throw InvalidArgument("--patch and --mask go together");
        save_png(patch_complement(tex, mask_from_image(load_png(a.mask)), load_png(a.patch)), a.out);
    } else if (a.vst) {
        const ColorRGB pred = predominant_color(tex);
        std::fprintf(stderr, "predominant color: %.6g,%.6g,%.6g\n", pred.r, pred.g, pred.b);
        save_png(vst_complement(tex, pred, a.tol), a.out);
    } else {
        save_png(invert_complement(tex, color_arg("--target", a.target)), a.out);
    }
    return 0;
}

struct GeometryArgs {
    std::string polygon, out;
    std::string size;
    std::string primitives = "edges,diagonals,bisectors,incircle,circumcircle,delaunay";
    int grid = 0;
    double stroke = 1.0;
    std::string color = "1,1,1";
};

int run_geometry(const GeometryArgs& a)
{
    const Polygon2D poly = load_polygon(a.polygon);
    ComplementConfig cfg;
    cfg.edges = cfg.diagonals = cfg.bisectors = cfg.incircle = cfg.circumcircle = cfg.delaunay = false;
    for (const auto& p : detail::split(a.primitives, ',')) {
        if (p == "edges") cfg.edges = true;
        else if (p == "diagonals") cfg.diagonals = true;
        else if (p == "bisectors") cfg.bisectors = true;
        else if (p == "incircle") cfg.incircle = true;
        else if (p == "circumcircle") cfg.circumcircle = true;
        else if (p == "delaunay") cfg.delaunay = true;
        else throw InvalidArgument("unknown primitive: " + p);
    }
    cfg.delaunay_grid = a.grid;
    cfg.stroke_width = a.stroke;
    cfg.stroke_color = color_arg("--color", a.color);

    int w = 0, h = 0;
    if (!a.size.empty()) {
        std::tie(w, h) = parse_size("--size", a.size);
    } else {
        const Vec2 hi = poly.bounds().second;
        w = static_cast<int>(std::ceil(std::max(hi.x, 0.0) + a.stroke)) + 1;
        h = static_cast<int>(std::ceil(std::max(hi.y, 0.0) + a.stroke)) + 1;
    }
    const PrimitiveSet prims = geometric_complement(poly, cfg);
    save_png(rasterize(prims, w, h), a.out);

    for (const Segment& s : prims.segments)
        std::printf("segment %s %s %s %s\n", format_g(s.a.x, 17).c_str(), format_g(s.a.y, 17).c_str(),
                    format_g(s.b.x, 17).c_str(), format_g(s.b.y, 17).c_str());
    for (const Circle& c : prims.circles)
        std::printf("circle %s %s %s\n", format_g(c.center.x, 17).c_str(), format_g(c.center.y, 17).c_str(),
                    format_g(c.radius, 17).c_str());
    return 0;
}

struct RenderArgs {
    std::string scene = "checker", out;
    std::string mode = "complementary_photometric";
    std::string blend = "additive";
    std::optional<double> alpha;
    double tx = 0, ty = 0, theta = 0, scale = 1;
    bool degrees = false;
};

int run_render(const RenderArgs& a)
{
    const Scene scene = resolve_scene(a.scene);
    const BlendMode blend = blend_arg(a.blend);
    const double theta = a.degrees ? a.theta * std::numbers::pi / 180.0 : a.theta;
    const Pose2D pose(a.tx, a.ty, theta, a.scale);
    save_png(compose(scene, mode_arg(a.mode), pose, blend, a.alpha.value_or(default_alpha(blend))), a.out);
    return 0;
}

struct SaliencyArgs {
    std::string in, heatmap;
    int work_dim = SaliencyParams{}.work_max_dim;
    double sigma = SaliencyParams{}.sigma;
};

int run_saliency(const SaliencyArgs& a)
{
    const Image img = load_png(a.in);
    const SaliencyMap map = saliency_map(img, {a.work_dim, a.sigma});
    if (!a.heatmap.empty())
        save_png(saliency_heatmap(map), a.heatmap);
    const SaliencyMetrics m = metrics(map);
    double lo = map.values.front(), hi = lo, sum = 0.0;
    for (double v : map.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    const double mean = sum / static_cast<double>(map.values.size());
    const bool uniform = mean > 0.0 ? (hi - lo) / mean <= 1e-6 : hi == lo;
    const json out = {{"width", map.width}, {"height", map.height}, {"integral", m.integral}, {"max", m.max},
                      {"min", lo},          {"mean", mean},         {"uniform", uniform}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct SweepArgs {
    std::string scene = "checker";
    std::string axis = "translation_x";
    std::string offsets = "0,2,4,6,8";
    bool degrees = false;
    std::string modes;
    std::string blend = "additive";
    std::optional<double> alpha;
    std::string csv, plot;
    unsigned threads = 0;
    int work_dim = SaliencyParams{}.work_max_dim;
    double sigma = SaliencyParams{}.sigma;
};

int run_sweep_cmd(const SweepArgs& a)
{
    const Scene scene = resolve_scene(a.scene);
    SweepSpec spec;
    const auto axis = parse_sweep_axis(a.axis);
    if (!axis)
        throw InvalidArgument("unknown axis: " + a.axis);
    spec.axis = *axis;
    spec.offsets = number_list(a.offsets);
    if (a.degrees) {
        if (spec.axis != SweepAxis::Rotation)
            throw InvalidArgument("--degrees applies to the rotation axis only");
        for (double& o : spec.offsets)
            o = o * std::numbers::pi / 180.0;
    }
    if (a.modes.empty()) {
        spec.modes = scene.modes();
    } else {
        for (const auto& m : detail::split(a.modes, ','))
            spec.modes.push_back(mode_arg(m));
    }
    spec.blend = blend_arg(a.blend);
    spec.alpha = a.alpha.value_or(default_alpha(spec.blend));
    spec.saliency = {a.work_dim, a.sigma};

    const SweepResult result = run_sweep(scene, spec, a.threads);
    if (a.csv.empty())
        std::cout << to_csv(result);
    else
        export_csv(result, a.csv);
    if (!a.plot.empty())
        plot_curves(result, a.plot);
    return 0;
}

struct ServeArgs {
    std::optional<int> port;
    std::string host = "127.0.0.1";
    std::string scenes_dir, log, static_dir;
};

int run_serve(const ServeArgs& a)
{
    ServiceOptions opt;
    if (!a.log.empty())
        opt.trial_log = a.log;
    std::optional<fs::path> dir;
    if (!a.scenes_dir.empty())
        dir = a.scenes_dir;
    AlignService service(load_scenes(dir), opt);
    httplib::Server server;
    std::optional<fs::path> static_dir;
    if (!a.static_dir.empty())
        static_dir = a.static_dir;
    register_routes(server, service, static_dir);
    const int port = a.port.value_or(resolve_port(kDefaultPort));
    if (!server.bind_to_port(a.host, port)) {
        std::fprintf(stderr, "ctex serve: cannot bind %s:%d\n", a.host.c_str(), port);
        return kExitInput;
    }
    std::fprintf(stderr, "listening on http://%s:%d\n", a.host.c_str(), port);
    server.listen_after_bind();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"complementary-texture engine"};
    app.require_subcommand(1);

    ComplementArgs ca;
    auto* complement = app.add_subcommand("complement", "write the complement of a texture");
    complement->add_option("input", ca.in, "texture PNG")->required();
    complement->add_option("output", ca.out, "complement PNG")->required();
    complement->add_option("--target", ca.target, "inversion target r,g,b");
    complement->add_flag("--vst", ca.vst, "predominant-color masking for video see-through");
    complement->add_option("--tol", ca.tol, "RGB distance tolerance for --vst");
    complement->add_option("--patch", ca.patch, "patch PNG for a region complement");
    complement->add_option("--mask", ca.mask, "region mask PNG for --patch");

    GeometryArgs ga;
    auto* geometry = app.add_subcommand("geometry", "rasterize the geometric complement of a polygon");
    geometry->add_option("polygon", ga.polygon, "polygon file, one 'x y' vertex per line")->required();
    geometry->add_option("output", ga.out, "raster PNG")->required();
    geometry->add_option("--size", ga.size, "raster size WxH");
    geometry->add_option("--primitives", ga.primitives, "comma list of primitives");
    geometry->add_option("--grid", ga.grid, "interior grid for the Delaunay point set");
    geometry->add_option("--stroke", ga.stroke, "stroke width in pixels");
    geometry->add_option("--color", ga.color, "stroke color r,g,b");

    RenderArgs ra;
    auto* render = app.add_subcommand("render", "composite a scene at a pose");
    render->add_option("output", ra.out, "composite PNG")->required();
    render->add_option("--scene", ra.scene, "checker, triangles, or a .scene manifest");
    render->add_option("--mode", ra.mode, "visualization mode");
    render->add_option("--blend", ra.blend, "additive or over");
    render->add_option("--alpha", ra.alpha, "virtual layer opacity");
    render->add_option("--tx", ra.tx, "translation x, px");
    render->add_option("--ty", ra.ty, "translation y, px");
    render->add_option("--theta", ra.theta, "rotation, radians (degrees with --degrees)");
    render->add_option("--scale", ra.scale, "scale factor");
    render->add_flag("--degrees", ra.degrees, "read --theta in degrees");

    SaliencyArgs sa;
    auto* saliency = app.add_subcommand("saliency", "saliency heatmap and metrics of an image");
    saliency->add_option("input", sa.in, "image PNG")->required();
    saliency->add_option("heatmap", sa.heatmap, "heatmap PNG");
    saliency->add_option("--work-dim", sa.work_dim, "longest side of the working resolution");
    saliency->add_option("--sigma", sa.sigma, "blur sigma in working pixels");

    SweepArgs wa;
    auto* sweep = app.add_subcommand("sweep", "salience metrics over a pose-error sweep");
    sweep->add_option("--scene", wa.scene, "checker, triangles, or a .scene manifest");
    sweep->add_option("--axis", wa.axis, "translation_x, translation_y, rotation or scale");
    sweep->add_option("--offsets", wa.offsets, "comma list, must include the identity offset");
    sweep->add_flag("--degrees", wa.degrees, "rotation offsets in degrees");
    sweep->add_option("--modes", wa.modes, "comma list of modes (default: all of the scene)");
    sweep->add_option("--blend", wa.blend, "additive or over");
    sweep->add_option("--alpha", wa.alpha, "virtual layer opacity");
    sweep->add_option("--csv", wa.csv, "CSV output (default: standard output)");
    sweep->add_option("--plot", wa.plot, "plot PNG output");
    sweep->add_option("--threads", wa.threads, "worker threads (0: hardware)");
    sweep->add_option("--work-dim", wa.work_dim, "saliency working resolution");
    sweep->add_option("--sigma", wa.sigma, "saliency blur sigma");

    ServeArgs va;
    auto* serve = app.add_subcommand("serve", "run the alignment HTTP service");
    serve->add_option("--port", va.port, "listen port (default: $CTEX_PORT or 8765)");
    serve->add_option("--host", va.host, "listen address");
    serve->add_option("--scenes-dir", va.scenes_dir, "directory of .scene manifests");
    serve->add_option("--log", va.log, "JSON-lines trial log, appended");
    serve->add_option("--static", va.static_dir, "directory served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ctex: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*complement) return run_complement(ca);
        if (*geometry) return run_geometry(ga);
        if (*render) return run_render(ra);
        if (*saliency) return run_saliency(sa);
        if (*sweep) return run_sweep_cmd(wa);
        if (*serve) return run_serve(va);
    } catch (const Error& e) {
        std::cerr << "ctex: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "ctex: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
