#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "ctex/plot.hpp"
#include "ctex/png_io.hpp"
#include "ctex/sweep.hpp"

using namespace ctex;

namespace {

const Scene& checker()
{
    static const Scene s = checker_scene();
    return s;
}

// Texture mirror-symmetric about its vertical center line.
Scene mirror_scene()
{
    Image tex(64, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            const int d = static_cast<int>(std::abs(x - 31.5));
            const double v = ((d / 6 + y / 8) % 2) ? 1.0 : 0.0;
            tex.at(x, y) = {v, 0.5 * v + 0.25, 1 - v, 1};
        }
    return build_scene("mirror", tex, 128, 128, kFixtureBackground,
                       {VisMode::ComplementaryPhotometric, VisMode::Silhouette});
}

SweepSpec tx_spec(std::vector<double> offsets, std::vector<VisMode> modes)
{
    SweepSpec s;
    s.axis = SweepAxis::TranslationX;
    s.offsets = std::move(offsets);
    s.modes = std::move(modes);
    return s;
}

} // namespace

TEST(Sweep, SingleCell)
{
    const SweepResult r = run_sweep(checker(), tx_spec({0}, {VisMode::Silhouette}));
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].offset, 0.0);
    EXPECT_EQ(r.rows[0].mode, VisMode::Silhouette);
}

TEST(Sweep, RowsAreCompleteAndModeMajor)
{
    const std::vector<VisMode> modes{VisMode::Fresnel, VisMode::ComplementaryPhotometric};
    const SweepResult r = run_sweep(checker(), tx_spec({-2, 0, 3}, modes));
    ASSERT_EQ(r.rows.size(), 6u);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_EQ(r.rows[i].mode, modes[i / 3]);
        EXPECT_EQ(r.rows[i].offset, (std::vector<double>{-2, 0, 3})[i % 3]);
        EXPECT_EQ(r.rows[i].axis, SweepAxis::TranslationX);
    }
}

TEST(Sweep, RowsMatchDirectFrameMetrics)
{
    SweepSpec spec = tx_spec({0, 1.5}, {VisMode::Wireframe});
    spec.axis = SweepAxis::Rotation;
    spec.offsets = {0, 0.05};
    const SweepResult r = run_sweep(checker(), spec);
    const SaliencyMetrics m = frame_metrics(checker(), VisMode::Wireframe, Pose2D(0, 0, 0.05, 1),
                                            BlendMode::AdditiveOST, 1.0);
    EXPECT_EQ(r.rows[1].integral, m.integral);
    EXPECT_EQ(r.rows[1].max, m.max);
}

TEST(Sweep, Validation)
{
    EXPECT_THROW(run_sweep(checker(), tx_spec({}, {VisMode::Silhouette})), InvalidArgument);
    EXPECT_THROW(run_sweep(checker(), tx_spec({0}, {})), InvalidArgument);
    EXPECT_THROW(run_sweep(checker(), tx_spec({0, 2, 2}, {VisMode::Silhouette})), InvalidArgument);
    EXPECT_THROW(run_sweep(checker(), tx_spec({1, 2}, {VisMode::Silhouette})), InvalidArgument);
    SweepSpec scale = tx_spec({0.5, 1.0}, {VisMode::Silhouette});
    scale.axis = SweepAxis::Scale;
    EXPECT_NO_THROW(validate(scale));
    scale.offsets = {0.5, 0.9};
    EXPECT_THROW(validate(scale), InvalidArgument);
    SweepSpec bad_alpha = tx_spec({0}, {VisMode::Silhouette});
    bad_alpha.alpha = 1.5;
    EXPECT_THROW(validate(bad_alpha), InvalidArgument);

    const Scene only = build_scene("only", checker_texture(), 128, 128, kFixtureBackground, {VisMode::Silhouette});
    EXPECT_THROW(run_sweep(only, tx_spec({0}, {VisMode::Fresnel})), MissingAsset);
}

TEST(Sweep, CheckerComplementMinimizedWhenAligned)
{
    const SweepResult r = run_sweep(checker(), tx_spec({0, 2, 4, 6, 8}, {VisMode::ComplementaryPhotometric}));
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        EXPECT_LT(r.rows[0].integral, r.rows[i].integral);
}

TEST(Sweep, MirrorSymmetricFixtureGivesSymmetricCurve)
{
    const Scene s = mirror_scene();
    const SweepResult r = run_sweep(
        s, tx_spec({-8, -6, -4, -2, 0, 2, 4, 6, 8}, {VisMode::ComplementaryPhotometric, VisMode::Silhouette}));
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t i = 0; i < 4; ++i) {
            const SweepRow& a = r.rows[m * 9 + i];
            const SweepRow& b = r.rows[m * 9 + 8 - i];
            ASSERT_EQ(a.offset, -b.offset);
            EXPECT_NEAR(a.integral, b.integral, 1e-6 * std::abs(b.integral));
            EXPECT_NEAR(a.max, b.max, 1e-6 * std::abs(b.max));
        }
}

TEST(Sweep, ParallelEqualsSerial)
{
    SweepSpec spec = tx_spec({-3, 0, 2.5}, {kAllModes.begin(), kAllModes.end()});
    spec.blend = BlendMode::OverVST;
    spec.alpha = 0.6;
    const SweepResult serial = run_sweep(checker(), spec, 1);
    const SweepResult parallel = run_sweep(checker(), spec, 4);
    ASSERT_EQ(serial.rows.size(), parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        EXPECT_EQ(serial.rows[i].integral, parallel.rows[i].integral);
        EXPECT_EQ(serial.rows[i].max, parallel.rows[i].max);
    }
    EXPECT_EQ(to_csv(serial), to_csv(parallel));
}

TEST(Sweep, ParamsHashTracksSpec)
{
    const SweepSpec a = tx_spec({0, 2}, {VisMode::Silhouette});
    SweepSpec b = a;
    b.alpha = 0.5;
    EXPECT_EQ(sweep_params_hash("checker", a), sweep_params_hash("checker", a));
    EXPECT_NE(sweep_params_hash("checker", a), sweep_params_hash("checker", b));
    EXPECT_NE(sweep_params_hash("checker", a), sweep_params_hash("triangles", a));
    EXPECT_EQ(sweep_params_hash("checker", a).size(), 16u);
}

TEST(Csv, EmptyResultIsHeaderOnly)
{
    EXPECT_EQ(to_csv(SweepResult{}), std::string(kCsvHeader) + "\n");
    EXPECT_TRUE(parse_csv(to_csv(SweepResult{})).rows.empty());
}

TEST(Csv, OneRowRoundTrip)
{
    SweepResult r;
    r.rows.push_back({VisMode::Fresnel, SweepAxis::Scale, 1.25, 0.123456789012, 3.5e-4});
    const std::string text = to_csv(r);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    const SweepResult back = parse_csv(text);
    ASSERT_EQ(back.rows.size(), 1u);
    EXPECT_EQ(back.rows[0].mode, VisMode::Fresnel);
    EXPECT_EQ(back.rows[0].axis, SweepAxis::Scale);
    EXPECT_EQ(back.rows[0].offset, 1.25);
    EXPECT_NEAR(back.rows[0].integral, 0.123456789012, 1e-9);
}

TEST(Csv, FullSweepRoundTripToPrintedPrecision)
{
    const SweepResult r = run_sweep(checker(), tx_spec({0, 4, 8}, {kAllModes.begin(), kAllModes.end()}));
    const auto path = std::filesystem::temp_directory_path() / "ctex_sweep_roundtrip.csv";
    export_csv(r, path);
    const SweepResult back = import_csv(path);
    std::filesystem::remove(path);
    EXPECT_EQ(back.scene_id, "checker");
    EXPECT_EQ(back.params_hash, r.params_hash);
    EXPECT_EQ(back.manifest, r.manifest);
    ASSERT_EQ(back.rows.size(), r.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_EQ(back.rows[i].mode, r.rows[i].mode);
        EXPECT_EQ(format_g(back.rows[i].integral, 9), format_g(r.rows[i].integral, 9));
        EXPECT_EQ(format_g(back.rows[i].max, 9), format_g(r.rows[i].max, 9));
        EXPECT_NEAR(back.rows[i].integral, r.rows[i].integral, 1e-8 * r.rows[i].integral);
    }
    EXPECT_EQ(to_csv(back), to_csv(r));
}

TEST(Csv, MalformedInput)
{
    EXPECT_THROW(parse_csv("a,b,c\n"), DecodeError);
    EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\nsilhouette,translation_x,0,1\n"), DecodeError);
    EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\nnope,translation_x,0,1,2\n"), DecodeError);
    EXPECT_THROW(parse_csv(""), DecodeError);
    EXPECT_THROW(import_csv("/nonexistent/ctex.csv"), IoError);
}

TEST(Plot, OneModeTwoOffsets)
{
    SweepResult r;
    r.rows = {{VisMode::Silhouette, SweepAxis::TranslationX, 0, 1.0, 0.1},
              {VisMode::Silhouette, SweepAxis::TranslationX, 2, 2.0, 0.3}};
    const PlotModel m = build_plot(r);
    ASSERT_EQ(m.panels.size(), 2u);
    ASSERT_EQ(m.panels[0].series.size(), 1u);
    EXPECT_EQ(m.panels[0].series[0].points.size(), 2u);
    EXPECT_EQ(m.panels[1].series[0].points[1].y, 0.3);
    EXPECT_EQ(m.x_label, "translation_x");
}

TEST(Plot, FiveModesFiveLegendEntries)
{
    const SweepResult r = run_sweep(checker(), tx_spec({0, 8}, {kAllModes.begin(), kAllModes.end()}));
    const PlotModel m = build_plot(r);
    EXPECT_EQ(m.legend.size(), 5u);
    EXPECT_EQ(m.panels[0].series.size(), 5u);
}

TEST(Plot, IdenticalValuesGiveFlatLines)
{
    SweepResult r;
    for (double o : {0.0, 1.0, 2.0})
        r.rows.push_back({VisMode::Wireframe, SweepAxis::Rotation, o, 0.5, 0.5});
    const PlotModel m = build_plot(r);
    for (const PlotPanel& p : m.panels) {
        EXPECT_LT(p.y_min, 0.5);
        EXPECT_GT(p.y_max, 0.5);
        for (const Vec2& pt : p.series[0].points)
            EXPECT_EQ(pt.y, 0.5);
    }
    EXPECT_NO_THROW(render_plot(m));
}

TEST(Plot, EmptyRejectedAndRenderDeterministic)
{
    EXPECT_THROW(build_plot(SweepResult{}), InvalidArgument);
    const SweepResult r = run_sweep(checker(), tx_spec({0, 2, 4}, {VisMode::Silhouette, VisMode::Fresnel}));
    EXPECT_EQ(encode_png(render_plot(build_plot(r))), encode_png(render_plot(build_plot(r))));
}
