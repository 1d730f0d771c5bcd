#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "ctex/compositor.hpp"
#include "ctex/fft.hpp"
#include "ctex/saliency.hpp"
#include "oracles.hpp"

using namespace ctex;

namespace {

double rms_diff(const QuatImage& a, const QuatImage& b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (a.values()[i] - b.values()[i]).norm2();
    return std::sqrt(s / static_cast<double>(a.size()));
}

double max_diff(const QuatImage& a, const QuatImage& b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, (a.values()[i] - b.values()[i]).norm());
    return m;
}

std::pair<int, int> argmax(const SaliencyMap& m)
{
    const auto it = std::max_element(m.values.begin(), m.values.end());
    const int i = static_cast<int>(it - m.values.begin());
    return {i % m.width, i / m.width};
}

Image impulse(int w, int h, int x, int y)
{
    Image img(w, h, Rgba{0, 0, 0, 1});
    img.at(x, y) = {1, 1, 1, 1};
    return img;
}

} // namespace

TEST(QuaternionImage, Examples)
{
    EXPECT_EQ(to_quaternion_image(Image(1, 1, Rgba{1, 0, 0, 1})).at(0, 0), (Quat{0, 1, 0, 0}));
    const Quat q = to_quaternion_image(Image(1, 1, Rgba{0.2, 0.4, 0.6, 0.5})).at(0, 0);
    EXPECT_NEAR(q.x, 0.1, 1e-15);
    EXPECT_NEAR(q.y, 0.2, 1e-15);
    EXPECT_NEAR(q.z, 0.3, 1e-15);
    EXPECT_EQ(q.w, 0.0);
    const QuatImage black = to_quaternion_image(Image(3, 2, Rgba{0, 0, 0, 1}));
    for (const Quat& v : black.values())
        EXPECT_EQ(v, Quat{});
}

TEST(Quaternion, HamiltonProduct)
{
    const Quat i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    EXPECT_EQ(i * j, k);
    EXPECT_EQ(j * k, i);
    EXPECT_EQ(k * i, j);
    EXPECT_EQ(i * i, (Quat{-1, 0, 0, 0}));
    EXPECT_EQ(j * i, (-1.0) * k);
}

TEST(EigenAxis, RedOnlyVariation)
{
    Image img(4, 4, Rgba{0, 0.3, 0.3, 1});
    for (int x = 0; x < 4; ++x)
        img.at(x, 1).r = 0.25 * x;
    const Quat a = eigen_axis(to_quaternion_image(img));
    EXPECT_NEAR(a.x, 1.0, 1e-12);
    EXPECT_NEAR(a.y, 0.0, 1e-12);
    EXPECT_NEAR(a.z, 0.0, 1e-12);
}

TEST(EigenAxis, FlatImageFallsBackToGray)
{
    const double g = 1 / std::sqrt(3.0);
    EXPECT_EQ(eigen_axis(to_quaternion_image(Image(5, 5, Rgba{0.2, 0.7, 0.1, 1}))), (Quat{0, g, g, g}));
}

TEST(EigenAxis, MatchesPowerIterationOracle)
{
    std::mt19937_64 rng(19);
    for (int k = 0; k < 10; ++k) {
        const QuatImage q = to_quaternion_image(oracle::random_texture(12, 9, rng));
        double mean[3] = {0, 0, 0};
        for (const Quat& v : q.values()) {
            mean[0] += v.x;
            mean[1] += v.y;
            mean[2] += v.z;
        }
        for (double& m : mean)
            m /= static_cast<double>(q.size());
        double cov[3][3] = {};
        for (const Quat& v : q.values()) {
            const double d[3] = {v.x - mean[0], v.y - mean[1], v.z - mean[2]};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    cov[i][j] += d[i] * d[j] / static_cast<double>(q.size());
        }
        auto ref = oracle::power_iteration(cov);
        if (ref[0] + ref[1] + ref[2] < 0)
            for (double& c : ref)
                c = -c;
        const Quat a = eigen_axis(q);
        EXPECT_NEAR(a.x, ref[0], 1e-9);
        EXPECT_NEAR(a.y, ref[1], 1e-9);
        EXPECT_NEAR(a.z, ref[2], 1e-9);
    }
}

TEST(Fft, MatchesDirectDft)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> d(-1, 1);
    for (std::size_t n : {1u, 2u, 7u, 8u, 12u, 16u}) {
        std::vector<fft::Complex> x(n);
        for (auto& v : x)
            v = {d(rng), d(rng)};
        auto y = x;
        fft::transform(y, -1);
        for (std::size_t k = 0; k < n; ++k) {
            fft::Complex ref{};
            for (std::size_t t = 0; t < n; ++t)
                ref += x[t] * std::polar(1.0, -2 * std::numbers::pi * double(k * t) / double(n));
            EXPECT_LT(std::abs(y[k] - ref), 1e-12);
        }
    }
}

TEST(Qdft, ConstantImageIsDcOnly)
{
    QuatImage q(6, 4);
    for (Quat& v : q.values())
        v = {0, 0.2, 0.5, 0.7};
    const Quat mu{0, 1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)};
    const QuatImage f = qdft(q, mu);
    const Quat dc = f.at(0, 0);
    EXPECT_NEAR(dc.x, 24 * 0.2, 1e-12);
    EXPECT_NEAR(dc.y, 24 * 0.5, 1e-12);
    EXPECT_NEAR(dc.z, 24 * 0.7, 1e-12);
    for (std::size_t i = 1; i < f.size(); ++i)
        EXPECT_LT(f.values()[i].norm(), 1e-12);
}

TEST(Qdft, ImpulseHasFlatSpectrum)
{
    QuatImage q(8, 8);
    q.at(0, 0) = {0, 0.3, -0.4, 1.2};
    std::mt19937_64 rng(1);
    const QuatImage f = qdft(q, oracle::random_axis(rng));
    for (const Quat& v : f.values())
        EXPECT_NEAR(v.norm(), q.at(0, 0).norm(), 1e-12);
}

TEST(Qdft, MatchesDirectSummationOracle)
{
    std::mt19937_64 rng(10);
    for (auto [w, h] : {std::pair{8, 8}, std::pair{5, 3}, std::pair{16, 12}, std::pair{1, 7}}) {
        const QuatImage q = oracle::random_quat_image(w, h, rng);
        const Quat mu = oracle::random_axis(rng);
        EXPECT_LT(max_diff(qdft(q, mu), oracle::direct_qdft(q, mu)), 1e-9) << w << "x" << h;
    }
}

TEST(Qdft, RoundTripAndParseval)
{
    std::mt19937_64 rng(12);
    const QuatImage q = oracle::random_quat_image(8, 8, rng);
    const Quat mu = oracle::random_axis(rng);
    const QuatImage f = qdft(q, mu);
    EXPECT_LT(rms_diff(iqdft(f, mu), q), 1e-12);
    double e_space = 0, e_freq = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        e_space += q.values()[i].norm2();
        e_freq += f.values()[i].norm2();
    }
    EXPECT_NEAR(e_freq / 64.0, e_space, 1e-12 * e_space);
}

TEST(Qdft, Linear)
{
    std::mt19937_64 rng(13);
    const QuatImage a = oracle::random_quat_image(6, 5, rng);
    const QuatImage b = oracle::random_quat_image(6, 5, rng);
    const Quat mu = oracle::random_axis(rng);
    QuatImage sum(6, 5);
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum.values()[i] = a.values()[i] + 2.5 * b.values()[i];
    const QuatImage fa = qdft(a, mu), fb = qdft(b, mu), fs = qdft(sum, mu);
    for (std::size_t i = 0; i < sum.size(); ++i)
        EXPECT_LT((fs.values()[i] - (fa.values()[i] + 2.5 * fb.values()[i])).norm(), 1e-12);
}

TEST(Qdft, RejectsBadAxis)
{
    QuatImage q(2, 2);
    EXPECT_THROW(qdft(q, Quat{0, 1, 1, 0}), InvalidArgument);
    EXPECT_THROW(qdft(q, Quat{1, 0, 0, 0}), InvalidArgument);
}

TEST(PhaseOnly, Examples)
{
    QuatImage s(3, 1);
    s.at(0, 0) = {3, 0, 4, 0};
    s.at(1, 0) = {};
    s.at(2, 0) = {0.5, 0.5, 0.5, 0.5};
    const QuatImage p = phase_only(s);
    EXPECT_NEAR(p.at(0, 0).w, 0.6, 1e-15);
    EXPECT_NEAR(p.at(0, 0).y, 0.8, 1e-15);
    EXPECT_EQ(p.at(1, 0), Quat{});
    EXPECT_LT((p.at(2, 0) - s.at(2, 0)).norm(), 1e-12);
}

TEST(Metrics, Examples)
{
    SaliencyMap zero{3, 3, std::vector<double>(9, 0.0)};
    EXPECT_EQ(metrics(zero).integral, 0.0);
    EXPECT_EQ(metrics(zero).max, 0.0);
    SaliencyMap one = zero;
    one.values[4] = 0.75;
    EXPECT_EQ(metrics(one).integral, 0.75);
    EXPECT_EQ(metrics(one).max, 0.75);
    SaliencyMap uni{4, 2, std::vector<double>(8, 0.5)};
    EXPECT_EQ(metrics(uni).integral, 4.0);
    EXPECT_EQ(metrics(uni).max, 0.5);
}

TEST(GaussianBlur, PreservesMassWithReflectiveBorders)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(0, 1);
    std::vector<double> f(23 * 17);
    for (double& v : f)
        v = d(rng);
    const auto g = gaussian_blur(f, 23, 17, 3.0);
    EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), std::accumulate(f.begin(), f.end(), 0.0), 1e-9);
    const std::vector<double> flat(100, 2.0);
    for (double v : gaussian_blur(flat, 10, 10, 3.0))
        EXPECT_NEAR(v, 2.0, 1e-12);
}

TEST(Resize, IdentityAndConstant)
{
    std::mt19937_64 rng(3);
    const Image t = oracle::random_texture(7, 5, rng);
    EXPECT_EQ(resize_bilinear(t, 7, 5), t);
    const Image small = resize_bilinear(Image(10, 10, Rgba{0.25, 0.5, 0.75, 1}), 4, 6);
    for (const auto& p : small.pixels()) {
        EXPECT_NEAR(p.r, 0.25, 1e-15);
        EXPECT_NEAR(p.b, 0.75, 1e-15);
    }
    EXPECT_EQ(working_size(256, 128, 128), (std::pair{128, 64}));
}

TEST(SaliencyMap, ConstantImageIsUniform)
{
    const SaliencyMap m = saliency_map(Image(40, 30, Rgba{0.3, 0.6, 0.2, 1}));
    const auto [lo, hi] = std::minmax_element(m.values.begin(), m.values.end());
    const double mean = metrics(m).integral / static_cast<double>(m.values.size());
    EXPECT_GT(mean, 0.0);
    EXPECT_LE((*hi - *lo) / mean, 1e-6);
}

TEST(SaliencyMap, ImpulseArgmaxAtImpulse)
{
    const SaliencyMap m = saliency_map(impulse(32, 32, 11, 20), {32, 3.0});
    EXPECT_EQ(argmax(m), (std::pair{11, 20}));
}

TEST(SaliencyMap, BorderImpulsePeakStaysWithinOnePixel)
{
    for (auto [x, y] : {std::pair{0, 0}, std::pair{31, 31}, std::pair{3, 27}, std::pair{30, 1}}) {
        const auto [ax, ay] = argmax(saliency_map(impulse(32, 32, x, y), {32, 3.0}));
        EXPECT_LE(std::abs(ax - x), 1) << x << "," << y;
        EXPECT_LE(std::abs(ay - y), 1) << x << "," << y;
    }
}

TEST(SaliencyMap, UpscaledImpulseLandsOnItsFootprint)
{
    // 32 -> 128: input pixel 11 covers working pixels 44..47, center 45.5.
    const SaliencyMap m = saliency_map(impulse(32, 32, 11, 20));
    ASSERT_EQ(m.width, 128);
    const auto [x, y] = argmax(m);
    EXPECT_TRUE(x == 45 || x == 46) << x;
    EXPECT_TRUE(y == 81 || y == 82) << y;
}

TEST(SaliencyMap, ImpulseTranslationCovariance)
{
    const SaliencyParams native{48, 3.0};
    const auto base = argmax(saliency_map(impulse(48, 40, 14, 12), native));
    for (auto [dx, dy] : {std::pair{5, 0}, std::pair{0, 7}, std::pair{9, 11}}) {
        const auto moved = argmax(saliency_map(impulse(48, 40, 14 + dx, 12 + dy), native));
        EXPECT_EQ(moved, (std::pair{base.first + dx, base.second + dy}));
    }
}

TEST(SaliencyMap, ChannelPermutationInvariant)
{
    std::mt19937_64 rng(15);
    Image img = oracle::random_texture(32, 24, rng);
    for (int y = 8; y < 16; ++y)
        for (int x = 10; x < 20; ++x)
            img.at(x, y) = {0.9, 0.2, 0.1, 1};
    const SaliencyMap ref = saliency_map(img);
    const double peak = metrics(ref).max;
    const int perms[5][3] = {{1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    for (const auto& p : perms) {
        Image q = img;
        for (auto& px : q.pixels()) {
            const double c[3] = {px.r, px.g, px.b};
            px.r = c[p[0]];
            px.g = c[p[1]];
            px.b = c[p[2]];
        }
        const SaliencyMap m = saliency_map(q);
        for (std::size_t i = 0; i < m.values.size(); ++i)
            ASSERT_LE(std::abs(m.values[i] - ref.values[i]), 1e-6 * peak) << p[0] << p[1] << p[2];
    }
}

TEST(SaliencyMap, AlignedCheckerLessSalientThanShifted)
{
    const Scene s = checker_scene();
    const auto at = [&](double tx) {
        return metrics(saliency_map(compose(s, VisMode::ComplementaryPhotometric, Pose2D(tx, 0, 0, 1),
                                            BlendMode::AdditiveOST, 1.0)))
            .integral;
    };
    EXPECT_LT(at(0), at(8));
}

TEST(SaliencyMap, DeterministicAndNonNegative)
{
    std::mt19937_64 rng(16);
    const Image img = oracle::random_texture(50, 30, rng);
    const SaliencyMap a = saliency_map(img), b = saliency_map(img);
    EXPECT_EQ(a.values, b.values);
    for (double v : a.values)
        EXPECT_GE(v, 0.0);
}

TEST(SaliencyHeatmap, NormalizedToPeak)
{
    const SaliencyMap m = saliency_map(impulse(16, 16, 4, 4));
    const Image h = saliency_heatmap(m);
    double top = 0;
    for (const auto& p : h.pixels())
        top = std::max(top, p.r);
    EXPECT_EQ(top, 1.0);
    const Image z = saliency_heatmap(SaliencyMap{2, 2, {0, 0, 0, 0}});
    for (const auto& p : z.pixels())
        EXPECT_EQ(p.r, 0.0);
}
