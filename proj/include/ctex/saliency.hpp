#ifndef CTEX_SALIENCY_HPP
#define CTEX_SALIENCY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "ctex/error.hpp"
#include "ctex/fft.hpp"
#include "ctex/image.hpp"
#include "ctex/quaternion.hpp"

// Eigen-axis phase-only quaternion Fourier transform (PQFT) saliency.

namespace ctex {

/// Unit pure quaternion along the principal axis of the color covariance.
///
/// Sign is fixed so the component sum is non-negative; a zero sum defers to
/// the first nonzero component. A zero covariance (flat image) yields the
/// gray axis (i + j + k) / sqrt(3).
inline Quat eigen_axis(const QuatImage& q)
{
    const double n = static_cast<double>(q.size());
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const Quat& v : q.values())
        mean += Eigen::Vector3d(v.x, v.y, v.z);
    mean /= n;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Quat& v : q.values()) {
        const Eigen::Vector3d d = Eigen::Vector3d(v.x, v.y, v.z) - mean;
        cov += d * d.transpose();
    }
    cov /= n;

    const double gray = 1.0 / std::sqrt(3.0);
    if (cov.cwiseAbs().maxCoeff() <= 1e-20)
        return {0.0, gray, gray, gray};

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    Eigen::Vector3d axis = solver.eigenvectors().col(2).normalized();
    const double sum = axis.sum();
    bool flip = sum < 0.0;
    if (sum == 0.0)
        for (int i = 0; i < 3; ++i)
            if (axis[i] != 0.0) {
                flip = axis[i] < 0.0;
                break;
            }
    if (flip)
        axis = -axis;
    return {0.0, axis[0], axis[1], axis[2]};
}

namespace detail {

// Orthonormal frame (mu, nu, xi = mu nu) of pure quaternions around `mu`.
struct AxisFrame {
    Quat mu, nu, xi;
};

inline AxisFrame axis_frame(const Quat& mu)
{
    // Start from the coordinate axis least aligned with mu.
    const double mag[3] = {std::abs(mu.x), std::abs(mu.y), std::abs(mu.z)};
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (mag[i] < mag[k])
            k = i;
    Quat e{0, k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0};
    const double proj = e.x * mu.x + e.y * mu.y + e.z * mu.z;
    Quat nu{0.0, e.x - proj * mu.x, e.y - proj * mu.y, e.z - proj * mu.z};
    nu = (1.0 / nu.norm()) * nu;
    return {mu, nu, mu * nu};
}

inline void require_unit_pure(const Quat& axis)
{
    if (axis.w != 0.0 || std::abs(axis.norm() - 1.0) > 1e-9)
        throw InvalidArgument("transform axis must be a unit pure quaternion");
}

// Left-sided transform via the symplectic split q = (a + b mu) + (c + d mu) nu:
// exp(-mu t) acts on both halves as an ordinary complex exponential.
inline QuatImage quaternion_transform(const QuatImage& in, const Quat& axis, int sign)
{
    require_unit_pure(axis);
    const AxisFrame f = axis_frame(axis);
    const int w = in.width(), h = in.height();
    const std::size_t n = in.size();
    std::vector<fft::Complex> simplex(n), perplex(n);
    auto dot3 = [](const Quat& a, const Quat& b) { return a.x * b.x + a.y * b.y + a.z * b.z; };
    for (std::size_t i = 0; i < n; ++i) {
        const Quat& q = in.values()[i];
        simplex[i] = {q.w, dot3(q, f.mu)};
        perplex[i] = {dot3(q, f.nu), dot3(q, f.xi)};
    }
    fft::transform2d(simplex, w, h, sign);
    fft::transform2d(perplex, w, h, sign);

    const double scale = sign > 0 ? 1.0 / static_cast<double>(n) : 1.0;
    QuatImage out(w, h);
    for (std::size_t i = 0; i < n; ++i) {
        const fft::Complex a = simplex[i] * scale;
        const fft::Complex c = perplex[i] * scale;
        const Quat v = a.imag() * f.mu + c.real() * f.nu + c.imag() * f.xi;
        out.values()[i] = {a.real(), v.x, v.y, v.z};
    }
    return out;
}

} // namespace detail

/// F(u,v) = sum_{x,y} exp(-axis 2 pi (u x / W + v y / H)) q(x,y)
inline QuatImage qdft(const QuatImage& q, const Quat& axis)
{
    return detail::quaternion_transform(q, axis, -1);
}

/// Inverse of qdft: +axis exponent and a 1/(W H) factor.
inline QuatImage iqdft(const QuatImage& spectrum, const Quat& axis)
{
    return detail::quaternion_transform(spectrum, axis, +1);
}

inline constexpr double kPhaseZeroThreshold = 1e-12;

/// Normalizes each coefficient to unit norm; near-zero coefficients become zero.
inline QuatImage phase_only(const QuatImage& spectrum)
{
    QuatImage out = spectrum;
    for (Quat& q : out.values()) {
        const double m = q.norm();
        q = m < kPhaseZeroThreshold ? Quat{} : (1.0 / m) * q;
    }
    return out;
}

/// Scalar saliency field (unnormalized, non-negative).
struct SaliencyMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

struct SaliencyMetrics {
    double integral = 0.0;
    double max = 0.0;
};

inline SaliencyMetrics metrics(const SaliencyMap& map)
{
    SaliencyMetrics m;
    for (double v : map.values) {
        m.integral += v;
        m.max = std::max(m.max, v);
    }
    return m;
}

struct SaliencyParams {
    int work_max_dim = 128;
    double sigma = 3.0;
};

/// Bilinear resampling with pixel-center alignment, edge-clamped.
/// Interpolates premultiplied color so transparent texels do not bleed.
inline Image resize_bilinear(const Image& src, int width, int height)
{
    if (width == src.width() && height == src.height())
        return src;
    Image out(width, height);
    const double sx = static_cast<double>(src.width()) / width;
    const double sy = static_cast<double>(src.height()) / height;
    auto premul = [&](int x, int y) {
        x = std::clamp(x, 0, src.width() - 1);
        y = std::clamp(y, 0, src.height() - 1);
        const Rgba& p = src.at(x, y);
        return Rgba{p.r * p.a, p.g * p.a, p.b * p.a, p.a};
    };
    for (int y = 0; y < height; ++y) {
        const double fy = (y + 0.5) * sy - 0.5;
        const int y0 = static_cast<int>(std::floor(fy));
        const double ty = fy - y0;
        for (int x = 0; x < width; ++x) {
            const double fx = (x + 0.5) * sx - 0.5;
            const int x0 = static_cast<int>(std::floor(fx));
            const double tx = fx - x0;
            const Rgba p00 = premul(x0, y0), p10 = premul(x0 + 1, y0);
            const Rgba p01 = premul(x0, y0 + 1), p11 = premul(x0 + 1, y0 + 1);
            auto mix = [&](double Rgba::*c) {
                return (1 - ty) * ((1 - tx) * p00.*c + tx * p10.*c) + ty * ((1 - tx) * p01.*c + tx * p11.*c);
            };
            const double a = mix(&Rgba::a);
            Rgba& o = out.at(x, y);
            o.a = clamp01(a);
            if (a > 0.0) {
                o.r = clamp01(mix(&Rgba::r) / a);
                o.g = clamp01(mix(&Rgba::g) / a);
                o.b = clamp01(mix(&Rgba::b) / a);
            }
        }
    }
    return out;
}

namespace detail {

inline int reflect_index(int i, int n)
{
    // symmetric reflection: ... c b a | a b c ... c b a | a b c
    while (i < 0 || i >= n) {
        if (i < 0)
            i = -i - 1;
        if (i >= n)
            i = 2 * n - i - 1;
    }
    return i;
}

} // namespace detail

/// Separable Gaussian, truncated at 3 sigma, reflective borders.
inline std::vector<double> gaussian_blur(const std::vector<double>& field, int width, int height,
                                         double sigma)
{
    if (sigma <= 0.0)
        return field;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    for (int k = -radius; k <= radius; ++k)
        kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
    const double total = std::accumulate(kernel.begin(), kernel.end(), 0.0);
    for (double& v : kernel)
        v /= total;

    std::vector<double> tmp(field.size()), out(field.size());
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double s = 0.0;
            for (int k = -radius; k <= radius; ++k)
                s += kernel[k + radius] * field[static_cast<std::size_t>(y) * width + detail::reflect_index(x + k, width)];
            tmp[static_cast<std::size_t>(y) * width + x] = s;
        }
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double s = 0.0;
            for (int k = -radius; k <= radius; ++k)
                s += kernel[k + radius] * tmp[static_cast<std::size_t>(detail::reflect_index(y + k, height)) * width + x];
            out[static_cast<std::size_t>(y) * width + x] = s;
        }
    return out;
}

/// Working resolution whose larger side equals `max_dim`.
inline std::pair<int, int> working_size(int width, int height, int max_dim)
{
    const double scale = static_cast<double>(max_dim) / std::max(width, height);
    return {std::max(1, static_cast<int>(std::lround(width * scale))),
            std::max(1, static_cast<int>(std::lround(height * scale)))};
}

/// resize -> quaternion image -> eigen axis -> qdft -> phase only -> iqdft
/// -> squared norm -> Gaussian blur. Returned unnormalized so metrics are
/// comparable between frames of one experiment.
inline SaliencyMap saliency_map(const Image& img, const SaliencyParams& params = {})
{
    if (params.work_max_dim < 1)
        throw InvalidArgument("work_max_dim must be positive");
    const auto [w, h] = working_size(img.width(), img.height(), params.work_max_dim);
    const QuatImage q = to_quaternion_image(resize_bilinear(img, w, h));
    const Quat axis = eigen_axis(q);
    const QuatImage recon = iqdft(phase_only(qdft(q, axis)), axis);

    std::vector<double> energy(recon.size());
    for (std::size_t i = 0; i < recon.size(); ++i)
        energy[i] = recon.values()[i].norm2();
    SaliencyMap map{w, h, gaussian_blur(energy, w, h, params.sigma)};
    for (double& v : map.values)
        v = std::max(v, 0.0);
    return map;
}

/// Grayscale visualization scaled so the map maximum is white.
inline Image saliency_heatmap(const SaliencyMap& map)
{
    Image img(map.width, map.height, Rgba{0, 0, 0, 1});
    const double peak = metrics(map).max;
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x) {
            const double v = peak > 0.0 ? clamp01(map.at(x, y) / peak) : 0.0;
            img.at(x, y) = {v, v, v, 1.0};
        }
    return img;
}

} // namespace ctex

#endif // CTEX_SALIENCY_HPP
