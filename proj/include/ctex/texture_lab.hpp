#ifndef CTEX_TEXTURE_LAB_HPP
#define CTEX_TEXTURE_LAB_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ctex/error.hpp"
#include "ctex/image.hpp"

// Photometric complements of a source texture.

namespace ctex {

inline constexpr ColorRGB kWhite{1.0, 1.0, 1.0};
inline constexpr int kDefaultHistogramBins = 8;
inline constexpr double kDefaultVstTolerance = 0.1;

/// Per-pixel additive complement: clamp(target - c, 0, 1). Alpha is kept.
///
/// Where c <= target componentwise, c + result == target, so an additive
/// overlay of the result on the source yields a uniform patch of `target`.
inline Image invert_complement(const Image& tex, const ColorRGB& target = kWhite)
{
    Image out = tex;
    for (Rgba& p : out.pixels()) {
        p.r = clamp01(target.r - p.r);
        p.g = clamp01(target.g - p.g);
        p.b = clamp01(target.b - p.b);
    }
    return out;
}

namespace detail {

inline int histogram_bin(double v, int bins)
{
    const int b = static_cast<int>(std::floor(clamp01(v) * bins));
    return std::min(b, bins - 1);
}

// Order-independent sum: sorting first makes the result invariant under
// any permutation of the inputs, bit for bit.
inline double sorted_sum(std::vector<double>& values)
{
    std::sort(values.begin(), values.end());
    double s = 0.0;
    for (double v : values)
        s += v;
    return s;
}

} // namespace detail

/// Dominant color of a texture.
///
/// Pixels are histogrammed into bins^3 RGB cells with weight = alpha;
/// fully transparent pixels are ignored. The heaviest cell wins, ties going
/// to the lexicographically smallest (r,g,b) cell index, and the result is
/// the alpha-weighted mean color of the pixels in that cell.
inline ColorRGB predominant_color(const Image& tex, int bins_per_channel = kDefaultHistogramBins)
{
    if (bins_per_channel < 2)
        throw InvalidArgument("bins_per_channel must be >= 2");

    struct Member {
        double a, r, g, b;
        auto operator<=>(const Member&) const = default;
    };

    const int bins = bins_per_channel;
    std::vector<std::vector<Member>> cells(static_cast<std::size_t>(bins) * bins * bins);
    bool any = false;
    for (const Rgba& p : tex.pixels()) {
        if (p.a <= 0.0)
            continue;
        any = true;
        const std::size_t idx = (static_cast<std::size_t>(detail::histogram_bin(p.r, bins)) * bins
                                 + detail::histogram_bin(p.g, bins)) * bins
            + detail::histogram_bin(p.b, bins);
        cells[idx].push_back({p.a, p.r, p.g, p.b});
    }
    if (!any)
        throw EmptyImage("predominant_color: every pixel is fully transparent");

    std::size_t best = 0;
    double best_weight = -1.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].empty())
            continue;
        std::vector<double> w;
        w.reserve(cells[i].size());
        for (const Member& m : cells[i])
            w.push_back(m.a);
        const double weight = detail::sorted_sum(w);
        if (weight > best_weight) {
            best_weight = weight;
            best = i;
        }
    }

    std::vector<Member> members = cells[best];
    std::sort(members.begin(), members.end());
    double wsum = 0.0, r = 0.0, g = 0.0, b = 0.0;
    for (const Member& m : members) {
        wsum += m.a;
        r += m.a * m.r;
        g += m.a * m.g;
        b += m.a * m.b;
    }
    return {clamp01(r / wsum), clamp01(g / wsum), clamp01(b / wsum)};
}

inline double rgb_distance(const Rgba& p, const ColorRGB& c)
{
    const double dr = p.r - c.r, dg = p.g - c.g, db = p.b - c.b;
    return std::sqrt(dr * dr + dg * dg + db * db);
}

/// Occluding (video see-through) complement: pixels farther than `tol` from
/// the predominant color are painted with it at full opacity, all others
/// become fully transparent so the real texture shows through.
inline Image vst_complement(const Image& tex, const ColorRGB& predominant,
                            double tol = kDefaultVstTolerance)
{
    if (!(tol >= 0.0))
        throw InvalidArgument("vst tolerance must be >= 0");
    Image out(tex.width(), tex.height());
    auto src = tex.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const bool paint = rgb_distance(src[i], predominant) > tol;
        dst[i] = {predominant.r, predominant.g, predominant.b, paint ? 1.0 : 0.0};
    }
    return out;
}

/// Non-homogeneous complement: `patch` inside the region of interest,
/// transparent elsewhere.
inline Image patch_complement(const Image& tex, const Mask& roi, const Image& patch)
{
    if (!roi.matches(tex) || !patch.same_shape(tex))
        throw DimensionMismatch("patch_complement: roi, patch and texture sizes differ");
    Image out(tex.width(), tex.height());
    for (int y = 0; y < tex.height(); ++y)
        for (int x = 0; x < tex.width(); ++x)
            if (roi.at(x, y))
                out.at(x, y) = patch.at(x, y);
    return out;
}

} // namespace ctex

#endif // CTEX_TEXTURE_LAB_HPP
