#ifndef CTEX_IMAGE_HPP
#define CTEX_IMAGE_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "ctex/error.hpp"

namespace ctex {

/// Linear RGB color, each channel in [0,1].
struct ColorRGB {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    friend bool operator==(const ColorRGB&, const ColorRGB&) = default;
};

/// Straight (non-premultiplied) RGBA sample.
struct Rgba {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    double a = 0.0;

    friend bool operator==(const Rgba&, const Rgba&) = default;
};

inline constexpr Rgba kTransparent{0.0, 0.0, 0.0, 0.0};

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

/// Row-major W x H raster of RGBA samples.
class Image {
public:
    Image(int width, int height, Rgba fill = kTransparent)
        : width_(width), height_(height)
    {
        if (width < 1 || height < 1)
            throw InvalidArgument("image dimensions must be positive");
        pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }

    Rgba& at(int x, int y) { return pixels_[index(x, y)]; }
    const Rgba& at(int x, int y) const { return pixels_[index(x, y)]; }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    std::span<Rgba> pixels() { return pixels_; }
    std::span<const Rgba> pixels() const { return pixels_; }

    bool same_shape(const Image& other) const
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    /// True when every channel lies in [0,1].
    bool in_range() const
    {
        return std::all_of(pixels_.begin(), pixels_.end(), [](const Rgba& p) {
            return p.r >= 0 && p.r <= 1 && p.g >= 0 && p.g <= 1 && p.b >= 0 && p.b <= 1
                && p.a >= 0 && p.a <= 1;
        });
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t index(int x, int y) const
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_)
            + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<Rgba> pixels_;
};

/// Boolean region addressing an image of the same dimensions.
class Mask {
public:
    Mask(int width, int height, bool fill = false) : width_(width), height_(height)
    {
        if (width < 1 || height < 1)
            throw InvalidArgument("mask dimensions must be positive");
        values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                       fill ? 1 : 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }

    bool at(int x, int y) const { return values_[index(x, y)] != 0; }
    void set(int x, int y, bool v) { values_[index(x, y)] = v ? 1 : 0; }

    bool matches(const Image& img) const
    {
        return img.width() == width_ && img.height() == height_;
    }

private:
    std::size_t index(int x, int y) const
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_)
            + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<unsigned char> values_;
};

} // namespace ctex

#endif // CTEX_IMAGE_HPP
