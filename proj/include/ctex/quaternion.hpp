#ifndef CTEX_QUATERNION_HPP
#define CTEX_QUATERNION_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "ctex/error.hpp"
#include "ctex/image.hpp"

namespace ctex {

/// w + x i + y j + z k
struct Quat {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Quat operator+(const Quat& a, const Quat& b)
    {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Quat operator-(const Quat& a, const Quat& b)
    {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Quat operator*(double s, const Quat& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }

    /// Hamilton product.
    friend Quat operator*(const Quat& a, const Quat& b)
    {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    friend bool operator==(const Quat&, const Quat&) = default;

    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Quat conj() const { return {w, -x, -y, -z}; }
    bool is_pure() const { return w == 0.0; }
};

/// exp(axis * angle) = cos(angle) + axis sin(angle), for a unit pure axis.
inline Quat quat_exp(const Quat& axis, double angle)
{
    const double s = std::sin(angle);
    return {std::cos(angle), axis.x * s, axis.y * s, axis.z * s};
}

class QuatImage {
public:
    QuatImage(int width, int height) : width_(width), height_(height)
    {
        if (width < 1 || height < 1)
            throw InvalidArgument("quaternion image dimensions must be positive");
        values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), Quat{});
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }

    Quat& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    const Quat& at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }

    std::vector<Quat>& values() { return values_; }
    const std::vector<Quat>& values() const { return values_; }

private:
    int width_;
    int height_;
    std::vector<Quat> values_;
};

/// Pure-quaternion embedding R i + G j + B k, alpha premultiplied.
inline QuatImage to_quaternion_image(const Image& img)
{
    QuatImage q(img.width(), img.height());
    auto src = img.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const Rgba& p = src[i];
        q.values()[i] = {0.0, p.r * p.a, p.g * p.a, p.b * p.a};
    }
    return q;
}

} // namespace ctex

#endif // CTEX_QUATERNION_HPP
