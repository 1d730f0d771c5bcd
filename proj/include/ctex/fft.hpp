#ifndef CTEX_FFT_HPP
#define CTEX_FFT_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

// Small complex DFT used by the quaternion transform. Power-of-two lengths
// run an iterative radix-2 FFT; other lengths use a tabulated direct DFT.

namespace ctex::fft {

using Complex = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// twiddle[k] = exp(sign * 2 pi i k / n), built from exact index fractions.
inline std::vector<Complex> twiddles(std::size_t n, int sign)
{
    std::vector<Complex> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        w[k] = {std::cos(angle), std::sin(angle)};
    }
    return w;
}

inline void radix2(std::vector<Complex>& a, const std::vector<Complex>& w)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len)
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w[k * step];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
    }
}

// The mean is split off and added back to bin 0, so a constant input has
// exactly zero non-DC bins (as radix-2 does) instead of roundoff at DC * eps.
inline void direct(std::vector<Complex>& a, const std::vector<Complex>& w)
{
    const std::size_t n = a.size();
    Complex mean{};
    for (const Complex& v : a)
        mean += v;
    mean /= static_cast<double>(n);
    std::vector<Complex> out(n);
    for (std::size_t u = 0; u < n; ++u) {
        Complex s{};
        for (std::size_t x = 0; x < n; ++x)
            s += (a[x] - mean) * w[(u * x) % n];
        out[u] = s;
    }
    out[0] += mean * static_cast<double>(n);
    a.swap(out);
}

} // namespace detail

/// Unnormalized 1D DFT in place: sign = -1 forward, +1 backward.
inline void transform(std::vector<Complex>& a, int sign)
{
    const auto w = detail::twiddles(a.size(), sign);
    if (detail::is_pow2(a.size()))
        detail::radix2(a, w);
    else
        detail::direct(a, w);
}

/// Unnormalized 2D DFT of a row-major width x height grid, in place.
inline void transform2d(std::vector<Complex>& grid, int width, int height, int sign)
{
    const auto wx = detail::twiddles(static_cast<std::size_t>(width), sign);
    const auto wy = detail::twiddles(static_cast<std::size_t>(height), sign);
    std::vector<Complex> line(static_cast<std::size_t>(width));
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x)
            line[x] = grid[static_cast<std::size_t>(y) * width + x];
        if (detail::is_pow2(line.size()))
            detail::radix2(line, wx);
        else
            detail::direct(line, wx);
        for (int x = 0; x < width; ++x)
            grid[static_cast<std::size_t>(y) * width + x] = line[x];
    }
    line.resize(static_cast<std::size_t>(height));
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y)
            line[y] = grid[static_cast<std::size_t>(y) * width + x];
        if (detail::is_pow2(line.size()))
            detail::radix2(line, wy);
        else
            detail::direct(line, wy);
        for (int y = 0; y < height; ++y)
            grid[static_cast<std::size_t>(y) * width + x] = line[y];
    }
}

} // namespace ctex::fft

#endif // CTEX_FFT_HPP
