#ifndef CTEX_PNG_IO_HPP
#define CTEX_PNG_IO_HPP

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <png.h>

#include "ctex/error.hpp"
#include "ctex/image.hpp"

// 8-bit RGBA PNG encoding. Channel values are treated as already linear;
// no gamma conversion happens in either direction.

namespace ctex {

namespace detail {

inline std::uint8_t quantize8(double v)
{
    return static_cast<std::uint8_t>(std::lround(clamp01(v) * 255.0));
}

inline std::vector<std::uint8_t> to_rgba8(const Image& img)
{
    std::vector<std::uint8_t> buf(img.size() * 4);
    std::size_t i = 0;
    for (const Rgba& p : img.pixels()) {
        buf[i++] = quantize8(p.r);
        buf[i++] = quantize8(p.g);
        buf[i++] = quantize8(p.b);
        buf[i++] = quantize8(p.a);
    }
    return buf;
}

inline Image from_rgba8(int width, int height, const std::vector<std::uint8_t>& buf)
{
    Image img(width, height);
    std::size_t i = 0;
    for (Rgba& p : img.pixels()) {
        p.r = buf[i++] / 255.0;
        p.g = buf[i++] / 255.0;
        p.b = buf[i++] / 255.0;
        p.a = buf[i++] / 255.0;
    }
    return img;
}

inline Image decode_png_image(png_image& info, const std::string& what)
{
    info.format = PNG_FORMAT_RGBA;
    std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(info));
    if (!png_image_finish_read(&info, nullptr, buf.data(), 0, nullptr)) {
        std::string msg = info.message;
        png_image_free(&info);
        throw DecodeError(what + ": " + msg);
    }
    return from_rgba8(static_cast<int>(info.width), static_cast<int>(info.height), buf);
}

} // namespace detail

/// Encodes an image as an 8-bit RGBA PNG byte stream.
inline std::vector<std::uint8_t> encode_png(const Image& img)
{
    png_image info;
    std::memset(&info, 0, sizeof(info));
    info.version = PNG_IMAGE_VERSION;
    info.width = static_cast<png_uint_32>(img.width());
    info.height = static_cast<png_uint_32>(img.height());
    info.format = PNG_FORMAT_RGBA;

    const auto pixels = detail::to_rgba8(img);
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&info, nullptr, &size, 0, pixels.data(), 0, nullptr))
        throw IoError(std::string("png encode failed: ") + info.message);
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&info, out.data(), &size, 0, pixels.data(), 0, nullptr))
        throw IoError(std::string("png encode failed: ") + info.message);
    out.resize(size);
    return out;
}

inline Image decode_png(const std::vector<std::uint8_t>& bytes)
{
    png_image info;
    std::memset(&info, 0, sizeof(info));
    info.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&info, bytes.data(), bytes.size()))
        throw DecodeError(std::string("not a PNG stream: ") + info.message);
    return detail::decode_png_image(info, "png decode");
}

inline void save_png(const Image& img, const std::filesystem::path& path)
{
    const auto bytes = encode_png(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed: " + path.string());
}

inline Image load_png(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    png_image info;
    std::memset(&info, 0, sizeof(info));
    info.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&info, bytes.data(), bytes.size()))
        throw DecodeError(path.string() + ": " + info.message);
    return detail::decode_png_image(info, path.string());
}

/// Mask from an image: a pixel is set when it is mostly opaque and bright.
inline Mask mask_from_image(const Image& img)
{
    Mask m(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const Rgba& p = img.at(x, y);
            const double lum = (p.r + p.g + p.b) / 3.0;
            m.set(x, y, p.a >= 0.5 && lum >= 0.5);
        }
    return m;
}

} // namespace ctex

#endif // CTEX_PNG_IO_HPP
