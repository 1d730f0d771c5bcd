#ifndef CTEX_PLOT_HPP
#define CTEX_PLOT_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ctex/compositor.hpp"
#include "ctex/error.hpp"
#include "ctex/image.hpp"
#include "ctex/png_io.hpp"
#include "ctex/sweep.hpp"

// Line charts of sweep results: one panel per metric, one polyline per mode.

namespace ctex {

namespace font {

inline constexpr int kGlyphW = 5;
inline constexpr int kGlyphH = 7;

/// 5x7 bitmap rows (bit 4 = leftmost column). Lowercase renders as uppercase.
inline const std::array<std::uint8_t, 7>* glyph(char ch)
{
    struct Entry {
        char c;
        std::array<std::uint8_t, 7> rows;
    };
    static const Entry table[] = {
        {' ', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}}, {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
        {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}}, {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
        {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}}, {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
        {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}}, {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
        {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}}, {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
        {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}}, {'A', {0x0E, 0x11, 0x11, 0x11, 0x1F, 0x11, 0x11}},
        {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}}, {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}},
        {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}}, {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
        {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}}, {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
        {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}}, {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
        {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}}, {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
        {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}}, {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
        {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}}, {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
        {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}}, {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}},
        {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}}, {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}},
        {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}}, {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
        {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}}, {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}},
        {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}}, {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}},
        {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}}, {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}},
        {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}}, {'_', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F}},
        {':', {0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00}}, {'=', {0x00, 0x00, 0x1F, 0x00, 0x1F, 0x00, 0x00}},
        {'+', {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00}}, {'(', {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02}},
        {')', {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08}}, {'/', {0x00, 0x01, 0x02, 0x04, 0x08, 0x10, 0x00}},
        {',', {0x00, 0x00, 0x00, 0x00, 0x0C, 0x04, 0x08}}, {'%', {0x18, 0x19, 0x02, 0x04, 0x08, 0x13, 0x03}},
    };
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (const Entry& e : table)
        if (e.c == up)
            return &e.rows;
    return nullptr;
}

} // namespace font

/// Minimal opaque raster canvas.
class Canvas {
public:
    Canvas(int width, int height, ColorRGB bg) : img_(width, height, Rgba{bg.r, bg.g, bg.b, 1.0}) {}

    const Image& image() const { return img_; }

    void plot(int x, int y, ColorRGB c)
    {
        if (img_.contains(x, y))
            img_.at(x, y) = {c.r, c.g, c.b, 1.0};
    }

    void line(int x0, int y0, int x1, int y1, ColorRGB c, int thickness = 1)
    {
        const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
        const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        const int lo = -(thickness - 1) / 2, hi = thickness / 2;
        for (;;) {
            for (int oy = lo; oy <= hi; ++oy)
                for (int ox = lo; ox <= hi; ++ox)
                    plot(x0 + ox, y0 + oy, c);
            if (x0 == x1 && y0 == y1)
                break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }

    void fill_rect(int x, int y, int w, int h, ColorRGB c)
    {
        for (int j = y; j < y + h; ++j)
            for (int i = x; i < x + w; ++i)
                plot(i, j, c);
    }

    /// Draws text with its top-left corner at (x,y); returns the advance.
    int text(int x, int y, std::string_view s, ColorRGB c)
    {
        int cx = x;
        for (char ch : s) {
            if (const auto* rows = font::glyph(ch))
                for (int r = 0; r < font::kGlyphH; ++r)
                    for (int col = 0; col < font::kGlyphW; ++col)
                        if ((*rows)[r] & (1 << (font::kGlyphW - 1 - col)))
                            plot(cx + col, y + r, c);
            cx += font::kGlyphW + 1;
        }
        return cx - x;
    }

    static int text_width(std::string_view s) { return static_cast<int>(s.size()) * (font::kGlyphW + 1); }

private:
    Image img_;
};

struct PlotSeries {
    std::string name;
    ColorRGB color;
    std::vector<Vec2> points; // (offset, value), ascending offset
};

struct PlotPanel {
    std::string title;
    std::vector<PlotSeries> series;
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
};

struct PlotModel {
    std::string x_label;
    std::vector<PlotPanel> panels;
    std::vector<std::pair<std::string, ColorRGB>> legend;
};

inline ColorRGB mode_color(VisMode m)
{
    switch (m) {
    case VisMode::ComplementaryPhotometric: return {0.85, 0.15, 0.15};
    case VisMode::ComplementaryGeometric: return {0.90, 0.55, 0.05};
    case VisMode::Silhouette: return {0.15, 0.35, 0.85};
    case VisMode::Wireframe: return {0.15, 0.60, 0.20};
    case VisMode::Fresnel: return {0.55, 0.20, 0.70};
    }
    return {0, 0, 0};
}

/// Chart layout for a sweep: panels "integral" and "max", modes in first-seen order.
inline PlotModel build_plot(const SweepResult& result)
{
    if (result.rows.empty())
        throw InvalidArgument("plot needs at least one row");
    PlotModel model;
    model.x_label = std::string(to_string(result.rows.front().axis));

    std::vector<VisMode> modes;
    for (const SweepRow& r : result.rows)
        if (std::find(modes.begin(), modes.end(), r.mode) == modes.end())
            modes.push_back(r.mode);

    for (int metric = 0; metric < 2; ++metric) {
        PlotPanel panel;
        panel.title = metric == 0 ? "integral" : "max";
        panel.x_min = panel.y_min = INFINITY;
        panel.x_max = panel.y_max = -INFINITY;
        for (VisMode m : modes) {
            PlotSeries s{std::string(to_string(m)), mode_color(m), {}};
            for (const SweepRow& r : result.rows)
                if (r.mode == m) {
                    const double v = metric == 0 ? r.integral : r.max;
                    s.points.push_back({r.offset, v});
                    panel.x_min = std::min(panel.x_min, r.offset);
                    panel.x_max = std::max(panel.x_max, r.offset);
                    panel.y_min = std::min(panel.y_min, v);
                    panel.y_max = std::max(panel.y_max, v);
                }
            std::sort(s.points.begin(), s.points.end());
            panel.series.push_back(std::move(s));
        }
        if (panel.x_max == panel.x_min) {
            panel.x_min -= 0.5;
            panel.x_max += 0.5;
        }
        if (panel.y_max == panel.y_min) {
            const double pad = std::max(std::abs(panel.y_max) * 0.1, 1e-12);
            panel.y_min -= pad;
            panel.y_max += pad;
        }
        model.panels.push_back(std::move(panel));
    }
    for (VisMode m : modes)
        model.legend.emplace_back(std::string(to_string(m)), mode_color(m));
    return model;
}

inline Image render_plot(const PlotModel& model)
{
    constexpr int kPanelW = 360, kPanelH = 240, kMarginL = 64, kMarginR = 16, kMarginT = 24, kMarginB = 36;
    constexpr int kLegendH = 16;
    const int panels = static_cast<int>(model.panels.size());
    const int width = panels * (kMarginL + kPanelW + kMarginR);
    const int legend_rows = static_cast<int>(model.legend.size());
    const int height = kMarginT + kPanelH + kMarginB + legend_rows * kLegendH + 8;
    const ColorRGB ink{0.1, 0.1, 0.1}, grid{0.85, 0.85, 0.85};
    Canvas cv(width, height, {1, 1, 1});

    for (int p = 0; p < panels; ++p) {
        const PlotPanel& panel = model.panels[p];
        const int ox = p * (kMarginL + kPanelW + kMarginR) + kMarginL;
        const int oy = kMarginT;
        auto px = [&](double x) {
            return ox + static_cast<int>(std::lround((x - panel.x_min) / (panel.x_max - panel.x_min) * (kPanelW - 1)));
        };
        auto py = [&](double y) {
            return oy + kPanelH - 1
                - static_cast<int>(std::lround((y - panel.y_min) / (panel.y_max - panel.y_min) * (kPanelH - 1)));
        };
        for (int t = 0; t <= 4; ++t) {
            const int gy = oy + (kPanelH - 1) * t / 4;
            cv.line(ox, gy, ox + kPanelW - 1, gy, grid);
            const double yv = panel.y_max - (panel.y_max - panel.y_min) * t / 4.0;
            const std::string label = format_g(yv, 3);
            cv.text(ox - 4 - Canvas::text_width(label), gy - 3, label, ink);
            const int gx = ox + (kPanelW - 1) * t / 4;
            const double xv = panel.x_min + (panel.x_max - panel.x_min) * t / 4.0;
            const std::string xl = format_g(xv, 3);
            cv.text(gx - Canvas::text_width(xl) / 2, oy + kPanelH + 4, xl, ink);
        }
        cv.line(ox, oy, ox, oy + kPanelH - 1, ink);
        cv.line(ox, oy + kPanelH - 1, ox + kPanelW - 1, oy + kPanelH - 1, ink);
        cv.text(ox + (kPanelW - Canvas::text_width(panel.title)) / 2, 8, panel.title, ink);
        cv.text(ox + (kPanelW - Canvas::text_width(model.x_label)) / 2, oy + kPanelH + 18, model.x_label, ink);
        for (const PlotSeries& s : panel.series) {
            for (std::size_t i = 1; i < s.points.size(); ++i)
                cv.line(px(s.points[i - 1].x), py(s.points[i - 1].y), px(s.points[i].x), py(s.points[i].y),
                        s.color, 2);
            for (const Vec2& pt : s.points)
                cv.fill_rect(px(pt.x) - 2, py(pt.y) - 2, 5, 5, s.color);
        }
    }
    const int ly = kMarginT + kPanelH + kMarginB + 4;
    for (int i = 0; i < legend_rows; ++i) {
        const auto& [name, color] = model.legend[i];
        cv.fill_rect(kMarginL, ly + i * kLegendH, 12, 8, color);
        cv.text(kMarginL + 18, ly + i * kLegendH + 1, name, ink);
    }
    return cv.image();
}

inline void plot_curves(const SweepResult& result, const std::filesystem::path& path)
{
    save_png(render_plot(build_plot(result)), path);
}

} // namespace ctex

#endif // CTEX_PLOT_HPP
