#ifndef CTEX_GEOMETRY_HPP
#define CTEX_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ctex/error.hpp"
#include "ctex/image.hpp"

namespace ctex {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
    friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Twice the signed area of triangle (a,b,c); positive when counter-clockwise.
inline double orient2d(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0)
        return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

struct Segment {
    Vec2 a;
    Vec2 b;
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

/// Simple counter-clockwise polygon with at least three vertices.
class Polygon2D {
public:
    explicit Polygon2D(std::vector<Vec2> vertices) : vertices_(std::move(vertices))
    {
        const std::size_t n = vertices_.size();
        if (n < 3)
            throw DegenerateInput("polygon needs at least 3 vertices");
        for (std::size_t i = 0; i < n; ++i)
            if (vertices_[i] == vertices_[(i + 1) % n])
                throw DegenerateInput("polygon has a zero-length edge");
        if (!(signed_area() > 0.0))
            throw DegenerateInput("polygon must be counter-clockwise with positive area");
        if (!is_simple())
            throw DegenerateInput("polygon is self-intersecting");
    }

    /// Axis-aligned rectangle with corners (x0,y0) and (x1,y1), x0 < x1, y0 < y1.
    static Polygon2D rectangle(double x0, double y0, double x1, double y1)
    {
        return Polygon2D({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
    }

    std::span<const Vec2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Vec2& operator[](std::size_t i) const { return vertices_[i]; }

    Segment edge(std::size_t i) const { return {vertices_[i], vertices_[(i + 1) % size()]}; }

    double signed_area() const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            s += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
        return 0.5 * s;
    }

    double perimeter() const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            s += distance(vertices_[i], vertices_[(i + 1) % size()]);
        return s;
    }

    std::pair<Vec2, Vec2> bounds() const
    {
        Vec2 lo = vertices_[0], hi = vertices_[0];
        for (const Vec2& v : vertices_) {
            lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
            hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
        }
        return {lo, hi};
    }

    double diagonal() const
    {
        const auto [lo, hi] = bounds();
        return distance(lo, hi);
    }

    /// Convex, allowing straight (180 degree) vertices.
    bool is_convex() const
    {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 e0 = vertices_[(i + 1) % n] - vertices_[i];
            const Vec2 e1 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
            if (cross(e0, e1) < -1e-12 * norm(e0) * norm(e1))
                return false;
        }
        return true;
    }

    /// Closed-region membership (boundary counts as inside).
    bool contains(Vec2 p) const
    {
        bool inside = false;
        const std::size_t n = size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Vec2 a = vertices_[j], b = vertices_[i];
            if (point_segment_distance(p, a, b) == 0.0)
                return true;
            if ((b.y > p.y) != (a.y > p.y)) {
                const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x)
                    inside = !inside;
            }
        }
        return inside;
    }

    double boundary_distance(Vec2 p) const
    {
        double d = INFINITY;
        for (std::size_t i = 0; i < size(); ++i) {
            const Segment e = edge(i);
            d = std::min(d, point_segment_distance(p, e.a, e.b));
        }
        return d;
    }

    Polygon2D translated(Vec2 v) const
    {
        std::vector<Vec2> out(vertices_.begin(), vertices_.end());
        for (Vec2& p : out)
            p = p + v;
        return Polygon2D(std::move(out));
    }

private:
    static bool segments_touch(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2)
    {
        const double d1 = orient2d(q1, q2, p1), d2 = orient2d(q1, q2, p2);
        const double d3 = orient2d(p1, p2, q1), d4 = orient2d(p1, p2, q2);
        if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
            return true;
        return point_segment_distance(p1, q1, q2) == 0.0 || point_segment_distance(p2, q1, q2) == 0.0
            || point_segment_distance(q1, p1, p2) == 0.0 || point_segment_distance(q2, p1, p2) == 0.0;
    }

    bool is_simple() const
    {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (j == i + 1 || (i == 0 && j == n - 1))
                    continue;
                const Segment a = edge(i), b = edge(j);
                if (segments_touch(a.a, a.b, b.a, b.b))
                    return false;
            }
        return true;
    }

    std::vector<Vec2> vertices_;
};

namespace detail {

inline void require_convex(const Polygon2D& poly, const char* what)
{
    if (!poly.is_convex())
        throw NonConvexPolygon(std::string(what) + ": polygon is not convex");
}

} // namespace detail

/// All vertex pairs that are not polygon edges, ordered by (i, j) with i < j.
inline std::vector<Segment> polygon_diagonals(const Polygon2D& poly)
{
    detail::require_convex(poly, "polygon_diagonals");
    const std::size_t n = poly.size();
    std::vector<Segment> out;
    out.reserve(n * (n - 3) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1)
                continue;
            out.push_back({poly[i], poly[j]});
        }
    return out;
}

/// Interior angle bisector of every vertex, from the vertex to where the
/// bisecting ray leaves the polygon.
inline std::vector<Segment> angle_bisectors(const Polygon2D& poly)
{
    detail::require_convex(poly, "angle_bisectors");
    const std::size_t n = poly.size();
    std::vector<Segment> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 v = poly[i];
        const Vec2 prev = poly[(i + n - 1) % n];
        const Vec2 next = poly[(i + 1) % n];
        const Vec2 u = (1.0 / distance(prev, v)) * (prev - v);
        const Vec2 w = (1.0 / distance(next, v)) * (next - v);
        Vec2 dir = u + w;
        if (norm(dir) < 1e-12)
            dir = {-w.y, w.x}; // straight vertex: inward normal of a CCW boundary
        dir = (1.0 / norm(dir)) * dir;

        double best_t = INFINITY;
        Vec2 hit{};
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i || (k + 1) % n == i)
                continue;
            const Segment e = poly.edge(k);
            const Vec2 ed = e.b - e.a;
            const double den = cross(dir, ed);
            if (std::abs(den) < 1e-15)
                continue;
            const Vec2 av = e.a - v;
            const double t = cross(av, ed) / den;
            const double s = cross(av, dir) / den;
            if (t > 1e-12 && s >= -1e-12 && s <= 1.0 + 1e-12 && t < best_t) {
                best_t = t;
                hit = e.a + std::clamp(s, 0.0, 1.0) * ed;
            }
        }
        if (!std::isfinite(best_t))
            throw DegenerateInput("angle_bisectors: bisector ray does not meet the boundary");
        out.push_back({v, hit});
    }
    return out;
}

/// Largest inscribed circle of a convex polygon (Chebyshev center).
///
/// The optimum of max r s.t. n_i.c + r <= b_i is attained where three edge
/// lines are active, so every triple is solved and checked for feasibility.
/// When the optimal centers form a segment (e.g. a non-square rectangle)
/// its midpoint is returned.
inline Circle incircle(const Polygon2D& poly)
{
    detail::require_convex(poly, "incircle");
    const std::size_t n = poly.size();
    const Vec2 origin = poly[0];
    const double scale = poly.diagonal();
    const double tol = 1e-10 * scale;

    struct Line {
        Vec2 normal;
        double offset;
    };
    std::vector<Line> lines;
    lines.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i] - origin;
        const Vec2 b = poly[(i + 1) % n] - origin;
        const Vec2 e = b - a;
        const double len = norm(e);
        const Vec2 nrm{e.y / len, -e.x / len};
        lines.push_back({nrm, dot(nrm, a)});
    }

    struct Candidate {
        Vec2 center;
        double radius;
    };
    std::vector<Candidate> feasible;
    double best = -INFINITY;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const Line& l0 = lines[i];
                const Line& l1 = lines[j];
                const Line& l2 = lines[k];
                // | nx ny 1 | [cx cy r]^T = b
                const double det = l0.normal.x * (l1.normal.y - l2.normal.y)
                    - l0.normal.y * (l1.normal.x - l2.normal.x)
                    + (l1.normal.x * l2.normal.y - l2.normal.x * l1.normal.y);
                if (std::abs(det) < 1e-12)
                    continue;
                const double cx = (l0.offset * (l1.normal.y - l2.normal.y)
                                   - l0.normal.y * (l1.offset - l2.offset)
                                   + (l1.offset * l2.normal.y - l2.offset * l1.normal.y))
                    / det;
                const double cy = (l0.normal.x * (l1.offset - l2.offset)
                                   - l0.offset * (l1.normal.x - l2.normal.x)
                                   + (l1.normal.x * l2.offset - l2.normal.x * l1.offset))
                    / det;
                const double r = l0.offset - l0.normal.x * cx - l0.normal.y * cy;
                if (!(r > 0.0))
                    continue;
                bool ok = true;
                for (const Line& l : lines)
                    if (dot(l.normal, {cx, cy}) + r > l.offset + tol) {
                        ok = false;
                        break;
                    }
                if (!ok)
                    continue;
                feasible.push_back({{cx, cy}, r});
                best = std::max(best, r);
            }
    if (feasible.empty())
        throw DegenerateInput("incircle: no inscribed circle found");

    std::vector<Vec2> optimal;
    for (const Candidate& c : feasible)
        if (c.radius >= best - tol)
            optimal.push_back(c.center);
    Vec2 p = optimal[0], q = optimal[0];
    double far = 0.0;
    for (std::size_t i = 0; i < optimal.size(); ++i)
        for (std::size_t j = i + 1; j < optimal.size(); ++j) {
            const double d = distance(optimal[i], optimal[j]);
            if (d > far) {
                far = d;
                p = optimal[i];
                q = optimal[j];
            }
        }
    const Vec2 center = 0.5 * (p + q);
    double radius = INFINITY;
    for (const Line& l : lines)
        radius = std::min(radius, l.offset - dot(l.normal, center));
    return {center + origin, radius};
}

namespace detail {

inline Circle circle_from_two(Vec2 a, Vec2 b)
{
    const Vec2 c = 0.5 * (a + b);
    return {c, 0.5 * distance(a, b)};
}

inline Circle circle_from_three(Vec2 a, Vec2 b, Vec2 c)
{
    const Vec2 ab = b - a, ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (std::abs(d) < 1e-14 * (dot(ab, ab) + dot(ac, ac))) {
        Circle best = circle_from_two(a, b);
        for (const Circle& cand : {circle_from_two(a, c), circle_from_two(b, c)})
            if (cand.radius > best.radius)
                best = cand;
        return best;
    }
    const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
    const Vec2 off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    return {a + off, norm(off)};
}

inline bool circle_covers(const Circle& c, Vec2 p)
{
    return distance(c.center, p) <= c.radius * (1.0 + 1e-12) + 1e-300;
}

} // namespace detail

/// Smallest circle containing every point (Welzl, iterative form).
inline Circle min_enclosing_circle(std::span<const Vec2> points)
{
    std::vector<Vec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2)
        throw DegenerateInput("min_enclosing_circle needs at least 2 distinct points");

    // Work relative to the first point so translated inputs give translated outputs.
    const Vec2 origin = points[0];
    for (Vec2& p : pts)
        p = p - origin;
    std::mt19937 rng(0x5eed);
    std::shuffle(pts.begin(), pts.end(), rng);

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (detail::circle_covers(c, pts[i]))
            continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (detail::circle_covers(c, pts[j]))
                continue;
            c = detail::circle_from_two(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!detail::circle_covers(c, pts[k]))
                    c = detail::circle_from_three(pts[i], pts[j], pts[k]);
        }
    }
    c.center = c.center + origin;
    return c;
}

struct Triangulation {
    std::vector<Vec2> points;
    std::vector<std::array<int, 3>> triangles; // counter-clockwise vertex indices

    /// Unique undirected edges as index pairs (lo, hi), sorted.
    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        for (const auto& t : triangles)
            for (int k = 0; k < 3; ++k) {
                const int a = t[k], b = t[(k + 1) % 3];
                out.emplace_back(std::min(a, b), std::max(a, b));
            }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

namespace detail {

// > 0 when d lies inside the circle through counter-clockwise a, b, c.
// `slack` receives a magnitude bound used to call near-zero values cocircular.
inline double incircle_det(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double& slack)
{
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;
    slack = alift * (std::abs(bdx * cdy) + std::abs(cdx * bdy))
        + blift * (std::abs(cdx * ady) + std::abs(adx * cdy))
        + clift * (std::abs(adx * bdy) + std::abs(bdx * ady));
    return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady);
}

inline bool orient_positive(Vec2 a, Vec2 b, Vec2 c)
{
    return orient2d(a, b, c) > 1e-12 * distance(a, b) * distance(a, c);
}

} // namespace detail

/// Delaunay triangulation of a planar point set.
///
/// Exact duplicates are merged; `points` of the result holds the distinct
/// points in first-seen order. Cocircular quadrilaterals take the diagonal
/// whose sorted endpoint pair is lexicographically smaller.
inline Triangulation delaunay(std::span<const Vec2> input)
{
    Triangulation tri;
    {
        std::vector<Vec2> sorted(input.begin(), input.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<bool> used(sorted.size(), false);
        for (const Vec2& p : input) {
            const auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
            const auto k = static_cast<std::size_t>(it - sorted.begin());
            if (!used[k]) {
                used[k] = true;
                tri.points.push_back(p);
            }
        }
    }
    const auto& pts = tri.points;
    const std::size_t n = pts.size();
    if (n < 3)
        throw DegenerateInput("delaunay needs at least 3 distinct points");

    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return pts[a] < pts[b]; });

    auto collinear_eps = [&](int a, int b, int c) {
        return 1e-12 * distance(pts[a], pts[b]) * distance(pts[a], pts[c]);
    };

    // Seed: the leading collinear run plus the first point off its line.
    std::size_t k = 2;
    while (k < n
           && std::abs(orient2d(pts[order[0]], pts[order[1]], pts[order[k]]))
               <= collinear_eps(order[0], order[1], order[k]))
        ++k;
    if (k == n)
        throw DegenerateInput("delaunay: all points are collinear");

    std::vector<int> hull;
    const int apex = order[k];
    const bool left = orient2d(pts[order[0]], pts[order[1]], pts[apex]) > 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const int a = order[i], b = order[i + 1];
        tri.triangles.push_back(left ? std::array<int, 3>{a, b, apex} : std::array<int, 3>{b, a, apex});
    }
    if (left) {
        for (std::size_t i = 0; i < k; ++i)
            hull.push_back(order[i]);
        hull.push_back(apex);
    } else {
        hull.push_back(order[0]);
        hull.push_back(apex);
        for (std::size_t i = k - 1; i >= 1; --i)
            hull.push_back(order[i]);
    }

    // Sweep: every new point is lexicographically largest, hence outside the
    // current hull; connect it to the hull edges it can see.
    for (std::size_t m = k + 1; m < n; ++m) {
        const int p = order[m];
        const std::size_t h = hull.size();
        std::vector<double> o(h);
        std::vector<bool> visible(h);
        bool any = false;
        for (std::size_t i = 0; i < h; ++i) {
            const int a = hull[i], b = hull[(i + 1) % h];
            o[i] = orient2d(pts[a], pts[b], pts[p]);
            visible[i] = o[i] < -collinear_eps(a, b, p);
            any = any || visible[i];
        }
        if (!any)
            visible[static_cast<std::size_t>(std::min_element(o.begin(), o.end()) - o.begin())] = true;

        if (std::all_of(visible.begin(), visible.end(), [](bool v) { return v; }))
            throw DegenerateInput("delaunay: point sees the whole hull");
        std::size_t start = 0;
        while (!(visible[start] && !visible[(start + h - 1) % h]))
            ++start;
        std::size_t count = 0;
        while (visible[(start + count) % h])
            ++count;
        for (std::size_t c = 0; c < count; ++c) {
            const std::size_t i = (start + c) % h;
            tri.triangles.push_back({hull[(i + 1) % h], hull[i], p});
        }
        std::vector<int> next;
        next.reserve(h + 1);
        // keep hull[start], insert p, resume at hull[start + count]
        for (std::size_t c = start + count; c < start + h + 1; ++c)
            next.push_back(hull[c % h]);
        next.push_back(p);
        hull = std::move(next);
    }

    // Lawson flips until locally Delaunay everywhere.
    auto pair_less = [&](int a, int b, int c, int d) {
        std::pair<Vec2, Vec2> x{std::min(pts[a], pts[b]), std::max(pts[a], pts[b])};
        std::pair<Vec2, Vec2> y{std::min(pts[c], pts[d]), std::max(pts[c], pts[d])};
        return x < y;
    };
    const std::size_t max_flips = 64 * n * n + 1024;
    std::size_t flips = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, int>>> edge_map;
        for (std::size_t t = 0; t < tri.triangles.size(); ++t)
            for (int e = 0; e < 3; ++e) {
                const int a = tri.triangles[t][e], b = tri.triangles[t][(e + 1) % 3];
                edge_map[{std::min(a, b), std::max(a, b)}].emplace_back(t, e);
            }
        for (const auto& [key, owners] : edge_map) {
            if (owners.size() != 2)
                continue;
            const auto [t1, e1] = owners[0];
            const auto [t2, e2] = owners[1];
            const int a = tri.triangles[t1][e1];
            const int b = tri.triangles[t1][(e1 + 1) % 3];
            const int c = tri.triangles[t1][(e1 + 2) % 3];
            const int d = tri.triangles[t2][(e2 + 2) % 3];
            double slack = 0.0;
            const double det = detail::incircle_det(pts[a], pts[b], pts[c], pts[d], slack);
            const double tol = 1e-10 * slack;
            bool flip = det > tol;
            if (!flip && std::abs(det) <= tol)
                flip = pair_less(c, d, a, b);
            if (!flip)
                continue;
            if (!detail::orient_positive(pts[a], pts[d], pts[c])
                || !detail::orient_positive(pts[d], pts[b], pts[c]))
                continue;
            tri.triangles[t1] = {a, d, c};
            tri.triangles[t2] = {d, b, c};
            if (++flips > max_flips)
                throw DegenerateInput("delaunay: edge flipping did not converge");
            changed = true;
            break;
        }
    }
    return tri;
}

/// Which primitive kinds a geometric complement draws.
struct ComplementConfig {
    bool edges = true;
    bool diagonals = true;
    bool bisectors = true;
    bool incircle = true;
    bool circumcircle = true;
    bool delaunay = true;
    int delaunay_grid = 0; // n x n interior samples added to the polygon vertices
    double stroke_width = 1.0;
    ColorRGB stroke_color{1.0, 1.0, 1.0};
};

struct PrimitiveSet {
    std::vector<Segment> segments;
    std::vector<Circle> circles;
    double stroke_width = 1.0;
    ColorRGB stroke_color{1.0, 1.0, 1.0};
};

/// Polygon vertices plus the n x n bounding-box grid samples strictly inside.
inline std::vector<Vec2> polygon_with_interior_grid(const Polygon2D& poly, int n)
{
    std::vector<Vec2> pts(poly.vertices().begin(), poly.vertices().end());
    if (n <= 0)
        return pts;
    const auto [lo, hi] = poly.bounds();
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i) {
            const Vec2 p{lo.x + (hi.x - lo.x) * i / (n + 1), lo.y + (hi.y - lo.y) * j / (n + 1)};
            if (poly.contains(p) && poly.boundary_distance(p) > 1e-9 * poly.diagonal())
                pts.push_back(p);
        }
    return pts;
}

inline std::vector<Segment> polygon_edges(const Polygon2D& poly)
{
    std::vector<Segment> out;
    for (std::size_t i = 0; i < poly.size(); ++i)
        out.push_back(poly.edge(i));
    return out;
}

inline std::vector<Segment> triangulation_segments(const Triangulation& tri)
{
    std::vector<Segment> out;
    for (const auto& [a, b] : tri.edges())
        out.push_back({tri.points[a], tri.points[b]});
    return out;
}

/// Union of the enabled geometric primitives derived from a silhouette.
inline PrimitiveSet geometric_complement(const Polygon2D& poly, const ComplementConfig& cfg = {})
{
    if (cfg.stroke_width < 1.0)
        throw InvalidArgument("stroke_width must be >= 1");
    PrimitiveSet set;
    set.stroke_width = cfg.stroke_width;
    set.stroke_color = cfg.stroke_color;
    auto append = [&](const std::vector<Segment>& segs) {
        set.segments.insert(set.segments.end(), segs.begin(), segs.end());
    };
    if (cfg.edges)
        append(polygon_edges(poly));
    if (cfg.diagonals)
        append(polygon_diagonals(poly));
    if (cfg.bisectors)
        append(angle_bisectors(poly));
    if (cfg.incircle)
        set.circles.push_back(incircle(poly));
    if (cfg.circumcircle)
        set.circles.push_back(min_enclosing_circle(poly.vertices()));
    if (cfg.delaunay) {
        const auto pts = polygon_with_interior_grid(poly, cfg.delaunay_grid);
        append(triangulation_segments(delaunay(pts)));
    }
    return set;
}

/// Hard-edged stroke rendering of a primitive set.
///
/// Pixel (x,y) has its center at (x,y). It is painted when its distance to
/// a segment, or to a circle's locus, is at most stroke_width / 2.
inline Image rasterize(const PrimitiveSet& prims, int width, int height)
{
    Image img(width, height);
    const double hw = 0.5 * prims.stroke_width;
    const Rgba ink{clamp01(prims.stroke_color.r), clamp01(prims.stroke_color.g),
                   clamp01(prims.stroke_color.b), 1.0};
    auto clip_range = [](double lo, double hi, int limit) {
        const int a = std::max(0, static_cast<int>(std::floor(lo)));
        const int b = std::min(limit - 1, static_cast<int>(std::ceil(hi)));
        return std::pair{a, b};
    };
    for (const Segment& s : prims.segments) {
        const auto [x0, x1] = clip_range(std::min(s.a.x, s.b.x) - hw, std::max(s.a.x, s.b.x) + hw, width);
        const auto [y0, y1] = clip_range(std::min(s.a.y, s.b.y) - hw, std::max(s.a.y, s.b.y) + hw, height);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                if (point_segment_distance({double(x), double(y)}, s.a, s.b) <= hw)
                    img.at(x, y) = ink;
    }
    for (const Circle& c : prims.circles) {
        const double ext = c.radius + hw;
        const auto [x0, x1] = clip_range(c.center.x - ext, c.center.x + ext, width);
        const auto [y0, y1] = clip_range(c.center.y - ext, c.center.y + ext, height);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                if (std::abs(distance({double(x), double(y)}, c.center) - c.radius) <= hw)
                    img.at(x, y) = ink;
    }
    return img;
}

} // namespace ctex

#endif // CTEX_GEOMETRY_HPP
