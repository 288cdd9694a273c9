#include "diffgeo/plane_topology.hpp"

#include <cmath>
#include <limits>

namespace diffgeo {

void PolyCurve::validate() const {
    if (points.size() < 2) throw std::invalid_argument("PolyCurve: need at least 2 points");
    if (closed && points.size() < 3)
        throw std::invalid_argument("PolyCurve: closed curve needs at least 3 points");
    const int d = dim();
    if (d != 2 && d != 3) throw std::invalid_argument("PolyCurve: points must be 2D or 3D");
    const size_t n = points.size();
    for (size_t i = 0; i < n; ++i) {
        if (points[i].size() != d) throw std::invalid_argument("PolyCurve: mixed dimensions");
        size_t j = (i + 1) % n;
        if (!closed && j == 0) break;
        if ((points[j] - points[i]).norm() <= 1e-12)
            throw std::invalid_argument("PolyCurve: consecutive points coincide");
    }
}

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double t = (p - a).dot(ab) / ab.squaredNorm();
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 as2(const Vec& v) { return Vec2(v[0], v[1]); }

} // namespace

int winding_number(const PolyCurve& c, const Vec2& p0) {
    c.validate();
    if (c.dim() != 2) throw std::invalid_argument("winding_number: plane curves only");
    const size_t n = c.points.size();
    const size_t segs = c.closed ? n : n - 1;

    for (size_t i = 0; i < segs; ++i) {
        if (point_segment_distance(p0, as2(c.points[i]), as2(c.points[(i + 1) % n])) < 1e-9)
            throw std::invalid_argument("winding_number: base point lies on the curve");
    }
    double total = 0.0;
    for (size_t i = 0; i < segs; ++i) {
        Vec2 a = as2(c.points[i]) - p0;
        Vec2 b = as2(c.points[(i + 1) % n]) - p0;
        total += std::atan2(cross2(a, b), a.dot(b));
    }
    double w = total / (2.0 * M_PI);
    long r = std::lround(w);
    if (std::abs(w - r) > 1e-6)
        throw std::runtime_error("winding_number: angle sum not within 1e-6 of an integer");
    return static_cast<int>(r);
}

RotationInvariants rotation_invariants(const PolyCurve& c) {
    c.validate();
    if (c.dim() != 2) throw std::invalid_argument("rotation_invariants: plane curves only");
    if (!c.closed) throw std::invalid_argument("rotation_invariants: closed curves only");
    const size_t n = c.points.size();

    std::vector<Vec2> edge(n);
    for (size_t i = 0; i < n; ++i) edge[i] = as2(c.points[(i + 1) % n]) - as2(c.points[i]);

    double turning = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec2& d0 = edge[(i + n - 1) % n];
        const Vec2& d1 = edge[i];
        double cr = cross2(d0, d1);
        double dt = d0.dot(d1);
        if (std::abs(cr) < 1e-12 * d0.norm() * d1.norm() && dt < 0)
            throw std::runtime_error("rotation_invariants: cusp (anti-parallel edges)");
        turning += std::atan2(cr, dt);
    }
    double w = turning / (2.0 * M_PI);
    long r = std::lround(w);
    if (std::abs(turning - 2.0 * M_PI * r) > 1e-6)
        throw std::runtime_error("rotation_invariants: turning not within 1e-6 of 2 pi k");
    return {static_cast<int>(r), turning};
}

SignedAreaResult signed_area(const PolyCurve& c) {
    c.validate();
    if (c.dim() != 2) throw std::invalid_argument("signed_area: plane curves only");
    if (!c.closed) throw std::invalid_argument("signed_area: closed curves only");
    const size_t n = c.points.size();

    double area = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = as2(c.points[i]);
        const Vec2 b = as2(c.points[(i + 1) % n]);
        area += cross2(a, b);
    }
    area *= 0.5;

    // Meister decomposition on a refining grid: sum W(c, cell center) * cell
    // area over cells clear of the curve; the near-curve band is the residual.
    Vec2 lo(std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
    Vec2 hi = -lo;
    for (const Vec& p : c.points) {
        lo = lo.cwiseMin(as2(p));
        hi = hi.cwiseMax(as2(p));
    }
    Vec2 span = hi - lo;
    double residual = std::abs(area);
    for (int grid = 64; grid <= 512; grid *= 2) {
        double hx = span.x() / grid, hy = span.y() / grid;
        double diag = std::hypot(hx, hy);
        double cell_area = hx * hy;
        double sum = 0.0;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                Vec2 center(lo.x() + (i + 0.5) * hx, lo.y() + (j + 0.5) * hy);
                double dist = std::numeric_limits<double>::max();
                for (size_t k = 0; k < n; ++k) {
                    dist = std::min(dist, point_segment_distance(center, as2(c.points[k]),
                                                                 as2(c.points[(k + 1) % n])));
                    if (dist < diag) break;
                }
                if (dist < diag) continue; // excluded band, bounded into the residual
                sum += winding_number(c, center) * cell_area;
            }
        residual = std::abs(area - sum);
    }
    return {area, residual};
}

namespace {

// Proper-crossing test; returns intersection point through `out`.
bool proper_intersection(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, Vec2& out) {
    Vec2 r = b - a, s = d - c;
    double rxs = cross2(r, s);
    double scale = std::max({r.norm() * s.norm(), 1e-30});
    if (std::abs(rxs) < 1e-12 * scale) return false; // parallel/collinear handled by caller
    double t = cross2(c - a, s) / rxs;
    double u = cross2(c - a, r) / rxs;
    const double eps = 1e-9;
    if (t <= eps || t >= 1 - eps || u <= eps || u >= 1 - eps) return false;
    out = a + t * r;
    return true;
}

// Detect a touch/overlap that the proper-crossing test cannot classify.
bool suspicious_contact(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    Vec2 r = b - a, s = d - c;
    double rxs = cross2(r, s);
    double scale = std::max({r.norm() * s.norm(), 1e-30});
    if (std::abs(rxs) >= 1e-12 * scale) {
        double t = cross2(c - a, s) / rxs;
        double u = cross2(c - a, r) / rxs;
        const double eps = 1e-9;
        bool near_t = (std::abs(t) <= eps || std::abs(t - 1) <= eps) && u > -eps && u < 1 + eps;
        bool near_u = (std::abs(u) <= eps || std::abs(u - 1) <= eps) && t > -eps && t < 1 + eps;
        return near_t || near_u;
    }
    // parallel: overlap check
    if (std::abs(cross2(c - a, r)) > 1e-12 * std::max(1.0, r.norm() * (c - a).norm())) return false;
    double r2 = r.squaredNorm();
    double t0 = (c - a).dot(r) / r2, t1 = (d - a).dot(r) / r2;
    if (t0 > t1) std::swap(t0, t1);
    return t1 > 1e-9 && t0 < 1 - 1e-9;
}

} // namespace

SelfIntersections self_intersections(const PolyCurve& c) {
    c.validate();
    if (c.dim() != 2) throw std::invalid_argument("self_intersections: plane curves only");
    if (!c.closed) throw std::invalid_argument("self_intersections: closed curves only");
    const size_t n = c.points.size();

    SelfIntersections out{0, {}};
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            // skip adjacent segments (shared endpoint)
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            Vec2 a = as2(c.points[i]), b = as2(c.points[(i + 1) % n]);
            Vec2 p = as2(c.points[j]), q = as2(c.points[(j + 1) % n]);
            if (suspicious_contact(a, b, p, q))
                throw std::runtime_error("self_intersections: non-generic configuration "
                                         "(touching or overlapping segments)");
            Vec2 x;
            if (proper_intersection(a, b, p, q, x)) {
                out.points.push_back(x);
                ++out.count;
            }
        }
    }
    // no three segments concurrent: crossing points must be distinct
    for (size_t i = 0; i < out.points.size(); ++i)
        for (size_t j = i + 1; j < out.points.size(); ++j)
            if ((out.points[i] - out.points[j]).norm() < 1e-9)
                throw std::runtime_error(
                    "self_intersections: non-generic configuration (concurrent segments)");
    return out;
}

namespace {

double linking_sum(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    const size_t na = a.size(), nb = b.size();
    double total = 0.0;
    for (size_t i = 0; i < na; ++i) {
        Vec3 da = a[(i + 1) % na] - a[i];
        Vec3 ma = 0.5 * (a[(i + 1) % na] + a[i]);
        for (size_t j = 0; j < nb; ++j) {
            Vec3 db = b[(j + 1) % nb] - b[j];
            Vec3 mb = 0.5 * (b[(j + 1) % nb] + b[j]);
            Vec3 r = mb - ma;
            double rn = r.norm();
            total += r.dot(da.cross(db)) / (rn * rn * rn);
        }
    }
    return total;
}

std::vector<Vec3> halve(const std::vector<Vec3>& pts) {
    std::vector<Vec3> out;
    out.reserve(2 * pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        out.push_back(pts[i]);
        out.push_back(0.5 * (pts[i] + pts[(i + 1) % pts.size()]));
    }
    return out;
}

} // namespace

LinkingResult linking_number(const PolyCurve& c1, const PolyCurve& c2) {
    c1.validate();
    c2.validate();
    if (c1.dim() != 3 || c2.dim() != 3)
        throw std::invalid_argument("linking_number: space curves only");
    if (!c1.closed || !c2.closed)
        throw std::invalid_argument("linking_number: both curves must be closed");

    std::vector<Vec3> a, b;
    for (const Vec& p : c1.points) a.emplace_back(p[0], p[1], p[2]);
    for (const Vec& p : c2.points) b.emplace_back(p[0], p[1], p[2]);

    // order the loops canonically so swapped arguments run the identical sum
    bool swap_order = b.size() < a.size() ||
                      (b.size() == a.size() &&
                       std::lexicographical_compare(b[0].data(), b[0].data() + 3, a[0].data(),
                                                    a[0].data() + 3));
    if (swap_order) std::swap(a, b);

    double min_dist = std::numeric_limits<double>::max();
    for (const Vec3& p : a)
        for (const Vec3& q : b) min_dist = std::min(min_dist, (p - q).norm());
    if (min_dist <= 1e-6)
        throw std::runtime_error("linking_number: curves too close for reliable quadrature");

    const double fourpi = 4.0 * M_PI;
    double raw = linking_sum(a, b);
    long m = std::lround(raw / fourpi);
    while (a.size() * b.size() * 4 <= (1u << 22)) {
        a = halve(a);
        b = halve(b);
        double raw2 = linking_sum(a, b);
        long m2 = std::lround(raw2 / fourpi);
        bool settled = (m2 == m) && std::abs(raw2 / fourpi - m2) < 1e-2;
        raw = raw2;
        m = m2;
        if (settled) break;
    }
    if (std::abs(raw / fourpi - m) >= 1e-2)
        throw std::runtime_error("linking_number: quadrature did not settle near a multiple of 4 pi");
    return {static_cast<int>(m), raw};
}

PolyCurve figure_eight(int samples) {
    PolyCurve c;
    c.closed = true;
    c.points.reserve(samples);
    // half-step offset keeps the double point at the parameter origin off the
    // sample set, so the crossing falls in segment interiors
    for (int i = 0; i < samples; ++i) {
        double t = 2.0 * M_PI * (i + 0.5) / samples;
        Vec p(2);
        p << std::sin(2 * t), std::sin(t);
        c.points.push_back(p);
    }
    return c;
}

PolyCurve circle(double radius, int samples, bool counterclockwise, const Vec2& center) {
    PolyCurve c;
    c.closed = true;
    c.points.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = 2.0 * M_PI * i / samples;
        if (!counterclockwise) t = -t;
        Vec p(2);
        p << center.x() + radius * std::cos(t), center.y() + radius * std::sin(t);
        c.points.push_back(p);
    }
    return c;
}

} // namespace diffgeo
