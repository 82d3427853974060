#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "triwell/hulls.hpp"
#include "triwell/jobs.hpp"

namespace triwell {

namespace {

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

struct Mapper {
    double min_x, min_y, scale, height, margin;

    std::string x(double vx) const { return fmt((vx - min_x) * scale + margin); }
    std::string y(double vy) const { return fmt(height - ((vy - min_y) * scale + margin)); }
};

struct Scene {
    std::string body;

    void line(const Vec2& a, const Vec2& b, const Mapper& m, const std::string& style) {
        body += "<line x1=\"" + m.x(a.x) + "\" y1=\"" + m.y(a.y) + "\" x2=\"" +
                m.x(b.x) + "\" y2=\"" + m.y(b.y) + "\" " + style + "/>\n";
    }
    void circle(const Vec2& c, double r, const Mapper& m, const std::string& style) {
        body += "<circle cx=\"" + m.x(c.x) + "\" cy=\"" + m.y(c.y) + "\" r=\"" +
                fmt(r) + "\" " + style + "/>\n";
    }
    void polygon(const std::vector<Vec2>& pts, const Mapper& m, const std::string& style) {
        body += "<polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body += " ";
            body += m.x(pts[i].x) + "," + m.y(pts[i].y);
        }
        body += "\" " + style + "/>\n";
    }
    void path(const std::vector<Vec2>& pts, const Mapper& m, const std::string& style) {
        if (pts.size() < 2) return;
        body += "<path d=\"M " + m.x(pts[0].x) + " " + m.y(pts[0].y);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            body += " L " + m.x(pts[i].x) + " " + m.y(pts[i].y);
        }
        body += "\" " + style + "/>\n";
    }
    void text(const Vec2& at, const Mapper& m, const std::string& label,
              const std::string& fill) {
        body += "<text x=\"" + m.x(at.x) + "\" y=\"" + m.y(at.y) +
                "\" font-family=\"monospace\" font-size=\"14\" fill=\"" + fill +
                "\">" + label + "</text>\n";
    }
};

}  // namespace

std::string renderSVG(const JobSpec& job) {
    const double tol = job.det_tol.value_or(-1.0);
    const WellClass cls = classify(job.wells, tol);
    if (cls.kind == WellKind::DegenerateSpan) {
        throw Error(ErrorCode::DegeneratePlane, "plot: wells do not span a plane");
    }

    const bool has_u0 =
        cls.kind == WellKind::TypeOne || cls.kind == WellKind::TypeTwo;
    std::array<Sym2, 3> w = permuted(job.wells, cls);
    Sym2 origin = job.wells[0];
    if (has_u0) origin = computeU0(w, cls.kind).u0;

    // Plane coordinates: the rank-one frame when the normal is
    // indefinite, otherwise any orthonormal basis of the plane.
    bool have_frame = false;
    ConeFrame frame;
    try {
        frame = frameFromNormal(affinePlane(job.wells));
        have_frame = true;
    } catch (const Error&) {
    }
    std::array<double, 3> b1{}, b2{};
    if (!have_frame) {
        auto d2 = toR3(job.wells[1] - job.wells[0]);
        auto d3 = toR3(job.wells[2] - job.wells[0]);
        double len = std::sqrt(d2[0] * d2[0] + d2[1] * d2[1] + d2[2] * d2[2]);
        for (int i = 0; i < 3; ++i) b1[i] = d2[i] / len;
        double proj = d3[0] * b1[0] + d3[1] * b1[1] + d3[2] * b1[2];
        for (int i = 0; i < 3; ++i) d3[i] -= proj * b1[i];
        len = std::sqrt(d3[0] * d3[0] + d3[1] * d3[1] + d3[2] * d3[2]);
        for (int i = 0; i < 3; ++i) b2[i] = d3[i] / len;
    }
    auto xy = [&](const Sym2& m) -> Vec2 {
        if (have_frame) {
            const PlaneCoords c = toPlaneCoords(m, origin, frame);
            return {c.xi, c.eta};
        }
        const auto d = toR3(m - origin);
        return {d[0] * b1[0] + d[1] * b1[1] + d[2] * b1[2],
                d[0] * b2[0] + d[1] * b2[1] + d[2] * b2[2]};
    };

    std::array<Vec2, 3> wxy{xy(job.wells[0]), xy(job.wells[1]), xy(job.wells[2])};
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const Vec2& p : wxy) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double pad_x = 0.2 * std::max(max_x - min_x, 1e-6);
    const double pad_y = 0.2 * std::max(max_y - min_y, 1e-6);
    min_x -= pad_x;
    max_x += pad_x;
    min_y -= pad_y;
    max_y += pad_y;

    const double margin = 20.0;
    const double span = std::max(max_x - min_x, max_y - min_y);
    const double scale = 600.0 / span;
    const double width = (max_x - min_x) * scale + 2.0 * margin;
    const double height = (max_y - min_y) * scale + 2.0 * margin;
    const Mapper m{min_x, min_y, scale, height, margin};

    Scene scene;

    // Rank-one lines through U0: the coordinate axes of the frame.
    if (has_u0 && have_frame) {
        const std::string gray = "stroke=\"#999999\" stroke-width=\"1\"";
        scene.line({min_x, 0.0}, {max_x, 0.0}, m, gray);
        scene.line({0.0, min_y}, {0.0, max_y}, m, gray);
    }

    // Convex hull outline: solid for compatible pairs, dashed otherwise.
    const std::array<std::pair<int, int>, 3> edges{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [i, k] : edges) {
        const Compat c = compat(job.wells[i], job.wells[k]);
        std::string style = "stroke=\"#444444\" stroke-width=\"1.5\" fill=\"none\"";
        if (c.kind == CompatKind::Incompatible) {
            style += " stroke-dasharray=\"6,4\"";
        }
        scene.line(wxy[i], wxy[k], m, style);
    }

    // Lamination hull in blue.
    const QcHull qc = quasiconvexHull(job.wells);
    const std::string blue_fill = "fill=\"#4477cc\" fill-opacity=\"0.45\" stroke=\"none\"";
    const std::string blue_stroke = "stroke=\"#2255bb\" stroke-width=\"3\"";
    for (const auto& piece : qc.inner.pieces) {
        if (const auto* p = std::get_if<PointPiece>(&piece)) {
            scene.circle(xy(p->p), 5.0, m, "fill=\"#2255bb\"");
        } else if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
            scene.line(xy(s->a), xy(s->b), m, blue_stroke);
        } else if (const auto* t = std::get_if<TrianglePiece>(&piece)) {
            scene.polygon({xy(t->a), xy(t->b), xy(t->c)}, m, blue_fill);
        }
    }

    // Bound curve: bisection on hbar along rays from U0, 256 samples.
    if (qc.status == HullStatus::BoundOnly) {
        const OuterBound& bound = *qc.bound;
        auto hbarAt = [&](const Vec2& p) {
            const Sym2 v = p.x * frame.ea + p.y * frame.en;
            return hbar(v, bound.v[0], bound.v[1], bound.c);
        };
        // Exit radius of a ray from U0 (frame origin) through the hull
        // triangle, from the three edge crossings.
        auto exitRadius = [&](const Vec2& dir) {
            double r_exit = 1e300;
            for (auto [i, k] : edges) {
                const Vec2 p = wxy[i];
                const Vec2 q = wxy[k];
                const Vec2 e{q.x - p.x, q.y - p.y};
                const double den = cross(e, dir);
                if (std::abs(den) < 1e-14) continue;
                const double r = cross(e, Vec2{p.x, p.y}) / den;
                if (r <= 0.0) continue;
                // crossing point must lie within the edge
                const double s = (dir.x * r - p.x) * e.x + (dir.y * r - p.y) * e.y;
                if (s < -1e-9 || s > dot(e, e) + 1e-9) continue;
                r_exit = std::min(r_exit, r);
            }
            return r_exit;
        };
        std::vector<Vec2> arc;
        bool prev_found = false;
        for (int i = 0; i <= 256; ++i) {
            const double angle = 2.0 * M_PI * i / 256.0;
            const Vec2 dir{std::cos(angle), std::sin(angle)};
            const double r_exit = exitRadius(dir);
            bool found = false;
            Vec2 hit{};
            if (r_exit < 1e299) {
                double lo = 1e-9 * r_exit;
                double hi = r_exit;
                double flo = hbarAt({dir.x * lo, dir.y * lo});
                double fhi = hbarAt({dir.x * hi, dir.y * hi});
                if ((flo < 0.0) != (fhi < 0.0)) {
                    for (int it = 0; it < 60; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        const double fm = hbarAt({dir.x * mid, dir.y * mid});
                        if ((fm < 0.0) == (flo < 0.0)) {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                            fhi = fm;
                        }
                    }
                    const double r = 0.5 * (lo + hi);
                    hit = {dir.x * r, dir.y * r};
                    found = true;
                }
            }
            if (found) {
                arc.push_back(hit);
            } else if (prev_found) {
                scene.path(arc, m, "stroke=\"#2255bb\" stroke-width=\"2\" fill=\"none\"");
                arc.clear();
            }
            prev_found = found;
        }
        scene.path(arc, m, "stroke=\"#2255bb\" stroke-width=\"2\" fill=\"none\"");
    }

    // Wells and U0.
    for (int i = 0; i < 3; ++i) {
        scene.circle(wxy[i], 4.0, m, "fill=\"#000000\"");
        scene.text({wxy[i].x, wxy[i].y}, m, "U" + std::to_string(i + 1), "#000000");
    }
    if (has_u0) {
        scene.circle(xy(origin), 4.0, m, "fill=\"#cc2222\"");
        scene.text(xy(origin), m, "U0", "#cc2222");
    }

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                      fmt(width) + "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " +
                      fmt(width) + " " + fmt(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg += scene.body;
    svg += "</svg>\n";
    return svg;
}

}  // namespace triwell
