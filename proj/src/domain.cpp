#include "grushin/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "grushin/errors.hpp"

namespace grushin {

Domain Domain::rectangle(double xmin, double xmax, double ymin, double ymax) {
    if (!(xmin < xmax) || !(ymin < ymax))
        throw ConfigError("domain: rectangle requires xmin<xmax and ymin<ymax");
    if (!(xmin < 0.0 && 0.0 < xmax))
        throw ConfigError("domain: rectangle must intersect the line {x=0}");
    Domain d;
    d.kind = DomainKind::Rectangle;
    d.xmin = xmin; d.xmax = xmax; d.ymin = ymin; d.ymax = ymax;
    return d;
}

Domain Domain::ellipse(double cx, double cy, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw ConfigError("domain: ellipse requires a>0 and b>0");
    if (!(std::abs(cx) < a))
        throw ConfigError("domain: ellipse must intersect the line {x=0}");
    Domain d;
    d.kind = DomainKind::Ellipse;
    d.cx = cx; d.cy = cy; d.a = a; d.b = b;
    return d;
}

double Domain::signed_inside(double x, double y) const {
    if (kind == DomainKind::Rectangle) {
        return std::max({xmin - x, x - xmax, ymin - y, y - ymax});
    }
    double u = (x - cx) / a;
    double v = (y - cy) / b;
    return u * u + v * v - 1.0;
}

void Domain::bounding_box(double& bx0, double& bx1, double& by0, double& by1) const {
    if (kind == DomainKind::Rectangle) {
        bx0 = xmin; bx1 = xmax; by0 = ymin; by1 = ymax;
    } else {
        bx0 = cx - a; bx1 = cx + a; by0 = cy - b; by1 = cy + b;
    }
}

double Domain::perimeter() const {
    if (kind == DomainKind::Rectangle)
        return 2.0 * ((xmax - xmin) + (ymax - ymin));
    // Midpoint rule in the angle; spectrally accurate for the smooth
    // periodic arc-length density.
    const int m = 1 << 16;
    const double dt = 2.0 * std::numbers::pi / m;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
        double th = (i + 0.5) * dt;
        double gx = a * std::sin(th), gy = b * std::cos(th);
        s += std::sqrt(gx * gx + gy * gy) * dt;
    }
    return s;
}

nlohmann::json Domain::to_json() const {
    if (kind == DomainKind::Rectangle)
        return {{"kind", "rect"}, {"xmin", xmin}, {"xmax", xmax},
                {"ymin", ymin}, {"ymax", ymax}};
    return {{"kind", "ellipse"}, {"cx", cx}, {"cy", cy}, {"a", a}, {"b", b}};
}

Domain Domain::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("domain: expected object with a \"kind\" key");
    std::string kind = j.at("kind").get<std::string>();
    auto check_keys = [&](std::initializer_list<const char*> allowed) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool ok = it.key() == "kind";
            for (const char* k : allowed) ok = ok || it.key() == k;
            if (!ok) throw ConfigError("domain: unknown key \"" + it.key() + "\"");
        }
    };
    if (kind == "rect") {
        check_keys({"xmin", "xmax", "ymin", "ymax"});
        return rectangle(j.at("xmin").get<double>(), j.at("xmax").get<double>(),
                         j.at("ymin").get<double>(), j.at("ymax").get<double>());
    }
    if (kind == "ellipse") {
        check_keys({"cx", "cy", "a", "b"});
        return ellipse(j.at("cx").get<double>(), j.at("cy").get<double>(),
                       j.at("a").get<double>(), j.at("b").get<double>());
    }
    throw ConfigError("domain: unknown kind \"" + kind + "\" (expected rect|ellipse)");
}

namespace {

// Rectangle boundary position by arc length s in [0,P), ccw from (xmin,ymin).
BoundarySample rect_point(const Domain& d, double s) {
    double lx = d.xmax - d.xmin, ly = d.ymax - d.ymin;
    BoundarySample bs;
    if (s < lx) {                       // bottom, left to right
        bs.x = d.xmin + s; bs.y = d.ymin; bs.nu_x = 0; bs.nu_y = -1;
    } else if (s < lx + ly) {           // right, bottom to top
        bs.x = d.xmax; bs.y = d.ymin + (s - lx); bs.nu_x = 1; bs.nu_y = 0;
    } else if (s < 2 * lx + ly) {       // top, right to left
        bs.x = d.xmax - (s - lx - ly); bs.y = d.ymax; bs.nu_x = 0; bs.nu_y = 1;
    } else {                            // left, top to bottom
        bs.x = d.xmin; bs.y = d.ymax - (s - 2 * lx - ly); bs.nu_x = -1; bs.nu_y = 0;
    }
    return bs;
}

BoundarySample ellipse_point(const Domain& d, double theta) {
    BoundarySample bs;
    double c = std::cos(theta), s = std::sin(theta);
    bs.x = d.cx + d.a * c;
    bs.y = d.cy + d.b * s;
    // outward normal along the level-set gradient (c/a, s/b)
    double gx = c / d.a, gy = s / d.b;
    double g = std::hypot(gx, gy);
    bs.nu_x = gx / g;
    bs.nu_y = gy / g;
    return bs;
}

} // namespace

BoundarySample boundary_point(const Domain& dom, double t) {
    t -= std::floor(t);
    if (dom.kind == DomainKind::Rectangle)
        return rect_point(dom, t * dom.perimeter());
    return ellipse_point(dom, t * 2.0 * std::numbers::pi);
}

std::vector<BoundarySample> boundary_quadrature(const Domain& dom, int n) {
    if (n < 8)
        throw ConfigError("boundary_quadrature: need n >= 8 samples");

    std::vector<BoundarySample> out;
    out.reserve(n);

    if (dom.kind == DomainKind::Rectangle) {
        double lx = dom.xmax - dom.xmin, ly = dom.ymax - dom.ymin;
        double per = 2 * (lx + ly);
        double len[4] = {lx, ly, lx, ly};
        // Largest-remainder apportionment of n samples over the four edges.
        int m[4]; double rem[4]; int total = 0;
        for (int e = 0; e < 4; ++e) {
            double share = n * len[e] / per;
            m[e] = std::max(1, (int)std::floor(share));
            rem[e] = share - m[e];
            total += m[e];
        }
        while (total < n) {
            int best = 0;
            for (int e = 1; e < 4; ++e) if (rem[e] > rem[best]) best = e;
            ++m[best]; rem[best] -= 1.0; ++total;
        }
        double s_edge = 0.0;
        for (int e = 0; e < 4; ++e) {
            double w = len[e] / m[e];
            for (int i = 0; i < m[e]; ++i) {
                BoundarySample bs = rect_point(dom, s_edge + (i + 0.5) * w);
                bs.weight = w;
                out.push_back(bs);
            }
            s_edge += len[e];
        }
        // Let the final weight close the perimeter so a sequential sum over
        // all samples reproduces it exactly (Sterbenz subtraction).
        double run = 0.0;
        for (std::size_t i = 0; i + 1 < out.size(); ++i) run += out[i].weight;
        out.back().weight = per - run;
        return out;
    }

    // Ellipse: midpoint rule in the angle with the arc-length density.
    const double dt = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) {
        double th = (i + 0.5) * dt;
        BoundarySample bs = ellipse_point(dom, th);
        double gx = dom.a * std::sin(th), gy = dom.b * std::cos(th);
        bs.weight = std::hypot(gx, gy) * dt;
        out.push_back(bs);
    }
    return out;
}

StarshapeResult starshape_check(const Domain& dom, double k,
                                const std::vector<BoundarySample>& samples) {
    StarshapeResult r;
    double mn = std::numeric_limits<double>::infinity();
    for (const BoundarySample& s : samples)
        mn = std::min(mn, s.x * s.nu_x + (1.0 + k) * s.y * s.nu_y);
    r.min_value = mn;
    r.is_starshaped = dom.contains_origin() && mn >= -1e-12;
    return r;
}

} // namespace grushin
