#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace grushin {

enum class DomainKind { Rectangle, Ellipse };

// Bounded planar domain for the degenerate Dirichlet problem.  Domains must
// intersect the degeneracy line {x=0}; construction rejects anything else.
struct Domain {
    DomainKind kind = DomainKind::Rectangle;

    // Rectangle (xmin,xmax) x (ymin,ymax)
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    // Ellipse ((x-cx)/a)^2 + ((y-cy)/b)^2 < 1
    double cx = 0, cy = 0, a = 0, b = 0;

    static Domain rectangle(double xmin, double xmax, double ymin, double ymax);
    static Domain ellipse(double cx, double cy, double a, double b);

    // Level-set value: negative inside, zero on the boundary, positive
    // outside.  For the ellipse this is exactly ((x-cx)/a)^2+((y-cy)/b)^2-1.
    double signed_inside(double x, double y) const;
    bool contains(double x, double y) const { return signed_inside(x, y) < 0.0; }
    bool contains_origin() const { return contains(0.0, 0.0); }

    void bounding_box(double& bx0, double& bx1, double& by0, double& by1) const;

    // Exact for the rectangle; high-order periodic quadrature for the ellipse.
    double perimeter() const;

    nlohmann::json to_json() const;
    static Domain from_json(const nlohmann::json& j);
};

// One point of a boundary quadrature rule: position, unit outward normal,
// arc-length weight.
struct BoundarySample {
    double x = 0, y = 0;
    double nu_x = 0, nu_y = 0;
    double weight = 0;
};

// Boundary point at arc-length parameter t in [0,1), counterclockwise from
// the parametrization origin ((xmin,ymin) corner, or angle 0 on the ellipse).
BoundarySample boundary_point(const Domain& dom, double t);

// n >= 8 samples traversing the boundary once, counterclockwise.  Weights are
// positive; on each rectangle edge they sum exactly to the edge length.
std::vector<BoundarySample> boundary_quadrature(const Domain& dom, int n);

struct StarshapeResult {
    bool is_starshaped = false;
    double min_value = 0; // min over samples of x*nu_x + (1+k)*y*nu_y
};

// G_k-starshape test: the origin must lie inside and the boundary functional
// x*nu_x + (1+k)*y*nu_y must be nonnegative (within 1e-12) at every sample.
StarshapeResult starshape_check(const Domain& dom, double k,
                                const std::vector<BoundarySample>& samples);

} // namespace grushin
