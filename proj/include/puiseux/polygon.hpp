#pragma once

#include "puiseux/equation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace puiseux {

struct PolygonSide {
    Exponent coslope;  // (alpha_lo - alpha_hi) / (height_hi - height_lo)
    CloudPoint hi;     // higher height, smaller abscissa
    CloudPoint lo;
};

/// Lower-left boundary of the cloud fattened by rightward half-lines.
/// Vertices run from the highest point down to the lowest; co-slopes of the
/// sides strictly increase.  Equal-abscissa ties keep the lower point.
struct NewtonPolygon {
    std::vector<CloudPoint> hull;
    std::vector<PolygonSide> sides;
    Cloud cloud;  // retained for exact element queries
};

NewtonPolygon build_polygon(const Ctx& ctx, const Cloud& cloud);  // throws EmptyCloud

/// alpha0: the minimum of alpha + mu*r over the polygon (hull vertices).
Exponent supporting_line(const Ctx& ctx, const NewtonPolygon& poly, const Exponent& mu);

/// Extreme cloud points attaining the supporting line of co-slope mu.
ElementRef element_of_coslope(const Ctx& ctx, const NewtonPolygon& poly, const Exponent& mu);

/// All sides with co-slope strictly greater than nu_prev (all sides when
/// nu_prev is empty), ascending.
std::vector<PolygonSide> sides_above(const Ctx& ctx, const NewtonPolygon& poly,
                                     const std::optional<Exponent>& nu_prev);

struct PolygonRenderOptions {
    std::vector<Exponent> support_lines;  // draw L_mu for these co-slopes
    unsigned width = 520, height = 360;
};

std::string polygon_svg(const Ctx& ctx, const NewtonPolygon& poly,
                        const PolygonRenderOptions& opts);
std::string polygon_ascii(const Ctx& ctx, const NewtonPolygon& poly);

}  // namespace puiseux
