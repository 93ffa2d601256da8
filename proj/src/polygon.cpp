#include "puiseux/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace puiseux {

static Exponent coslope_between(const CloudPoint& hi, const CloudPoint& lo) {
    // mu = (alpha_lo - alpha_hi) / (r_hi - r_lo), staying in the exponent group
    return (lo.alpha - hi.alpha).scaled(Rat(1, hi.height - lo.height));
}

NewtonPolygon build_polygon(const Ctx& ctx, const Cloud& cloud) {
    if (cloud.empty()) throw EmptyCloud("polygon of an empty cloud");
    // minimal abscissa per height; cloud entries are sorted by ascending
    // abscissa within each height block
    std::map<int, Exponent, std::greater<int>> min_alpha;
    for (const auto& e : cloud.entries)
        if (!min_alpha.count(e.pt.height)) min_alpha.emplace(e.pt.height, e.pt.alpha);

    NewtonPolygon poly;
    poly.cloud = cloud;
    auto& hull = poly.hull;
    for (const auto& [h, alpha] : min_alpha) {
        CloudPoint p{alpha, h};
        // strictly increasing abscissa going down; ties keep the lower point
        while (!hull.empty() &&
               exponent_compare(p.alpha, hull.back().alpha, ctx) != Cmp::Greater)
            hull.pop_back();
        // co-slopes must strictly increase
        while (hull.size() >= 2) {
            const CloudPoint& a = hull[hull.size() - 2];
            const CloudPoint& b = hull.back();
            Exponent c1 = coslope_between(a, b);
            Exponent c2 = coslope_between(b, p);
            if (exponent_compare(c1, c2, ctx) != Cmp::Less)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    for (size_t i = 0; i + 1 < hull.size(); ++i)
        poly.sides.push_back({coslope_between(hull[i], hull[i + 1]), hull[i], hull[i + 1]});
    return poly;
}

Exponent supporting_line(const Ctx& ctx, const NewtonPolygon& poly, const Exponent& mu) {
    std::optional<Exponent> best;
    for (const auto& v : poly.hull) {
        Exponent val = v.alpha + mu.scaled(Rat(v.height));
        if (!best || exp_less(val, *best, ctx)) best = val;
    }
    if (!best) throw EmptyCloud("supporting line of an empty polygon");
    return *best;
}

ElementRef element_of_coslope(const Ctx& ctx, const NewtonPolygon& poly, const Exponent& mu) {
    // exact scan over the cloud: correct even for vertical elements
    std::optional<Exponent> best;
    std::optional<CloudPoint> bot, top;
    for (const auto& e : poly.cloud.entries) {
        Exponent val = e.pt.alpha + mu.scaled(Rat(e.pt.height));
        Cmp c = best ? exponent_compare(val, *best, ctx) : Cmp::Less;
        if (c == Cmp::Less) {
            best = val;
            bot = top = e.pt;
        } else if (c == Cmp::Equal) {
            if (e.pt.height < bot->height) bot = e.pt;
            if (e.pt.height > top->height) top = e.pt;
        }
    }
    if (!bot) throw EmptyCloud("element of an empty cloud");
    return ElementRef{*bot, *top};
}

std::vector<PolygonSide> sides_above(const Ctx& ctx, const NewtonPolygon& poly,
                                     const std::optional<Exponent>& nu_prev) {
    std::vector<PolygonSide> out;
    for (const auto& s : poly.sides)
        if (!nu_prev || exp_less(*nu_prev, s.coslope, ctx)) out.push_back(s);
    return out;
}

// ---- rendering ----

static double approx(const Ctx& ctx, const Exponent& e) {
    RatInterval v = exponent_enclosure(e, *ctx.syms, 32);
    return static_cast<double>(v.mid());
}

static std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string polygon_svg(const Ctx& ctx, const NewtonPolygon& poly,
                        const PolygonRenderOptions& opts) {
    double min_a = 0, max_a = 1;
    int max_h = 1;
    for (const auto& e : poly.cloud.entries) {
        double a = approx(ctx, e.pt.alpha);
        min_a = std::min(min_a, a);
        max_a = std::max(max_a, a + 0.5);
        max_h = std::max(max_h, e.pt.height);
    }
    max_a += 1.0;
    double margin = 40;
    double sx = (opts.width - 2 * margin) / (max_a - min_a);
    double sy = (opts.height - 2 * margin) / (max_h + 0.8);
    auto X = [&](double a) { return margin + (a - min_a) * sx; };
    auto Y = [&](double r) { return opts.height - margin - r * sy; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << opts.height << "\" viewBox=\"0 0 " << opts.width << " " << opts.height << "\">\n";

    // shaded region: down the hull, then along the bottom half-line
    if (!poly.hull.empty()) {
        out << "<polygon fill=\"#e0e0e0\" stroke=\"none\" points=\"";
        double top_a = approx(ctx, poly.hull.front().alpha);
        out << fmt2(X(top_a)) << "," << fmt2(Y(max_h + 0.8)) << " ";
        for (const auto& v : poly.hull)
            out << fmt2(X(approx(ctx, v.alpha))) << "," << fmt2(Y(v.height)) << " ";
        out << fmt2(X(max_a)) << "," << fmt2(Y(poly.hull.back().height)) << " ";
        out << fmt2(X(max_a)) << "," << fmt2(Y(max_h + 0.8));
        out << "\"/>\n";
    }

    // axes
    out << "<line x1=\"" << fmt2(X(min_a)) << "\" y1=\"" << fmt2(Y(0)) << "\" x2=\""
        << fmt2(X(max_a)) << "\" y2=\"" << fmt2(Y(0))
        << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << fmt2(X(0)) << "\" y1=\"" << fmt2(Y(0)) << "\" x2=\"" << fmt2(X(0))
        << "\" y2=\"" << fmt2(Y(max_h + 0.8)) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";

    // supporting lines (dashed)
    for (const auto& mu : opts.support_lines) {
        Exponent alpha0 = supporting_line(ctx, poly, mu);
        double a0 = approx(ctx, alpha0);
        double m = approx(ctx, mu);
        // r = 0 -> alpha = a0 ; r = max_h + 0.5 -> alpha = a0 - m*r
        double r_hi = max_h + 0.5;
        out << "<line x1=\"" << fmt2(X(a0)) << "\" y1=\"" << fmt2(Y(0)) << "\" x2=\""
            << fmt2(X(a0 - m * r_hi)) << "\" y2=\"" << fmt2(Y(r_hi))
            << "\" stroke=\"#d62728\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
        out << "<text x=\"" << fmt2(X(a0) + 4) << "\" y=\"" << fmt2(Y(0) - 4)
            << "\" font-size=\"12\" fill=\"#d62728\">L_{"
            << exponent_render(mu, *ctx.syms) << "}</text>\n";
    }

    // sides
    for (const auto& s : poly.sides) {
        out << "<line x1=\"" << fmt2(X(approx(ctx, s.hi.alpha))) << "\" y1=\""
            << fmt2(Y(s.hi.height)) << "\" x2=\"" << fmt2(X(approx(ctx, s.lo.alpha)))
            << "\" y2=\"" << fmt2(Y(s.lo.height))
            << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
        double mx = (approx(ctx, s.hi.alpha) + approx(ctx, s.lo.alpha)) / 2;
        double my = (s.hi.height + s.lo.height) / 2.0;
        out << "<text x=\"" << fmt2(X(mx) + 6) << "\" y=\"" << fmt2(Y(my) - 6)
            << "\" font-size=\"12\" fill=\"#1f77b4\">E_{"
            << exponent_render(s.coslope, *ctx.syms) << "}</text>\n";
    }

    // cloud points (hollow) and hull vertices (filled)
    for (const auto& e : poly.cloud.entries)
        out << "<circle cx=\"" << fmt2(X(approx(ctx, e.pt.alpha))) << "\" cy=\""
            << fmt2(Y(e.pt.height))
            << "\" r=\"3\" fill=\"#ffffff\" stroke=\"#555\" stroke-width=\"1\"/>\n";
    for (const auto& v : poly.hull) {
        out << "<circle cx=\"" << fmt2(X(approx(ctx, v.alpha))) << "\" cy=\""
            << fmt2(Y(v.height)) << "\" r=\"4\" fill=\"#000\"/>\n";
        out << "<text x=\"" << fmt2(X(approx(ctx, v.alpha)) + 5) << "\" y=\""
            << fmt2(Y(v.height) + 14) << "\" font-size=\"11\" fill=\"#000\">("
            << exponent_render(v.alpha, *ctx.syms) << "," << v.height << ")</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string polygon_ascii(const Ctx& ctx, const NewtonPolygon& poly) {
    int max_h = 0;
    double max_a = 1;
    for (const auto& e : poly.cloud.entries) {
        max_h = std::max(max_h, e.pt.height);
        max_a = std::max(max_a, approx(ctx, e.pt.alpha));
    }
    int cols = std::min(72, static_cast<int>(std::lround(max_a * 4)) + 8);
    std::ostringstream out;
    for (int r = max_h; r >= 0; --r) {
        std::string row(static_cast<size_t>(cols), ' ');
        for (const auto& e : poly.cloud.entries) {
            if (e.pt.height != r) continue;
            int c = static_cast<int>(std::lround(approx(ctx, e.pt.alpha) * 4));
            if (c >= 0 && c < cols) row[static_cast<size_t>(c)] = '.';
        }
        for (const auto& v : poly.hull) {
            if (v.height != r) continue;
            int c = static_cast<int>(std::lround(approx(ctx, v.alpha) * 4));
            if (c >= 0 && c < cols) row[static_cast<size_t>(c)] = 'o';
        }
        char hdr[16];
        std::snprintf(hdr, sizeof hdr, "%2d |", r);
        out << hdr << row << "\n";
    }
    out << "   +" << std::string(static_cast<size_t>(cols), '-') << "\n";
    out << "hull:";
    for (const auto& v : poly.hull)
        out << " (" << exponent_render(v.alpha, *ctx.syms) << "," << v.height << ")";
    out << "\nsides:";
    for (const auto& s : poly.sides) out << " " << exponent_render(s.coslope, *ctx.syms);
    out << "\n";
    return out.str();
}

}  // namespace puiseux
