#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homstat/duality.hpp"
#include "homstat/errors.hpp"
#include "homstat/planar.hpp"
#include "homstat/rational.hpp"

namespace homstat {

struct SvgOptions {
    unsigned canvas = 800;             ///< width and height in px
    Rational margin = Rational(1, 20); ///< fraction of the larger bounding-box side
};

struct SvgSegment {
    Point2 a;
    Point2 b;
    std::string id;
    std::optional<Rational> stress;
    std::optional<Point2> primal; ///< primal edge vector, for dual segments
};

namespace detail {

inline std::string stress_class(const std::optional<Rational>& s) {
    if (!s)
        return "member";
    return *s > 0 ? "tension" : *s < 0 ? "compression" : "zero";
}

/**
 * Segments and dots in a square canvas fitted to their bounding box. SVG y
 * grows downward, so drawn y is the negated model y. Geometry is rounded
 * to six places; exact values go in data-* attributes.
 */
inline std::string render_segments(const std::vector<SvgSegment>& segments,
                                   const std::vector<Point2>& dots, const std::string& kind,
                                   const SvgOptions& opt) {
    std::vector<Point2> pts = dots;
    for (const auto& s : segments) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    if (pts.empty())
        throw InvalidInput("cannot render an empty diagram");
    Rational xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    Rational side = std::max(xmax - xmin, ymax - ymin);
    const bool degenerate = side == 0;
    if (degenerate)
        side = 1;
    const Rational pad = side * opt.margin;
    const Rational vx = xmin - pad;
    const Rational vy = -ymax - pad;
    const Rational vw = xmax - xmin + 2 * pad + (degenerate ? side : Rational(0));
    const Rational vh = ymax - ymin + 2 * pad + (degenerate ? side : Rational(0));
    const Rational vx0 = degenerate ? vx - side / 2 : vx;
    const Rational vy0 = degenerate ? vy - side / 2 : vy;

    Rational max_stress = 0;
    for (const auto& s : segments)
        if (s.stress)
            max_stress = std::max(max_stress, abs(*s.stress));
    const Rational base = side / 100;
    auto width = [&](const SvgSegment& s) {
        if (!s.stress || max_stress == 0)
            return base / 2;
        return base * abs(*s.stress) / max_stress + base / 10;
    };
    auto d = [](const Rational& r) { return to_decimal(r); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.canvas
        << "\" height=\"" << opt.canvas << "\" viewBox=\"" << d(vx0) << ' ' << d(vy0) << ' '
        << d(vw) << ' ' << d(vh) << "\" class=\"" << kind << "\">\n";
    if (degenerate)
        out << "<!-- warning: degenerate diagram, all points coincide -->\n";
    out << "<style>line{stroke:#444;stroke-linecap:round}.tension{stroke:#c0392b}"
           ".compression{stroke:#2c6fbb}.zero{stroke:#aaa;stroke-dasharray:1 1}"
           "circle{fill:#222}</style>\n";
    for (const auto& s : segments) {
        out << "<line id=\"" << s.id << "\" class=\"" << stress_class(s.stress) << "\" x1=\""
            << d(s.a.x) << "\" y1=\"" << d(-s.a.y) << "\" x2=\"" << d(s.b.x) << "\" y2=\""
            << d(-s.b.y) << "\" stroke-width=\"" << d(width(s)) << "\" data-x1=\""
            << to_string(s.a.x) << "\" data-y1=\"" << to_string(s.a.y) << "\" data-x2=\""
            << to_string(s.b.x) << "\" data-y2=\"" << to_string(s.b.y) << '"';
        if (s.stress)
            out << " data-stress=\"" << to_string(*s.stress) << '"';
        if (s.primal)
            out << " data-dx=\"" << to_string(s.primal->x) << "\" data-dy=\""
                << to_string(s.primal->y) << '"';
        out << "/>\n";
    }
    for (std::size_t i = 0; i < dots.size(); ++i)
        out << "<circle id=\"q" << i << "\" cx=\"" << d(dots[i].x) << "\" cy=\"" << d(-dots[i].y)
            << "\" r=\"" << d(base) << "\" data-x=\"" << to_string(dots[i].x) << "\" data-y=\""
            << to_string(dots[i].y) << "\"/>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace detail

/// Form diagram; with a stress, members are classed and weighted by it.
inline std::string render_svg(const FormDiagram& fd, const std::optional<Vector>& stress = std::nullopt,
                              const SvgOptions& opt = {}) {
    const CellComplex& x = fd.complex();
    if (stress && stress->size() != x.edge_count())
        throw InvalidInput("stress has the wrong length");
    std::vector<SvgSegment> segs;
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        SvgSegment s{point2(fd.embedding(), x.edge(e).tail), point2(fd.embedding(), x.edge(e).head),
                     "e" + std::to_string(e), std::nullopt, std::nullopt};
        if (stress)
            s.stress = (*stress)[e];
        segs.push_back(std::move(s));
    }
    return detail::render_segments(segs, {}, "form", opt);
}

/**
 * Force diagram: one segment per dual edge, from the left face's point to
 * the right face's, tagged with its primal edge vector; dual vertices as dots.
 */
inline std::string render_svg(const ForceDiagram& diagram, const CellComplex& primal,
                              const Embedding& emb, const SvgOptions& opt = {}) {
    std::vector<SvgSegment> segs;
    for (std::size_t de = 0; de < diagram.dual.edge_count(); ++de) {
        const std::size_t e = diagram.correspondence.dual_edge_to_edge[de];
        const auto& ed = diagram.dual.edge(de);
        segs.push_back({diagram.positions[ed.tail], diagram.positions[ed.head],
                        "d" + std::to_string(e), diagram.stress.at(e), edge_vector2(primal, emb, e)});
    }
    return detail::render_segments(segs, diagram.positions, "force", opt);
}

} // namespace homstat
