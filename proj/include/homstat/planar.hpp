#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "homstat/complex.hpp"
#include "homstat/errors.hpp"
#include "homstat/rational.hpp"

namespace homstat {

struct Point2 {
    Rational x = 0;
    Rational y = 0;

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(const Rational& s) const { return {x * s, y * s}; }
    bool operator==(const Point2&) const = default;
};

inline Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
/// Counterclockwise quarter turn (x, y) -> (-y, x).
inline Point2 rot90(const Point2& a) { return {-a.y, a.x}; }

inline Point2 point2(const Embedding& emb, std::size_t v) {
    if (emb.dim != 2)
        throw PreconditionError("planar operation on an embedding of dimension " +
                                std::to_string(emb.dim));
    return {emb.position(v)[0], emb.position(v)[1]};
}

inline Point2 edge_vector2(const CellComplex& x, const Embedding& emb, std::size_t e) {
    return point2(emb, x.edge(e).head) - point2(emb, x.edge(e).tail);
}

namespace detail {

inline int orientation(const Point2& a, const Point2& b, const Point2& c) {
    const Rational k = cross(b - a, c - a);
    return k > 0 ? 1 : (k < 0 ? -1 : 0);
}

/// p is on the closed segment [a, b], given that a, b, p are collinear.
inline bool within_box(const Point2& a, const Point2& b, const Point2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

inline bool segments_meet(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4)
        return true;
    return (o1 == 0 && within_box(a, b, c)) || (o2 == 0 && within_box(a, b, d)) ||
           (o3 == 0 && within_box(c, d, a)) || (o4 == 0 && within_box(c, d, b));
}

/// Upper half-plane (including positive x-axis) sorts before the lower one.
inline bool angle_less(const Point2& a, const Point2& b) {
    auto half = [](const Point2& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
    const int ha = half(a);
    const int hb = half(b);
    if (ha != hb)
        return ha < hb;
    return cross(a, b) > 0;
}

} // namespace detail

/**
 * Exact pairwise check that a straight-line drawing is a plane embedding:
 * distinct vertex positions, no vertex in the interior of an edge, and no two
 * edges meeting except at a shared endpoint. Throws InvalidInput naming the
 * offending pair.
 */
inline void check_noncrossing(const CellComplex& x, const Embedding& emb) {
    emb.validate(x);
    const std::size_t n = x.vertex_count();
    std::vector<Point2> p(n);
    for (std::size_t v = 0; v < n; ++v)
        p[v] = point2(emb, v);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (p[u] == p[v])
                throw InvalidInput("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                                   " coincide");
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        const auto& [t, h] = x.edge(e);
        for (std::size_t v = 0; v < n; ++v)
            if (v != t && v != h && detail::orientation(p[t], p[h], p[v]) == 0 &&
                detail::within_box(p[t], p[h], p[v]))
                throw InvalidInput("vertex " + std::to_string(v) + " lies on edge " +
                                   std::to_string(e));
    }
    for (std::size_t e = 0; e < x.edge_count(); ++e)
        for (std::size_t f = e + 1; f < x.edge_count(); ++f) {
            const auto& a = x.edge(e);
            const auto& b = x.edge(f);
            const std::string pair = "edges " + std::to_string(e) + " and " + std::to_string(f);
            const bool share_tt = a.tail == b.tail, share_th = a.tail == b.head;
            const bool share_ht = a.head == b.tail, share_hh = a.head == b.head;
            const int shared = int(share_tt) + int(share_th) + int(share_ht) + int(share_hh);
            if (shared >= 2)
                throw InvalidInput(pair + " are parallel duplicates");
            if (shared == 1) {
                std::size_t s = share_tt || share_th ? a.tail : a.head;
                std::size_t oa = s == a.tail ? a.head : a.tail;
                std::size_t ob = s == b.tail ? b.head : b.tail;
                const Point2 da = p[oa] - p[s];
                const Point2 db = p[ob] - p[s];
                if (cross(da, db) == 0 && dot(da, db) > 0)
                    throw InvalidInput(pair + " overlap");
                continue;
            }
            if (detail::segments_meet(p[a.tail], p[a.head], p[b.tail], p[b.head]))
                throw InvalidInput(pair + " cross");
        }
}

inline bool is_connected(const CellComplex& x) {
    const std::size_t n = x.vertex_count();
    if (n == 0)
        return true;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t components = n;
    for (const auto& e : x.edges()) {
        auto a = find(e.tail), b = find(e.head);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

/**
 * Trace the faces of a connected plane straight-line graph from its rotation
 * system. Bounded faces come out counterclockwise (positive signed area) in
 * tracing order; the unbounded face, traced clockwise, is appended last and
 * designated exterior. The result satisfies V - E + F = 2.
 */
inline CellComplex planar_faces(const CellComplex& graph, const Embedding& emb) {
    if (emb.dim != 2)
        throw PreconditionError("face tracing needs a planar embedding");
    if (graph.edge_count() == 0)
        throw PreconditionError("face tracing needs at least one edge");
    if (!is_connected(graph))
        throw PreconditionError("graph is disconnected");
    check_noncrossing(graph, emb);

    const std::size_t n = graph.vertex_count();
    const std::size_t half_count = 2 * graph.edge_count();
    auto origin = [&](std::size_t h) {
        const auto& e = graph.edge(h / 2);
        return h % 2 == 0 ? e.tail : e.head;
    };
    auto dest = [&](std::size_t h) { return origin(h ^ 1U); };
    auto direction = [&](std::size_t h) { return point2(emb, dest(h)) - point2(emb, origin(h)); };

    std::vector<std::vector<std::size_t>> rotation(n);
    for (std::size_t h = 0; h < half_count; ++h)
        rotation[origin(h)].push_back(h);
    std::vector<std::size_t> slot(half_count);
    for (auto& around : rotation) {
        std::sort(around.begin(), around.end(), [&](std::size_t a, std::size_t b) {
            return detail::angle_less(direction(a), direction(b));
        });
        for (std::size_t i = 0; i < around.size(); ++i)
            slot[around[i]] = i;
    }
    auto next = [&](std::size_t h) {
        const std::size_t twin = h ^ 1U;
        const auto& around = rotation[origin(twin)];
        return around[(slot[twin] + around.size() - 1) % around.size()];
    };

    std::vector<bool> visited(half_count, false);
    std::vector<Face> bounded;
    std::vector<Face> unbounded;
    for (std::size_t start = 0; start < half_count; ++start) {
        if (visited[start])
            continue;
        Face face;
        Rational twice_area = 0;
        std::size_t h = start;
        do {
            visited[h] = true;
            face.boundary.push_back({h / 2, h % 2 == 0 ? 1 : -1});
            twice_area += cross(point2(emb, origin(h)), point2(emb, dest(h)));
            h = next(h);
        } while (h != start);
        (twice_area > 0 ? bounded : unbounded).push_back(std::move(face));
    }
    if (unbounded.size() != 1)
        throw InternalError("face tracing found " + std::to_string(unbounded.size()) +
                            " unbounded faces");
    const std::size_t exterior = bounded.size();
    bounded.push_back(std::move(unbounded.front()));
    CellComplex out(n, graph.edges(), std::move(bounded), exterior);
    if (euler_char(out) != 2)
        throw InternalError("traced faces violate V - E + F = 2");
    return out;
}

} // namespace homstat
