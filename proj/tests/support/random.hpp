#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "homstat/homstat.hpp"

namespace gen {

using namespace homstat;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational rational(Rng& rng, long range = 20, long max_den = 5) {
    return Rational(uniform(rng, -range, range), uniform(rng, 1, max_den));
}

/// Connected graph on `v` vertices: random spanning tree plus extra edges, random orientations.
inline CellComplex connected_graph(Rng& rng, std::size_t v, std::size_t extra) {
    std::vector<Edge> edges;
    std::set<std::pair<std::size_t, std::size_t>> used;
    auto add = [&](std::size_t a, std::size_t b) {
        if (a == b || !used.insert({std::min(a, b), std::max(a, b)}).second)
            return;
        if (uniform(rng, 0, 1))
            std::swap(a, b);
        edges.push_back({a, b});
    };
    for (std::size_t i = 1; i < v; ++i)
        add(i, static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(i) - 1)));
    for (std::size_t k = 0; k < extra; ++k)
        add(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(v) - 1)),
            static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(v) - 1)));
    return build_complex(v, std::move(edges));
}

/// Random connected truss in R^n with distinct rational positions.
inline Truss truss(Rng& rng, std::size_t n, std::size_t v_lo = 5, std::size_t v_hi = 30) {
    const std::size_t v = static_cast<std::size_t>(uniform(rng, static_cast<long>(v_lo), static_cast<long>(v_hi)));
    const std::size_t extra = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(2 * n * v)));
    CellComplex x = connected_graph(rng, v, extra);
    Embedding emb{n, {}};
    std::set<Vector> seen;
    while (emb.positions.size() < v) {
        Vector p;
        for (std::size_t i = 0; i < n; ++i)
            p.push_back(rational(rng));
        if (seen.insert(p).second)
            emb.positions.push_back(std::move(p));
    }
    return Truss(std::move(x), std::move(emb));
}

namespace detail {

inline int orient(const Point2& a, const Point2& b, const Point2& c) {
    const Rational v = cross(b - a, c - a);
    return v > 0 ? 1 : v < 0 ? -1 : 0;
}

/// Proper crossing of segments that share no endpoint (general position assumed).
inline bool crosses(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

inline bool bridgeless_connected(std::size_t v, const std::vector<Edge>& edges) {
    auto connected_without = [&](std::size_t skip) {
        std::vector<std::size_t> parent(v);
        for (std::size_t i = 0; i < v; ++i)
            parent[i] = i;
        auto find = [&](std::size_t i) {
            while (parent[i] != i)
                i = parent[i] = parent[parent[i]];
            return i;
        };
        std::size_t parts = v;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (e == skip)
                continue;
            auto a = find(edges[e].tail), b = find(edges[e].head);
            if (a != b) {
                parent[a] = b;
                --parts;
            }
        }
        return parts == 1;
    };
    if (!connected_without(edges.size()))
        return false;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (!connected_without(e))
            return false;
    return true;
}

} // namespace detail

/**
 * Planar spherical form: integer points with no three collinear, a greedy
 * shortest-first non-crossing triangulation, then random edge deletions
 * that keep the graph connected and bridgeless. Faces are traced.
 */
inline FormDiagram planar_form(Rng& rng, std::size_t v_lo = 4, std::size_t v_hi = 12) {
    const std::size_t v = static_cast<std::size_t>(uniform(rng, static_cast<long>(v_lo), static_cast<long>(v_hi)));
    std::vector<Point2> pts;
    while (pts.size() < v) {
        Point2 p{Rational(uniform(rng, -30, 30)), Rational(uniform(rng, -30, 30))};
        bool ok = true;
        for (std::size_t i = 0; i < pts.size() && ok; ++i) {
            if (pts[i] == p)
                ok = false;
            for (std::size_t j = i + 1; j < pts.size() && ok; ++j)
                if (cross(pts[j] - pts[i], p - pts[i]) == 0)
                    ok = false;
        }
        if (ok)
            pts.push_back(p);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = i + 1; j < v; ++j)
            pairs.push_back({i, j});
    std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
        const Point2 da = pts[a.second] - pts[a.first], db = pts[b.second] - pts[b.first];
        return dot(da, da) < dot(db, db);
    });
    std::vector<Edge> edges;
    for (auto [i, j] : pairs) {
        bool ok = true;
        for (const auto& e : edges)
            if (e.tail != i && e.tail != j && e.head != i && e.head != j &&
                detail::crosses(pts[i], pts[j], pts[e.tail], pts[e.head])) {
                ok = false;
                break;
            }
        if (ok)
            edges.push_back(uniform(rng, 0, 1) ? Edge{i, j} : Edge{j, i});
    }
    const std::size_t deletions = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(edges.size() / 3)));
    for (std::size_t k = 0; k < deletions; ++k) {
        const std::size_t e = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(edges.size()) - 1));
        std::vector<Edge> trial = edges;
        trial.erase(trial.begin() + static_cast<long>(e));
        if (detail::bridgeless_connected(v, trial))
            edges = std::move(trial);
    }
    Embedding emb{2, {}};
    for (const auto& p : pts)
        emb.positions.push_back({p.x, p.y});
    return make_form_diagram(Truss(build_complex(v, std::move(edges)), std::move(emb)));
}

inline SparseMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int zero_percent = 30) {
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (uniform(rng, 0, 99) >= zero_percent)
                m.set(i, j, rational(rng, 5, 3));
    return m;
}

/**
 * Random cosheaf: stalk dims in [0, max_dim], random edge-to-vertex maps, and
 * face-to-edge maps whose columns are random combinations of the kernel of
 * the composition constraint, so ∂_1 ∂_2 = 0 by construction.
 */
inline Cosheaf cosheaf(Rng& rng, const CellComplex& x, std::size_t max_dim = 4) {
    Cosheaf::StalkDims stalks;
    for (int d = 0; d <= 2; ++d)
        for (std::size_t c = 0; c < x.cell_count(d); ++c)
            stalks[d].push_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_dim))));
    Cosheaf::Maps maps;
    for (const auto& inc : x.incidences(1))
        maps[0].push_back(random_matrix(rng, stalks[0][inc.lower], stalks[1][inc.higher]));

    const auto& inc2 = x.incidences(2);
    maps[1].resize(inc2.size());
    for (std::size_t f = 0; f < x.face_count(); ++f) {
        // Unknowns: stacked edge stalks of the face's boundary edges (one block per incidence).
        std::vector<std::size_t> slots;
        for (std::size_t i = 0; i < inc2.size(); ++i)
            if (inc2[i].higher == f)
                slots.push_back(i);
        std::vector<std::size_t> offset;
        std::size_t unknowns = 0;
        for (auto i : slots) {
            offset.push_back(unknowns);
            unknowns += stalks[1][inc2[i].lower];
        }
        std::vector<std::size_t> voff(x.vertex_count());
        std::size_t rows = 0;
        for (std::size_t v = 0; v < x.vertex_count(); ++v) {
            voff[v] = rows;
            rows += stalks[0][v];
        }
        SparseMatrix constraint(rows, unknowns);
        const auto& inc1 = x.incidences(1);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            const auto& fe = inc2[slots[s]];
            for (std::size_t j = 0; j < inc1.size(); ++j) {
                if (inc1[j].higher != fe.lower)
                    continue;
                const SparseMatrix& ev = maps[0][j];
                for (const auto& [rc, val] : ev.entries())
                    constraint.add(voff[inc1[j].lower] + rc.first, offset[s] + rc.second,
                                   Rational(inc1[j].coefficient * fe.coefficient) * val);
            }
        }
        const auto basis = kernel_basis(constraint);
        for (std::size_t s = 0; s < slots.size(); ++s)
            maps[1][slots[s]] = SparseMatrix(stalks[1][inc2[slots[s]].lower], stalks[2][f]);
        for (std::size_t col = 0; col < stalks[2][f]; ++col) {
            Vector column = zero_vector(unknowns);
            for (const auto& b : basis) {
                const Rational c = rational(rng, 3, 2);
                for (std::size_t i = 0; i < unknowns; ++i)
                    column[i] += c * b[i];
            }
            for (std::size_t s = 0; s < slots.size(); ++s)
                for (std::size_t r = 0; r < stalks[1][inc2[slots[s]].lower]; ++r)
                    maps[1][slots[s]].set(r, col, column[offset[s] + r]);
        }
    }
    return Cosheaf(x, std::move(stalks), std::move(maps));
}

/// Random 2-complex: a random planar form's cells, sometimes with extra triangles glued on.
inline CellComplex two_complex(Rng& rng) {
    FormDiagram fd = planar_form(rng, 4, 9);
    const CellComplex& x = fd.complex();
    std::vector<Face> faces = x.faces();
    if (uniform(rng, 0, 1) && !faces.empty())
        faces.pop_back(); // drop the exterior, leaving a disk
    return build_complex(x.vertex_count(), x.edges(), std::move(faces));
}

/// The same cosheaf transported to the complex with edge `e` reversed.
inline Cosheaf flip_edge(const Cosheaf& f, std::size_t e) {
    const CellComplex y = with_edge_flipped(f.base(), e);
    Cosheaf::StalkDims stalks = f.stalk_dims();
    Cosheaf::Maps maps;
    for (int k = 1; k <= 2; ++k)
        for (const auto& inc : y.incidences(k))
            maps[k - 1].push_back(*f.map_between(k, inc.higher, inc.lower));
    return Cosheaf(y, std::move(stalks), std::move(maps));
}

inline Cosheaf flip_face(const Cosheaf& f, std::size_t face) {
    const CellComplex y = with_face_flipped(f.base(), face);
    Cosheaf::StalkDims stalks = f.stalk_dims();
    Cosheaf::Maps maps;
    for (int k = 1; k <= 2; ++k)
        for (const auto& inc : y.incidences(k))
            maps[k - 1].push_back(*f.map_between(k, inc.higher, inc.lower));
    return Cosheaf(y, std::move(stalks), std::move(maps));
}

} // namespace gen
