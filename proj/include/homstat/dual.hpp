#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "homstat/complex.hpp"
#include "homstat/errors.hpp"

namespace homstat {

/**
 * Label correspondence between a complex and its Poincaré dual: primal
 * vertices become dual faces, edges become dual edges, faces become dual
 * vertices. Entries are empty for primal cells that have no dual cell (only
 * when dualizing a region rather than a closed surface).
 */
struct DualCorrespondence {
    std::vector<std::optional<std::size_t>> vertex_to_dual_face;
    std::vector<std::optional<std::size_t>> edge_to_dual_edge;
    std::vector<std::optional<std::size_t>> face_to_dual_vertex;
    std::vector<std::size_t> dual_face_to_vertex;
    std::vector<std::size_t> dual_edge_to_edge;
    std::vector<std::size_t> dual_vertex_to_face;
};

struct DualComplex {
    CellComplex complex;
    DualCorrespondence correspondence;
};

/**
 * Dual of the region of `x` made of the kept cells.
 *
 * The dual of edge t -> h runs from the face using it with sign +1 (its left
 * face) to the face using it with sign -1 (its right face). The dual face of
 * vertex v uses dual edge ẽ with sign +1 when v is the head of e and -1 when
 * v is its tail, chained into a closed walk.
 *
 * Requires every kept edge to have exactly one left and one right face, both
 * kept and distinct, and every kept vertex to have all its edges kept.
 */
inline DualComplex dual_of_region(const CellComplex& x, const Subcomplex& kept) {
    if (!kept.matches(x))
        throw InvalidInput("region mask does not match the complex");
    DualCorrespondence c;
    c.vertex_to_dual_face.assign(x.vertex_count(), std::nullopt);
    c.edge_to_dual_edge.assign(x.edge_count(), std::nullopt);
    c.face_to_dual_vertex.assign(x.face_count(), std::nullopt);
    for (std::size_t f = 0; f < x.face_count(); ++f)
        if (kept.faces[f]) {
            c.face_to_dual_vertex[f] = c.dual_vertex_to_face.size();
            c.dual_vertex_to_face.push_back(f);
        }

    std::vector<Edge> dual_edges;
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        if (!kept.edges[e])
            continue;
        auto [left, right] = x.edge_sides(e);
        if (left.size() != 1 || right.size() != 1 || left[0] == right[0])
            throw PreconditionError("edge " + std::to_string(e) +
                                    " does not separate exactly two faces");
        if (!kept.faces[left[0]] || !kept.faces[right[0]])
            throw PreconditionError("edge " + std::to_string(e) + " borders a removed face");
        c.edge_to_dual_edge[e] = dual_edges.size();
        c.dual_edge_to_edge.push_back(e);
        dual_edges.push_back({*c.face_to_dual_vertex[left[0]], *c.face_to_dual_vertex[right[0]]});
    }

    std::vector<std::vector<OrientedEdge>> star(x.vertex_count());
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        const auto& ed = x.edge(e);
        if (kept.edges[e]) {
            star[ed.tail].push_back({*c.edge_to_dual_edge[e], -1});
            star[ed.head].push_back({*c.edge_to_dual_edge[e], +1});
        } else if (kept.vertices[ed.tail] || kept.vertices[ed.head]) {
            throw PreconditionError("edge " + std::to_string(e) +
                                    " is removed but touches a kept vertex");
        }
    }

    std::vector<Face> dual_faces;
    for (std::size_t v = 0; v < x.vertex_count(); ++v) {
        if (!kept.vertices[v])
            continue;
        auto& items = star[v];
        if (items.empty())
            throw PreconditionError("vertex " + std::to_string(v) + " has no edges");
        auto start = [&](const OrientedEdge& oe) {
            return oe.sign > 0 ? dual_edges[oe.edge].tail : dual_edges[oe.edge].head;
        };
        auto end = [&](const OrientedEdge& oe) {
            return oe.sign > 0 ? dual_edges[oe.edge].head : dual_edges[oe.edge].tail;
        };
        Face face;
        std::vector<bool> used(items.size(), false);
        face.boundary.push_back(items[0]);
        used[0] = true;
        for (std::size_t step = 1; step < items.size(); ++step) {
            const std::size_t at = end(face.boundary.back());
            std::size_t pick = items.size();
            for (std::size_t i = 0; i < items.size() && pick == items.size(); ++i)
                if (!used[i] && start(items[i]) == at)
                    pick = i;
            if (pick == items.size())
                throw PreconditionError("faces around vertex " + std::to_string(v) +
                                        " do not form a single disk");
            used[pick] = true;
            face.boundary.push_back(items[pick]);
        }
        if (end(face.boundary.back()) != start(face.boundary.front()))
            throw PreconditionError("faces around vertex " + std::to_string(v) + " do not close");
        c.vertex_to_dual_face[v] = dual_faces.size();
        c.dual_face_to_vertex.push_back(v);
        dual_faces.push_back(std::move(face));
    }

    CellComplex dual(c.dual_vertex_to_face.size(), std::move(dual_edges), std::move(dual_faces));
    return {std::move(dual), std::move(c)};
}

/**
 * Poincaré dual of a closed surface complex. Cell counts swap as
 * (V, E, F) -> (F, E, V); the Euler characteristic is preserved.
 */
inline DualComplex poincare_dual(const CellComplex& x) {
    if (!x.is_closed_surface())
        throw PreconditionError("Poincaré dual needs a closed surface: every edge must border "
                                "exactly two distinct faces with opposite signs");
    return dual_of_region(x, Subcomplex::whole(x));
}

} // namespace homstat
