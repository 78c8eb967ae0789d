#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homstat/complex.hpp"
#include "homstat/cosheaf.hpp"
#include "homstat/dual.hpp"
#include "homstat/errors.hpp"
#include "homstat/exactla.hpp"
#include "homstat/homology.hpp"
#include "homstat/planar.hpp"
#include "homstat/statics.hpp"

namespace homstat {

/**
 * Planar truss whose complex is a sphere: bounded faces plus one exterior
 * face, drawn with straight non-crossing edges.
 */
struct FormDiagram {
    Truss truss;

    const CellComplex& complex() const { return truss.complex; }
    const Embedding& embedding() const { return truss.embedding; }
    std::size_t exterior() const { return *truss.complex.exterior_face(); }
};

/// Validates the drawing, tracing faces first if the truss has none.
inline FormDiagram make_form_diagram(const Truss& t) {
    if (t.dim() != 2)
        throw PreconditionError("form diagrams live in the plane");
    if (t.complex.face_count() == 0)
        return {Truss(planar_faces(t.complex, t.embedding), t.embedding)};
    check_noncrossing(t.complex, t.embedding);
    if (!t.complex.is_closed_surface() || euler_char(t.complex) != 2)
        throw PreconditionError("form diagram must be a spherical complex");
    if (!t.complex.exterior_face())
        throw PreconditionError("form diagram needs a designated exterior face");
    return {t};
}

/// n_e = rot90(p(head) - p(tail)).
inline Point2 edge_normal(const CellComplex& x, const Embedding& emb, std::size_t e) {
    return rot90(edge_vector2(x, emb, e));
}

/**
 * Position cosheaf G = R²_X / F: face stalks R², edge stalks R with
 * coordinate ξ ↦ n_e·ξ, vertex stalks 0.
 */
struct PositionCosheaf {
    QuotientPresentation presentation;
    std::vector<Point2> normals;

    const Cosheaf& cosheaf() const { return presentation.quotient; }
};

/// Inclusion F -> R²_X: identity over vertices, p(head) - p(tail) over edges.
inline CosheafMap force_inclusion(const CellComplex& x, const Embedding& emb) {
    CosheafMap phi{force_cosheaf(x, emb), constant_cosheaf(x, 2), {}};
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
        phi.components[0].push_back(SparseMatrix::identity(2));
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        const Point2 d = edge_vector2(x, emb, e);
        SparseMatrix col(2, 1);
        col.set(0, 0, d.x);
        col.set(1, 0, d.y);
        phi.components[1].push_back(std::move(col));
    }
    for (std::size_t f = 0; f < x.face_count(); ++f)
        phi.components[2].emplace_back(2, 0);
    return phi;
}

inline PositionCosheaf position_cosheaf(const FormDiagram& fd) {
    const CellComplex& x = fd.complex();
    PositionCosheaf g;
    std::array<std::vector<SparseMatrix>, 3> complements;
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
        complements[0].emplace_back(2, 0);
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        const Point2 n = edge_normal(x, fd.embedding(), e);
        if (n == Point2{})
            throw InvalidInput("edge " + std::to_string(e) + " has zero length");
        const Rational len2 = dot(n, n);
        SparseMatrix c(2, 1);
        c.set(0, 0, n.x / len2);
        c.set(1, 0, n.y / len2);
        complements[1].push_back(std::move(c));
        g.normals.push_back(n);
    }
    for (std::size_t f = 0; f < x.face_count(); ++f)
        complements[2].push_back(SparseMatrix::identity(2));
    g.presentation = quotient_with_complements(force_inclusion(x, fd.embedding()), complements);
    return g;
}

/**
 * Parallel realization of the dual complex: one point per dual vertex (per
 * primal face). For every present dual edge, position(right) - position(left)
 * is parallel to the primal edge.
 */
struct ForceDiagram {
    CellComplex dual;
    DualCorrespondence correspondence;
    std::vector<Point2> positions; ///< by dual vertex
    Vector stress;                 ///< edge-indexed stress that generated it

    /// Position of the dual vertex of primal face f.
    const Point2& at_face(std::size_t f) const {
        return positions.at(*correspondence.face_to_dual_vertex.at(f));
    }
};

namespace detail {

/**
 * Integrate q(right) = q(left) + s_e (p(head) - p(tail)) over a spanning
 * tree of the dual graph with `anchor` at the origin, then require every
 * dual edge to close exactly.
 */
inline std::vector<Point2> integrate_dual(const CellComplex& x, const Embedding& emb,
                                          const DualComplex& dual, const Vector& stress,
                                          std::size_t anchor) {
    const std::size_t nv = dual.complex.vertex_count();
    auto displacement = [&](std::size_t de) {
        const std::size_t e = dual.correspondence.dual_edge_to_edge[de];
        return edge_vector2(x, emb, e) * stress[e];
    };
    std::vector<std::vector<std::size_t>> adjacent(nv);
    for (std::size_t de = 0; de < dual.complex.edge_count(); ++de) {
        adjacent[dual.complex.edge(de).tail].push_back(de);
        adjacent[dual.complex.edge(de).head].push_back(de);
    }
    std::vector<std::optional<Point2>> q(nv);
    q.at(anchor) = Point2{};
    std::deque<std::size_t> queue{anchor};
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (auto de : adjacent[v]) {
            const auto& ed = dual.complex.edge(de);
            const std::size_t w = ed.tail == v ? ed.head : ed.tail;
            if (q[w])
                continue;
            q[w] = ed.tail == v ? *q[v] + displacement(de) : *q[v] - displacement(de);
            queue.push_back(w);
        }
    }
    std::vector<Point2> out;
    for (std::size_t v = 0; v < nv; ++v) {
        if (!q[v])
            throw PreconditionError("dual graph is disconnected");
        out.push_back(*q[v]);
    }
    for (std::size_t de = 0; de < dual.complex.edge_count(); ++de) {
        const auto& ed = dual.complex.edge(de);
        if (!(out[ed.head] - out[ed.tail] == displacement(de)))
            throw InternalError("dual edge " + std::to_string(de) + " does not close");
    }
    return out;
}

} // namespace detail

/// Net joint forces ∂_1 s of the force cosheaf.
inline Vector net_forces(const Truss& t, const Vector& stress) {
    const ChainComplex c = boundary_matrices(force_cosheaf(t.complex, t.embedding));
    if (stress.size() != c.dim(1))
        throw InvalidInput("stress has " + std::to_string(stress.size()) + " entries for " +
                           std::to_string(c.dim(1)) + " edges");
    return c.boundary(1) * stress;
}

/**
 * Force diagram of a self-stress: the exterior face's dual vertex sits at
 * the origin and each dual edge, left face to right face, is the stress
 * times the primal edge vector.
 */
inline ForceDiagram force_diagram_from_stress(const FormDiagram& fd, const Vector& stress) {
    if (!is_zero(net_forces(fd.truss, stress)))
        throw PreconditionError("stress is not a self-stress: some joint is out of equilibrium");
    DualComplex dual = poincare_dual(fd.complex());
    const std::size_t anchor = *dual.correspondence.face_to_dual_vertex[fd.exterior()];
    auto q = detail::integrate_dual(fd.complex(), fd.embedding(), dual, stress, anchor);
    return {std::move(dual.complex), std::move(dual.correspondence), std::move(q), stress};
}

/**
 * Self-stress of a parallel dual realization given per primal face:
 * s_e = ((q(right) - q(left)) · d_e) / |d_e|². Throws PreconditionError
 * naming the first edge whose dual edge is not parallel.
 */
inline Vector stress_from_force_diagram(const FormDiagram& fd, const std::vector<Point2>& face_positions) {
    const CellComplex& x = fd.complex();
    if (face_positions.size() != x.face_count())
        throw InvalidInput("need one dual position per face");
    Vector s = zero_vector(x.edge_count());
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        auto [left, right] = x.edge_sides(e);
        const Point2 delta = face_positions[right.at(0)] - face_positions[left.at(0)];
        const Point2 d = edge_vector2(x, fd.embedding(), e);
        if (cross(delta, d) != 0)
            throw PreconditionError("dual edge of edge " + std::to_string(e) +
                                    " is not parallel to it");
        s[e] = dot(delta, d) / dot(d, d);
    }
    if (!is_zero(net_forces(fd.truss, s)))
        throw InternalError("recovered stress is not in equilibrium");
    return s;
}

/// Face-indexed positions of a force diagram (for the round trip).
inline std::vector<Point2> face_positions(const ForceDiagram& diagram) {
    std::vector<Point2> out(diagram.correspondence.face_to_dual_vertex.size());
    for (std::size_t f = 0; f < out.size(); ++f)
        if (auto dv = diagram.correspondence.face_to_dual_vertex[f])
            out[f] = diagram.positions[*dv];
    return out;
}

struct DualityDimensions {
    std::size_t h0_force = 0;
    std::size_t h1_force = 0;
    std::size_t h2_position = 0;
    std::size_t h1_position = 0;
};

/**
 * Homology dimensions on both sides of the split sequences; throws
 * InternalError unless dim H_2 G = dim H_1 F + 2 and dim H_1 G = dim H_0 F - 2.
 */
inline DualityDimensions duality_dimensions(const FormDiagram& fd) {
    const HomologySummary hf = homology(boundary_matrices(force_cosheaf(fd.complex(), fd.embedding())));
    const HomologySummary hg = homology(boundary_matrices(position_cosheaf(fd).cosheaf()));
    DualityDimensions d{hf.betti(0), hf.betti(1), hg.betti(2), hg.betti(1)};
    if (d.h2_position != d.h1_force + 2)
        throw InternalError("dim H2 G != dim H1 F + 2");
    if (d.h1_position + 2 != d.h0_force)
        throw InternalError("dim H1 G != dim H0 F - 2");
    return d;
}

struct RotationBasis {
    std::vector<Vector> representatives; ///< edge-indexed C_1 G vectors
    std::size_t dimension = 0;
};

/// Basis of H_1 G = C_1 G / im ∂_2, the impossible dual edge rotations.
inline RotationBasis impossible_rotation_basis(const FormDiagram& fd) {
    const HomologySummary hg = homology(boundary_matrices(position_cosheaf(fd).cosheaf()));
    const std::size_t b0 = analyze(fd.truss).betti0;
    RotationBasis r{hg.degree(1).representatives, hg.betti(1)};
    if (r.dimension + 2 != b0)
        throw InternalError("dim H1 G != dim H0 F - 2");
    return r;
}

struct RotationClass {
    Vector chain;   ///< n_e · w_e for the lift w
    Vector reduced; ///< canonical representative modulo im ∂_2
    bool nonzero = false;
};

/// Reducer for C_1 G modulo im ∂_2 of the position cosheaf.
inline SubspaceReducer rotation_reducer(const FormDiagram& fd) {
    return SubspaceReducer::column_space(boundary_matrices(position_cosheaf(fd).cosheaf()).boundary(2));
}

/**
 * Class in H_1 G of a vertex velocity field u (n = 2 entries per vertex).
 * The mean is removed, u = ∂w is solved in the constant R² cosheaf, and w
 * is projected edgewise onto the normals.
 */
inline RotationClass motion_to_rotation_class(const FormDiagram& fd, Vector u) {
    const CellComplex& x = fd.complex();
    const std::size_t nv = x.vertex_count();
    if (u.size() != 2 * nv)
        throw InvalidInput("motion needs two entries per vertex");
    for (std::size_t i = 0; i < 2; ++i) {
        Rational mean = 0;
        for (std::size_t v = 0; v < nv; ++v)
            mean += u[2 * v + i];
        mean /= nv;
        for (std::size_t v = 0; v < nv; ++v)
            u[2 * v + i] -= mean;
    }
    const ChainComplex constant = boundary_matrices(constant_cosheaf(x, 2));
    auto w = solve_particular(constant.boundary(1), u);
    if (!w)
        throw InternalError("mean-free motion has no lift");
    RotationClass rc;
    rc.chain = zero_vector(x.edge_count());
    for (std::size_t e = 0; e < x.edge_count(); ++e)
        rc.chain[e] = dot(edge_normal(x, fd.embedding(), e), Point2{(*w)[2 * e], (*w)[2 * e + 1]});
    rc.reduced = rotation_reducer(fd).reduce(rc.chain);
    rc.nonzero = !is_zero(rc.reduced);
    return rc;
}

/// u_v = rot90(p_v - centroid).
inline Vector global_rotation(const FormDiagram& fd) {
    const std::size_t nv = fd.complex().vertex_count();
    Point2 c;
    for (std::size_t v = 0; v < nv; ++v)
        c = c + point2(fd.embedding(), v);
    c = c * Rational(1, static_cast<long>(nv));
    Vector u;
    for (std::size_t v = 0; v < nv; ++v) {
        const Point2 r = rot90(point2(fd.embedding(), v) - c);
        u.push_back(r.x);
        u.push_back(r.y);
    }
    return u;
}

/**
 * Any repositioning ζ of the dual vertices (two entries per face) has ∂_2 ζ
 * in the zero class of H_1 G, so it induces no motion of the form diagram.
 * Returns the edgewise chain ∂_2 ζ; throws InternalError if its class is nonzero.
 */
inline Vector check_theorem3(const FormDiagram& fd, const Vector& zeta) {
    const ChainComplex g = boundary_matrices(position_cosheaf(fd).cosheaf());
    if (zeta.size() != g.dim(2))
        throw InvalidInput("repositioning needs two entries per face");
    Vector chain = g.boundary(2) * zeta;
    if (!rotation_reducer(fd).contains(chain))
        throw InternalError("dual repositioning induced a nonzero rotation class");
    return chain;
}

/**
 * Reciprocal reading of an H_1 G class: the representative orthogonal to
 * im ∂_2, divided edgewise by the generating stress, is a self-stress of
 * the force diagram seen as a framework. Needs every stress entry nonzero.
 */
inline Vector reciprocal_dual_stress(const FormDiagram& fd, const ForceDiagram& diagram,
                                     const Vector& rotation) {
    const SparseMatrix d2 = boundary_matrices(position_cosheaf(fd).cosheaf()).boundary(2);
    const auto left_null = kernel_basis(d2.transpose());
    const std::size_t k = left_null.size();
    SparseMatrix gram(k, k);
    Vector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = dot(left_null[i], rotation);
        for (std::size_t j = 0; j < k; ++j)
            gram.set(i, j, dot(left_null[i], left_null[j]));
    }
    auto coeffs = solve_particular(gram, rhs);
    if (!coeffs)
        throw InternalError("singular Gram matrix");
    Vector t = zero_vector(fd.complex().edge_count());
    for (std::size_t e = 0; e < t.size(); ++e) {
        if (diagram.stress.at(e) == 0)
            throw PreconditionError("force diagram is degenerate at edge " + std::to_string(e));
        Rational orth = 0;
        for (std::size_t i = 0; i < k; ++i)
            orth += (*coeffs)[i] * left_null[i][e];
        t[e] = orth / diagram.stress[e];
    }
    return t;
}

/// The force diagram as an embedding of its dual complex.
inline Truss force_diagram_truss(const ForceDiagram& d) {
    Embedding emb{2, {}};
    for (const auto& p : d.positions)
        emb.positions.push_back({p.x, p.y});
    return Truss(d.dual, std::move(emb));
}

/**
 * Cells removed when dualizing X − Y: the loop and the exterior face (if any).
 * Throws PreconditionError when the exterior face touches an edge off the loop.
 */
inline Subcomplex loop_and_exterior(const BoundaryDecomposition& d) {
    Subcomplex removed = d.loop;
    if (auto ext = d.truss.complex.exterior_face())
        removed.faces[*ext] = true;
    if (!removed.is_closed_in(d.truss.complex))
        throw PreconditionError("exterior face must be bounded by the loop");
    return removed;
}

/// Relative position cosheaf on X − Y: stalks R² on kept faces, R on kept edges.
inline Cosheaf relative_position_cosheaf(const Truss& t, const Subcomplex& kept) {
    const CellComplex& x = t.complex;
    Cosheaf::StalkDims stalks;
    stalks[0].assign(x.vertex_count(), 0);
    for (std::size_t e = 0; e < x.edge_count(); ++e)
        stalks[1].push_back(kept.edges[e] ? 1 : 0);
    for (std::size_t f = 0; f < x.face_count(); ++f)
        stalks[2].push_back(kept.faces[f] ? 2 : 0);
    Cosheaf::Maps maps;
    for (const auto& inc : x.incidences(1))
        maps[0].emplace_back(0, stalks[1][inc.higher]);
    for (const auto& inc : x.incidences(2)) {
        SparseMatrix m(stalks[1][inc.lower], stalks[2][inc.higher]);
        if (kept.edges[inc.lower] && kept.faces[inc.higher]) {
            const Point2 n = edge_normal(x, t.embedding, inc.lower);
            m.set(0, 0, n.x);
            m.set(0, 1, n.y);
        }
        maps[1].push_back(std::move(m));
    }
    return Cosheaf(x, std::move(stalks), std::move(maps));
}

struct RelativeForceDiagram {
    ForceDiagram diagram;         ///< realization of the dual disk
    std::size_t equilibrium_dim = 0; ///< dim H_1 F_{X−Y}
    std::size_t h2_position = 0;     ///< dim H_2 G_{X−Y}
};

/**
 * Force diagram of an equilibrium stress of a loaded truss, realized on the
 * dual disk of X − Y. Requires X − Y to be an open disk: the relative
 * constant cosheaf must have homology R² in degree 2 only. Without a given
 * stress the first equilibrium basis vector is used.
 */
inline RelativeForceDiagram relative_force_diagram(const BoundaryDecomposition& d,
                                                   std::optional<Vector> stress = std::nullopt) {
    const Truss& t = d.truss;
    if (t.dim() != 2)
        throw PreconditionError("relative force diagrams live in the plane");
    if (t.complex.face_count() == 0)
        throw PreconditionError("relative force diagram needs a complex with faces");
    const Subcomplex removed = loop_and_exterior(d);
    {
        auto [sub, incl] = restrict_to_subcomplex(constant_cosheaf(t.complex, 2), removed);
        const HomologySummary h = homology(quotient_cosheaf(incl).quotient);
        if (h.betti(0) != 0 || h.betti(1) != 0 || h.betti(2) != 2)
            throw PreconditionError("X − Y is not a disk: relative Betti numbers (" +
                                    std::to_string(h.betti(0)) + ", " + std::to_string(h.betti(1)) +
                                    ", " + std::to_string(h.betti(2) / 2) + ")");
    }
    RelativeForceDiagram out;
    const auto basis = equilibrium_stresses(d);
    out.equilibrium_dim = basis.size();
    Subcomplex kept = Subcomplex::whole(t.complex);
    for (int dim = 0; dim <= 2; ++dim)
        for (std::size_t c = 0; c < t.complex.cell_count(dim); ++c)
            if (removed.contains(dim, c))
                (dim == 0 ? kept.vertices : dim == 1 ? kept.edges : kept.faces)[c] = false;
    out.h2_position = homology(relative_position_cosheaf(t, kept)).betti(2);
    if (out.h2_position != out.equilibrium_dim + 2)
        throw InternalError("dim H2 G_{X−Y} != dim H1 F_{X−Y} + 2");

    Vector s = stress ? *stress : (basis.empty() ? zero_vector(t.complex.edge_count()) : basis.front());
    if (s.size() != t.complex.edge_count())
        throw InvalidInput("stress has the wrong length");
    if (!is_zero(relative_net_forces(d, s)))
        throw PreconditionError("stress is not an equilibrium stress of X − Y");
    DualComplex dual = dual_of_region(t.complex, kept);
    if (dual.complex.vertex_count() == 0)
        throw PreconditionError("X − Y has no faces");
    auto q = detail::integrate_dual(t.complex, t.embedding, dual, s, 0);
    out.diagram = {std::move(dual.complex), std::move(dual.correspondence), std::move(q), std::move(s)};
    return out;
}

} // namespace homstat
