#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homstat/complex.hpp"
#include "homstat/cosheaf.hpp"
#include "homstat/duality.hpp"
#include "homstat/homology.hpp"
#include "homstat/io.hpp"
#include "homstat/statics.hpp"

namespace homstat {

/// Labels for chain coordinates: edge ids, and "vid.x" style names for vertex components.
struct Labels {
    const TrussDocument& doc;

    std::string edge(std::size_t e) const { return doc.edges.at(e).id.text(); }
    std::string vertex(std::size_t v) const { return doc.vertices.at(v).id.text(); }
    std::string face(std::size_t f) const {
        return doc.faces ? (*doc.faces).at(f).id.text() : "f" + std::to_string(f);
    }

    std::string component(std::size_t v, std::size_t i) const {
        static const char* names[] = {"x", "y", "z"};
        return vertex(v) + "." + (i < 3 ? std::string(names[i]) : "c" + std::to_string(i));
    }
};

inline Json rational_array(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

inline Json point_json(const Point2& p) { return Json::array({to_string(p.x), to_string(p.y)}); }

/// Edge-indexed vector as {edge id: value}.
inline Json edge_vector_json(const Labels& l, const Vector& s) {
    Json o = Json::object();
    for (std::size_t e = 0; e < s.size(); ++e)
        o[l.edge(e)] = to_string(s[e]);
    return o;
}

/// n-per-vertex vector as {"vid.x": value, ...}.
inline Json vertex_vector_json(const Labels& l, const Vector& u, std::size_t n) {
    Json o = Json::object();
    for (std::size_t i = 0; i < u.size(); ++i)
        o[l.component(i / n, i % n)] = to_string(u[i]);
    return o;
}

inline Json maxwell_json(const MaxwellReport& m) {
    Json j;
    j["n"] = m.n;
    j["vertices"] = m.vertices;
    j["edges"] = m.edges;
    j["rigid_motions"] = m.rigid_dim;
    j["rigid_rank"] = m.rigid_rank;
    j["betti0"] = m.betti0;
    j["betti1"] = m.betti1;
    j["self_stresses"] = m.self_stresses;
    j["mechanisms"] = m.mechanisms ? Json(*m.mechanisms) : Json(nullptr);
    j["degenerate_span"] = m.degenerate_span;
    j["euler_residual"] = m.euler_residual;
    j["residual"] = m.residual ? Json(*m.residual) : Json(nullptr);
    j["line"] = m.line;
    return j;
}

inline Json les_json(const LesReport& r) {
    Json degrees = Json::array();
    for (const auto& d : r.degrees)
        degrees.push_back({{"k", d.k},
                           {"betti_sub", d.betti_sub},
                           {"betti_total", d.betti_total},
                           {"betti_quotient", d.betti_quotient},
                           {"rank_inclusion", d.rank_inclusion},
                           {"rank_projection", d.rank_projection},
                           {"rank_connecting", d.rank_connecting}});
    return {{"degrees", degrees}, {"alternating_sum", r.alternating_sum}};
}

struct RelativeSummary {
    BoundaryDecomposition decomposition;
    LesReport les;
    std::vector<Vector> equilibrium;
    std::size_t self_stress_rank = 0; ///< rank of H_1 F_X -> H_1 F_{X−Y}
};

inline RelativeSummary relative_summary(const BoundaryDecomposition& d) {
    RelativeSummary r{d, les_dimension_check(d.relative), equilibrium_stresses(d), 0};
    r.self_stress_rank = r.les.degrees.size() > 1 ? r.les.degree(1).rank_projection : 0;
    return r;
}

inline Json relative_json(const Labels& l, const RelativeSummary& r) {
    const auto& d = r.decomposition;
    Json loop_v = Json::array(), loop_e = Json::array(), conn = Json::array();
    for (std::size_t v = 0; v < d.loop.vertices.size(); ++v)
        if (d.loop.vertices[v])
            loop_v.push_back(l.vertex(v));
    for (std::size_t e = 0; e < d.loop.edges.size(); ++e)
        if (d.loop.edges[e])
            loop_e.push_back(l.edge(e));
    for (auto e : d.connectors)
        conn.push_back(l.edge(e));
    Json eq = Json::array();
    for (const auto& s : r.equilibrium)
        eq.push_back(edge_vector_json(l, s));
    const std::size_t b1 = r.les.total.betti(1);
    return {{"loop_vertices", loop_v},
            {"loop_edges", loop_e},
            {"connectors", conn},
            {"les", les_json(r.les)},
            {"equilibrium_dim", r.equilibrium.size()},
            {"equilibrium_stresses", eq},
            {"self_stress_map", {{"rank", r.self_stress_rank}, {"betti1", b1}, {"injective", r.self_stress_rank == b1}}}};
}

inline Json analyze_json(const TrussDocument& doc, const Truss& t) {
    const Labels l{doc};
    const StaticsReport s = analyze(t);
    check_lemma1(s.chain, s.homology);
    Json j;
    j["command"] = "analyze";
    j["dimension"] = t.dim();
    j["vertices"] = t.complex.vertex_count();
    j["edges"] = t.complex.edge_count();
    j["faces"] = t.complex.face_count();
    Json dims = Json::array();
    for (int k = 0; k <= s.chain.top_degree(); ++k)
        dims.push_back(s.chain.dim(k));
    j["force_cosheaf"] = {{"chain_dims", dims},
                          {"equilibrium_matrix", {s.chain.dim(0), s.chain.dim(1)}},
                          {"betti", {s.betti0, s.betti1}}};
    Json stresses = Json::array();
    for (const auto& v : s.self_stresses)
        stresses.push_back(edge_vector_json(l, v));
    j["self_stresses"] = stresses;
    Json dofs = Json::array();
    for (const auto& u : s.dof_reps)
        dofs.push_back(vertex_vector_json(l, u, t.dim()));
    j["degrees_of_freedom"] = dofs;
    j["maxwell"] = maxwell_json(maxwell_report(t));
    return j;
}

inline Json selfstress_json(const TrussDocument& doc, const Truss& t) {
    const Labels l{doc};
    const StaticsReport s = analyze(t);
    Json stresses = Json::array();
    for (const auto& v : s.self_stresses) {
        if (!is_zero(net_forces(t, v)))
            throw InternalError("self-stress basis vector has nonzero net force");
        stresses.push_back(edge_vector_json(l, v));
    }
    return {{"command", "selfstress"}, {"betti1", s.betti1}, {"self_stresses", stresses}};
}

inline Json faces_json(const Labels& l, const CellComplex& x) {
    Json fs = Json::array();
    for (std::size_t f = 0; f < x.face_count(); ++f) {
        Json b = Json::array();
        for (const auto& oe : x.face(f).boundary)
            b.push_back({{"edge", l.edge(oe.edge)}, {"sign", oe.sign}});
        fs.push_back({{"id", l.face(f)}, {"boundary", b}});
    }
    return fs;
}

/// Positions, dual edges and the parallelism of every dual edge to its primal edge.
inline Json force_diagram_json(const Labels& l, const ForceDiagram& d, const Truss& primal) {
    Json vs = Json::array();
    for (std::size_t dv = 0; dv < d.positions.size(); ++dv)
        vs.push_back({{"face", l.face(d.correspondence.dual_vertex_to_face[dv])},
                      {"position", point_json(d.positions[dv])}});
    Json es = Json::array();
    bool all_parallel = true;
    for (std::size_t de = 0; de < d.dual.edge_count(); ++de) {
        const std::size_t e = d.correspondence.dual_edge_to_edge[de];
        const auto& ed = d.dual.edge(de);
        const Point2 v = d.positions[ed.head] - d.positions[ed.tail];
        const bool parallel = cross(v, edge_vector2(primal.complex, primal.embedding, e)) == 0;
        all_parallel = all_parallel && parallel;
        es.push_back({{"edge", l.edge(e)},
                      {"from", l.face(d.correspondence.dual_vertex_to_face[ed.tail])},
                      {"to", l.face(d.correspondence.dual_vertex_to_face[ed.head])},
                      {"vector", point_json(v)},
                      {"stress", to_string(d.stress.at(e))},
                      {"parallel", parallel}});
    }
    if (!all_parallel)
        throw InternalError("force diagram is not a parallel realization");
    return {{"dual_vertices", vs}, {"dual_edges", es}, {"parallel", all_parallel}};
}

struct DualResult {
    Json report;
    FormDiagram form;
    ForceDiagram diagram;
};

/**
 * Force diagram of self-stress basis vector `index`. Without an index a
 * rigid form (no self-stress) gets the zero stress and a degenerate diagram.
 */
inline DualResult dual_result(const TrussDocument& doc, std::optional<std::size_t> index) {
    FormDiagram fd = to_form_diagram(doc);
    const TrussDocument traced = with_traced_faces(doc, fd.complex());
    const Labels l{traced};
    const StaticsReport s = analyze(fd.truss);
    Vector stress;
    if (index) {
        if (*index >= s.self_stresses.size())
            throw InvalidInput("--stress " + std::to_string(*index) + " out of range: " +
                               std::to_string(s.self_stresses.size()) + " self-stresses");
        stress = s.self_stresses[*index];
    } else {
        stress = s.self_stresses.empty() ? zero_vector(fd.complex().edge_count()) : s.self_stresses.front();
    }
    ForceDiagram diagram = force_diagram_from_stress(fd, stress);
    const Vector back = stress_from_force_diagram(fd, face_positions(diagram));
    if (back != stress)
        throw InternalError("stress -> force diagram -> stress is not the identity");
    const DualityDimensions dims = duality_dimensions(fd);
    Json j;
    j["command"] = "dual";
    j["stress_index"] = index ? Json(*index) : Json(nullptr);
    j["stress"] = edge_vector_json(l, stress);
    j["faces"] = faces_json(l, fd.complex());
    j["exterior_face"] = l.face(fd.exterior());
    j["force_diagram"] = force_diagram_json(l, diagram, fd.truss);
    j["roundtrip"] = true;
    j["dimensions"] = {{"h1_force", dims.h1_force}, {"h2_position", dims.h2_position}};
    return {std::move(j), std::move(fd), std::move(diagram)};
}

inline Json rotations_json(const TrussDocument& doc) {
    const FormDiagram fd = to_form_diagram(doc);
    const Labels l{with_traced_faces(doc, fd.complex())};
    const DualityDimensions dims = duality_dimensions(fd);
    const RotationBasis basis = impossible_rotation_basis(fd);
    Json reps = Json::array();
    for (const auto& r : basis.representatives)
        reps.push_back(edge_vector_json(l, r));
    const RotationClass global = motion_to_rotation_class(fd, global_rotation(fd));
    std::vector<Vector> classes;
    for (const auto& u : infinitesimal_motions(fd.truss))
        classes.push_back(motion_to_rotation_class(fd, u).reduced);
    Json j;
    j["command"] = "rotations";
    j["h0_force"] = dims.h0_force;
    j["h1_force"] = dims.h1_force;
    j["h1_position"] = dims.h1_position;
    j["h2_position"] = dims.h2_position;
    j["rotation_basis"] = reps;
    j["global_rotation"] = {{"class", edge_vector_json(l, global.reduced)}, {"nonzero", global.nonzero}};
    j["motion_class_rank"] = rank_of_vectors(classes);
    return j;
}

struct RelativeResult {
    Json report;
    std::optional<Truss> truss;
    std::optional<RelativeForceDiagram> diagram;
};

/// Loaded truss: LES dimensions, equilibrium stresses and, in the plane, the relative force diagram.
inline RelativeResult relative_result(const TrussDocument& doc, std::optional<std::size_t> index) {
    Truss t = doc.dimension == 2 ? to_form_diagram(doc).truss : to_graph_truss(doc);
    const TrussDocument traced = with_traced_faces(doc, t.complex);
    const Labels l{traced};
    const BoundaryDecomposition d = to_boundary(doc, t);
    const RelativeSummary r = relative_summary(d);
    RelativeResult out;
    out.report["command"] = "relative";
    out.report["relative"] = relative_json(l, r);
    if (t.dim() == 2) {
        std::optional<Vector> stress;
        if (index) {
            if (*index >= r.equilibrium.size())
                throw InvalidInput("--stress " + std::to_string(*index) + " out of range: " +
                                   std::to_string(r.equilibrium.size()) + " equilibrium stresses");
            stress = r.equilibrium[*index];
        }
        RelativeForceDiagram rd = relative_force_diagram(d, stress);
        out.report["force_diagram"] = force_diagram_json(l, rd.diagram, t);
        out.report["h2_position"] = rd.h2_position;
        out.diagram = std::move(rd);
    }
    out.truss = std::move(t);
    return out;
}

inline Json spline_json(const TrussDocument& doc, std::size_t m, std::size_t r) {
    const Truss t = to_graph_truss(doc);
    const Labels l{doc};
    const Cosheaf k = spline_cosheaf(t.complex, m, r);
    const ChainComplex c = boundary_matrices(k);
    const HomologySummary h = homology(c);
    check_lemma1(c, h);
    Json splines = Json::array();
    for (const auto& rep : h.degree(1).representatives) {
        const auto polys = edge_polynomials(t.complex, m, rep);
        Json edges = Json::object();
        for (std::size_t e = 0; e < polys.size(); ++e)
            edges[l.edge(e)] = rational_array(polys[e]);
        Json jets = Json::array();
        for (std::size_t e = 0; e < polys.size(); ++e) {
            jets.push_back({{"edge", l.edge(e)}, {"vertex", l.vertex(t.complex.edge(e).tail)}, {"end", "tail"},
                            {"jet", rational_array(polynomial_jet(polys[e], r, false))}});
            jets.push_back({{"edge", l.edge(e)}, {"vertex", l.vertex(t.complex.edge(e).head)}, {"end", "head"},
                            {"jet", rational_array(polynomial_jet(polys[e], r, true))}});
        }
        splines.push_back({{"polynomials", edges}, {"jets", jets}});
    }
    return {{"command", "spline"},
            {"m", m},
            {"r", r},
            {"chain_dims", {c.dim(0), c.dim(1)}},
            {"betti", {h.betti(0), h.betti(1)}},
            {"splines", splines}};
}

struct CheckOutcome {
    Json report;
    bool passed = true;
};

/**
 * Every invariant that applies to the document. Each check records pass,
 * fail (with the message) or skipped; only InternalError counts as failure.
 */
inline CheckOutcome check_document(const TrussDocument& doc) {
    CheckOutcome out;
    Json checks = Json::array();
    auto run = [&](const std::string& name, const std::function<void()>& body) {
        Json c{{"name", name}};
        try {
            body();
            c["status"] = "pass";
        } catch (const InternalError& e) {
            c["status"] = "fail";
            c["detail"] = e.what();
            out.passed = false;
        }
        checks.push_back(std::move(c));
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        checks.push_back({{"name", name}, {"status", "skipped"}, {"detail", why}});
    };

    const Truss t = to_truss(doc);
    const Cosheaf f = force_cosheaf(t.complex, t.embedding);
    run("force_cosheaf_composition", [&] { boundary_matrices(f).check_composition(); });
    run("constant_cosheaf_composition", [&] { boundary_matrices(constant_cosheaf(t.complex, t.dim())).check_composition(); });
    run("lemma1_force", [&] { check_lemma1(boundary_matrices(f)); });
    run("maxwell_identity", [&] { maxwell_report(t); });
    run("edge_flip_invariance", [&] {
        const StaticsReport base = analyze(t);
        for (std::size_t e = 0; e < t.complex.edge_count(); ++e) {
            const StaticsReport s = analyze(Truss(with_edge_flipped(t.complex, e), t.embedding));
            if (s.betti0 != base.betti0 || s.betti1 != base.betti1)
                throw InternalError("Betti numbers change when edge " + std::to_string(e) + " is flipped");
        }
    });

    std::optional<FormDiagram> fd;
    std::string why_not_planar = "not a planar document";
    if (doc.dimension == 2) {
        try {
            fd = to_form_diagram(doc);
        } catch (const std::runtime_error& e) {
            why_not_planar = e.what();
        }
    }
    if (fd) {
        run("position_cosheaf_composition", [&] { boundary_matrices(position_cosheaf(*fd).cosheaf()).check_composition(); });
        run("lemma1_position", [&] { check_lemma1(boundary_matrices(position_cosheaf(*fd).cosheaf())); });
        run("duality_dimensions", [&] { duality_dimensions(*fd); });
        run("stress_roundtrip", [&] {
            for (const auto& s : analyze(fd->truss).self_stresses) {
                const ForceDiagram d = force_diagram_from_stress(*fd, s);
                if (stress_from_force_diagram(*fd, face_positions(d)) != s)
                    throw InternalError("stress roundtrip failed");
            }
        });
        run("dual_repositioning_is_trivial", [&] {
            const std::size_t n = 2 * fd->complex().face_count();
            for (std::size_t i = 0; i < n; ++i) {
                Vector zeta = zero_vector(n);
                zeta[i] = 1;
                check_theorem3(*fd, zeta);
            }
        });
        run("face_flip_invariance", [&] {
            const auto base = homology(position_cosheaf(*fd).cosheaf());
            for (std::size_t f = 0; f < fd->complex().face_count(); ++f) {
                const FormDiagram flipped{Truss(with_face_flipped(fd->complex(), f), fd->embedding())};
                const auto h = homology(position_cosheaf(flipped).cosheaf());
                for (int k = 0; k <= 2; ++k)
                    if (h.betti(k) != base.betti(k))
                        throw InternalError("position Betti numbers change when face " + std::to_string(f) + " is flipped");
            }
        });
    } else {
        for (const char* name : {"position_cosheaf_composition", "lemma1_position", "duality_dimensions",
                                 "stress_roundtrip", "dual_repositioning_is_trivial", "face_flip_invariance"})
            skip(name, why_not_planar);
    }
    if (doc.boundary) {
        const Truss bt = fd ? fd->truss : t;
        run("les_alternating_sum", [&] { relative_summary(to_boundary(doc, bt)); });
    } else {
        skip("les_alternating_sum", "no boundary section");
    }
    out.report = {{"command", "check"}, {"checks", checks}, {"passed", out.passed}};
    return out;
}

} // namespace homstat
