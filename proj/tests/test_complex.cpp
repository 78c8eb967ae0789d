#include <gtest/gtest.h>

#include "homstat/homstat.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace homstat;

namespace {

/// Twice the signed area enclosed by a face's edge cycle.
Rational signed_area2(const CellComplex& x, const Embedding& emb, std::size_t f) {
    Rational a = 0;
    for (const auto& oe : x.face(f).boundary) {
        const auto& ed = x.edge(oe.edge);
        const Point2 p = point2(emb, oe.sign > 0 ? ed.tail : ed.head);
        const Point2 q = point2(emb, oe.sign > 0 ? ed.head : ed.tail);
        a += cross(p, q);
    }
    return a;
}

} // namespace

TEST(Complex, RejectsMalformedInput) {
    EXPECT_THROW(build_complex(2, {{0, 2}}), InvalidInput);
    EXPECT_THROW(build_complex(2, {{1, 1}}), InvalidInput);
    // Face boundary that does not close.
    EXPECT_THROW(build_complex(3, {{0, 1}, {1, 2}, {2, 0}}, {Face{{{0, 1}, {1, 1}}}}), InvalidInput);
    EXPECT_THROW(build_complex(3, {{0, 1}, {1, 2}, {2, 0}}, {Face{{{0, 1}, {1, 1}, {2, 1}}}}, 3), InvalidInput);
}

TEST(Complex, IncidenceSignsAndCounts) {
    const CellComplex x = build_complex(3, {{0, 1}, {1, 2}, {2, 0}}, {Face{{{0, 1}, {1, 1}, {2, 1}}}});
    EXPECT_EQ(x.dimension(), 2);
    EXPECT_EQ(euler_char(x), 1);
    const auto& inc = x.incidences(1);
    ASSERT_EQ(inc.size(), 6u);
    EXPECT_EQ(inc[0], (Incidence{0, 0, -1}));
    EXPECT_EQ(inc[1], (Incidence{0, 1, 1}));
    EXPECT_EQ(x.incidences(2).size(), 3u);
    auto [left, right] = x.edge_sides(1);
    EXPECT_EQ(left, std::vector<std::size_t>{0});
    EXPECT_TRUE(right.empty());
}

TEST(Complex, SubcomplexClosure) {
    const CellComplex x = fixtures::wheel5().complex;
    Subcomplex y = Subcomplex::empty(x);
    y.edges[0] = true;
    EXPECT_FALSE(y.is_closed_in(x));
    y.vertices[0] = y.vertices[1] = true;
    EXPECT_TRUE(y.is_closed_in(x));
    EXPECT_EQ(y.count(0), 2u);
}

TEST(Planar, NoncrossingDiagnostics) {
    const Embedding sq = fixtures::plane({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    EXPECT_THROW(check_noncrossing(build_complex(4, {{0, 2}, {1, 3}}), sq), InvalidInput);
    EXPECT_NO_THROW(check_noncrossing(build_complex(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}), sq));
    const Truss c = fixtures::collinear3();
    EXPECT_THROW(check_noncrossing(c.complex, c.embedding), InvalidInput);
}

TEST(Planar, Wheel5FacesAreTraced) {
    const Truss t = fixtures::wheel5();
    const CellComplex x = planar_faces(t.complex, t.embedding);
    ASSERT_EQ(x.face_count(), 5u);
    EXPECT_EQ(euler_char(x), 2);
    EXPECT_TRUE(x.is_closed_surface());
    ASSERT_TRUE(x.exterior_face());
    EXPECT_EQ(*x.exterior_face(), 4u);
    for (std::size_t f = 0; f < 4; ++f) {
        EXPECT_EQ(x.face(f).boundary.size(), 3u);
        EXPECT_EQ(signed_area2(x, t.embedding, f), 2);
    }
    EXPECT_EQ(x.face(4).boundary.size(), 4u);
    EXPECT_EQ(signed_area2(x, t.embedding, 4), -8);
}

TEST(Planar, DisconnectedGraphRejected) {
    const Embedding emb = fixtures::plane({{0, 0}, {1, 0}, {5, 0}, {6, 1}});
    EXPECT_THROW(planar_faces(build_complex(4, {{0, 1}, {2, 3}}), emb), PreconditionError);
}

TEST(Dual, Wheel5DualCounts) {
    const FormDiagram fd = fixtures::form(fixtures::wheel5());
    const DualComplex d = poincare_dual(fd.complex());
    EXPECT_EQ(d.complex.vertex_count(), 5u);
    EXPECT_EQ(d.complex.edge_count(), 8u);
    EXPECT_EQ(d.complex.face_count(), 5u);
    EXPECT_TRUE(d.complex.is_closed_surface());
    // Dual edge runs left face -> right face.
    for (std::size_t e = 0; e < 8; ++e) {
        auto [l, r] = fd.complex().edge_sides(e);
        const auto de = *d.correspondence.edge_to_dual_edge[e];
        EXPECT_EQ(d.complex.edge(de).tail, *d.correspondence.face_to_dual_vertex[l[0]]);
        EXPECT_EQ(d.complex.edge(de).head, *d.correspondence.face_to_dual_vertex[r[0]]);
    }
}

TEST(Dual, OpenComplexRejected) {
    const CellComplex x = build_complex(3, {{0, 1}, {1, 2}, {2, 0}}, {Face{{{0, 1}, {1, 1}, {2, 1}}}});
    EXPECT_THROW(poincare_dual(x), PreconditionError);
}

TEST(ComplexProperty, RandomFormsAreSpheresWithCcwFaces) {
    gen::Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const FormDiagram fd = gen::planar_form(rng);
        const CellComplex& x = fd.complex();
        ASSERT_EQ(euler_char(x), 2);
        ASSERT_TRUE(x.is_closed_surface());
        Rational total = 0;
        for (std::size_t f = 0; f < x.face_count(); ++f) {
            const Rational a = signed_area2(x, fd.embedding(), f);
            total += a;
            if (f == fd.exterior())
                ASSERT_LT(a, 0);
            else
                ASSERT_GT(a, 0);
        }
        ASSERT_EQ(total, 0);
        const DualComplex d = poincare_dual(x);
        ASSERT_TRUE(d.complex.is_closed_surface());
        ASSERT_EQ(euler_char(d.complex), 2);
        // Double dual has the original cell counts.
        const DualComplex dd = poincare_dual(d.complex);
        ASSERT_EQ(dd.complex.vertex_count(), x.vertex_count());
        ASSERT_EQ(dd.complex.edge_count(), x.edge_count());
        ASSERT_EQ(dd.complex.face_count(), x.face_count());
        for (std::size_t v = 0; v < x.vertex_count(); ++v)
            ASSERT_EQ(dd.correspondence.face_to_dual_vertex[*d.correspondence.vertex_to_dual_face[v]], v);
        for (std::size_t e = 0; e < x.edge_count(); ++e)
            ASSERT_EQ(dd.correspondence.edge_to_dual_edge[*d.correspondence.edge_to_dual_edge[e]], e);
    }
}
