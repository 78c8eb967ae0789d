#include <gtest/gtest.h>

#include "homstat/homstat.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random.hpp"

using namespace homstat;

TEST(Statics, Wheel5) {
    const StaticsReport s = analyze(fixtures::wheel5());
    EXPECT_EQ(s.betti0, 3u);
    EXPECT_EQ(s.betti1, 1u);
    ASSERT_EQ(s.self_stresses.size(), 1u);
    EXPECT_EQ(s.self_stresses[0], (Vector{1, 1, 1, 1, Rational(-1, 2), Rational(-1, 2), Rational(-1, 2), Rational(-1, 2)}));
    const MaxwellReport m = maxwell_report(fixtures::wheel5());
    EXPECT_EQ(m.line, "2·5 − 8 = 2 = 3 + 0 − 1");
    EXPECT_EQ(m.mechanisms, 0);
    EXPECT_EQ(m.residual, 0);
    EXPECT_FALSE(m.degenerate_span);
}

TEST(Statics, TriangleIsRigid) {
    const MaxwellReport m = maxwell_report(fixtures::tri3());
    EXPECT_EQ(m.betti0, 3u);
    EXPECT_EQ(m.betti1, 0u);
    EXPECT_EQ(m.mechanisms, 0);
}

TEST(Statics, SquareHasShearMechanism) {
    const Truss t = fixtures::c4();
    const MaxwellReport m = maxwell_report(t);
    EXPECT_EQ(m.mechanisms, 1);
    EXPECT_EQ(m.line, "2·4 − 4 = 4 = 3 + 1 − 0");
    const Vector shear{0, 0, 0, 0, 1, 0, 1, 0};
    const SparseMatrix dt = analyze(t).chain.boundary(1).transpose();
    EXPECT_TRUE(is_zero(dt * shear));
    auto rigid = rigid_motions(t);
    EXPECT_EQ(rank_of_vectors(rigid), 3u);
    rigid.push_back(shear);
    EXPECT_EQ(rank_of_vectors(rigid), 4u);
}

TEST(Statics, CollinearDegenerateGeometry) {
    const Truss t = fixtures::collinear3();
    const MaxwellReport m = maxwell_report(t);
    EXPECT_EQ(m.betti1, 1u);
    EXPECT_EQ(m.betti0, 4u);
    EXPECT_EQ(m.euler_residual, 0);
    EXPECT_TRUE(m.degenerate_span);
    EXPECT_EQ(m.rigid_rank, 3u);
    EXPECT_EQ(m.mechanisms, 1);
    EXPECT_EQ(affine_span_dim(t), 1u);
    // On the line itself the same bars are a rigid, stressed chain.
    Embedding line{1, {{0}, {1}, {2}}};
    const MaxwellReport m1 = maxwell_report(Truss(t.complex, line));
    EXPECT_EQ(m1.betti0, 1u);
    EXPECT_EQ(m1.betti1, 1u);
    EXPECT_EQ(m1.mechanisms, 0);
    EXPECT_FALSE(m1.degenerate_span);
}

TEST(Statics, FewVerticesMakeRigidMotionsDependent) {
    // Two vertices in R^3: rotations about the bar do nothing.
    const Truss t(build_complex(2, {{0, 1}}), Embedding{3, {{0, 0, 0}, {1, 0, 0}}});
    const MaxwellReport m = maxwell_report(t);
    EXPECT_EQ(m.rigid_rank, 5u);
    EXPECT_FALSE(m.mechanisms);
    EXPECT_EQ(m.line, "3·2 − 1 = 5 = 5 − 0");
}

TEST(Statics, LoopValidation) {
    const Truss t = fixtures::wheel5();
    Subcomplex y = Subcomplex::empty(t.complex);
    for (std::size_t v = 1; v <= 4; ++v)
        y.vertices[v] = true;
    for (std::size_t e = 4; e <= 6; ++e)
        y.edges[e] = true;
    EXPECT_THROW(check_loop(t.complex, y), PreconditionError); // path, not a cycle
    y.edges[7] = true;
    EXPECT_NO_THROW(check_loop(t.complex, y));
    y.vertices[0] = true;
    EXPECT_THROW(check_loop(t.complex, y), PreconditionError); // isolated loop vertex
}

TEST(Statics, Loaded1Decomposition) {
    const TrussDocument doc = fixtures::document("loaded1");
    const Truss t = to_form_diagram(doc).truss;
    const BoundaryDecomposition d = to_boundary(doc, t);
    EXPECT_EQ(d.connectors, (std::vector<std::size_t>{7, 8, 9}));
    const auto eq = equilibrium_stresses(d);
    ASSERT_EQ(eq.size(), 2u);
    for (const auto& s : eq) {
        EXPECT_TRUE(is_zero(relative_net_forces(d, s)));
        for (std::size_t e = 3; e <= 6; ++e)
            EXPECT_EQ(s[e], 0);
    }
    // The K4 self-stress of the loaded triangle plus a load pattern along the connectors.
    EXPECT_EQ(eq[0], (Vector{1, 1, 1, 0, 0, 0, 0, 0, 0, 0, -3, -3, -3}));
    EXPECT_EQ(eq[1], (Vector{0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1}));
}

TEST(StaticsProperty, MaxwellIdentityMatchesOracle) {
    gen::Rng rng(41);
    for (std::size_t n : {2u, 3u})
        for (int trial = 0; trial < 40; ++trial) {
            const Truss t = gen::truss(rng, n);
            const MaxwellReport m = maxwell_report(t);
            const SparseMatrix d1 = analyze(t).chain.boundary(1);
            ASSERT_EQ(m.betti1, oracle::nullity(d1));
            ASSERT_EQ(m.betti0, d1.rows() - oracle::matrix_rank(d1));
            ASSERT_EQ(static_cast<long>(n * m.vertices) - static_cast<long>(m.edges),
                      static_cast<long>(m.betti0) - static_cast<long>(m.betti1));
            if (m.mechanisms) {
                ASSERT_EQ(m.residual, 0);
            }
        }
}

TEST(StaticsProperty, SelfStressesAreInEquilibrium) {
    gen::Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const Truss t = gen::truss(rng, 2, 4, 12);
        for (const auto& s : analyze(t).self_stresses)
            ASSERT_TRUE(is_zero(net_forces(t, s)));
        for (const auto& u : infinitesimal_motions(t))
            ASSERT_TRUE(is_zero(analyze(t).chain.boundary(1).transpose() * u));
    }
}
