#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homstat/complex.hpp"
#include "homstat/cosheaf.hpp"
#include "homstat/errors.hpp"
#include "homstat/exactla.hpp"
#include "homstat/homology.hpp"

namespace homstat {

/// Pin-jointed truss: a complex realized in R^n by vertex positions.
struct Truss {
    CellComplex complex;
    Embedding embedding;

    Truss() = default;
    Truss(CellComplex x, Embedding emb) : complex(std::move(x)), embedding(std::move(emb)) {
        if (embedding.dim == 0)
            throw InvalidInput("ambient dimension must be at least 1");
        embedding.validate(complex);
    }

    std::size_t dim() const { return embedding.dim; }
};

struct StaticsReport {
    ChainComplex chain;
    HomologySummary homology;
    std::vector<Vector> self_stresses; ///< edge-indexed basis of H_1 F
    std::vector<Vector> dof_reps;      ///< representatives of H_0 F in C_0 F (n per vertex)
    std::size_t betti0 = 0;
    std::size_t betti1 = 0;
};

/**
 * Self-stresses and degrees of freedom from the homology of the force
 * cosheaf; ∂_1 is the equilibrium matrix.
 */
inline StaticsReport analyze(const Truss& t) {
    StaticsReport r;
    r.chain = boundary_matrices(force_cosheaf(t.complex, t.embedding));
    r.homology = homology(r.chain);
    r.self_stresses = r.homology.degree(1).representatives;
    r.dof_reps = r.homology.degree(0).representatives;
    r.betti0 = r.homology.betti(0);
    r.betti1 = r.homology.betti(1);
    return r;
}

/// Infinitesimal rigid motions at the vertices: n translations, then the
/// rotations x_i e_j - x_j e_i for i < j, as vectors in C_0.
inline std::vector<Vector> rigid_motions(const Truss& t) {
    const std::size_t n = t.dim();
    const std::size_t nv = t.complex.vertex_count();
    std::vector<Vector> motions;
    for (std::size_t i = 0; i < n; ++i) {
        Vector u = zero_vector(n * nv);
        for (std::size_t v = 0; v < nv; ++v)
            u[v * n + i] = 1;
        motions.push_back(std::move(u));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector u = zero_vector(n * nv);
            for (std::size_t v = 0; v < nv; ++v) {
                const Vector& p = t.embedding.position(v);
                u[v * n + j] = p[i];
                u[v * n + i] = -p[j];
            }
            motions.push_back(std::move(u));
        }
    return motions;
}

/// Velocity fields preserving every edge length to first order: ker ∂_1ᵀ.
inline std::vector<Vector> infinitesimal_motions(const Truss& t) {
    return kernel_basis(boundary_matrices(force_cosheaf(t.complex, t.embedding)).boundary(1).transpose());
}

/// Dimension of the affine span of the vertex positions.
inline std::size_t affine_span_dim(const Truss& t) {
    const std::size_t nv = t.complex.vertex_count();
    if (nv == 0)
        return 0;
    std::vector<Vector> diffs;
    for (std::size_t v = 1; v < nv; ++v) {
        Vector d = t.embedding.position(v);
        for (std::size_t i = 0; i < t.dim(); ++i)
            d[i] -= t.embedding.position(0)[i];
        diffs.push_back(std::move(d));
    }
    return rank_of_vectors(diffs);
}

struct MaxwellReport {
    std::size_t n = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t rigid_dim = 0;  ///< n(n+1)/2
    std::size_t rigid_rank = 0; ///< rank of the rigid motions restricted to the vertices
    std::size_t betti0 = 0;
    std::size_t betti1 = 0;
    std::size_t self_stresses = 0;
    std::optional<long> mechanisms; ///< β_0 - n(n+1)/2, only when rigid motions inject
    bool degenerate_span = false;   ///< vertices lie in an affine subspace of dimension < n
    long euler_residual = 0;        ///< n|V| - |E| - (β_0 - β_1), identically zero
    std::optional<long> residual;   ///< n|V| - |E| - rigid_dim - |M| + |S|
    std::string line;
};

/**
 * Maxwell's counting rule in dimension n from the Euler characteristic of
 * the force cosheaf. The mechanism count is only reported when the rigid
 * motions of R^n act faithfully on the vertex set.
 */
inline MaxwellReport maxwell_report(const Truss& t) {
    const StaticsReport s = analyze(t);
    MaxwellReport m;
    m.n = t.dim();
    m.vertices = t.complex.vertex_count();
    m.edges = t.complex.edge_count();
    m.rigid_dim = m.n * (m.n + 1) / 2;
    m.betti0 = s.betti0;
    m.betti1 = s.betti1;
    m.self_stresses = s.betti1;

    const auto motions = rigid_motions(t);
    const SparseMatrix dt = s.chain.boundary(1).transpose();
    for (const auto& u : motions)
        if (!is_zero(dt * u))
            throw InternalError("rigid motion changes an edge length");
    m.rigid_rank = rank_of_vectors(motions);
    m.degenerate_span = affine_span_dim(t) < m.n;

    const long lhs = static_cast<long>(m.n * m.vertices) - static_cast<long>(m.edges);
    const long b0 = static_cast<long>(m.betti0);
    const long b1 = static_cast<long>(m.betti1);
    m.euler_residual = lhs - (b0 - b1);
    if (m.euler_residual != 0)
        throw InternalError("Maxwell identity failed: n|V| - |E| != β0 - β1");

    const std::string head = std::to_string(m.n) + "·" + std::to_string(m.vertices) + " − " +
                             std::to_string(m.edges) + " = " + std::to_string(lhs) + " = ";
    if (m.rigid_rank == m.rigid_dim) {
        m.mechanisms = b0 - static_cast<long>(m.rigid_dim);
        m.residual = lhs - static_cast<long>(m.rigid_dim) - *m.mechanisms + b1;
        m.line = head + std::to_string(m.rigid_dim) + " + " + std::to_string(*m.mechanisms) +
                 " − " + std::to_string(b1);
    } else {
        m.line = head + std::to_string(b0) + " − " + std::to_string(b1);
    }
    return m;
}

/**
 * A truss X carrying an exterior loop Y, and the relative force cosheaf
 * F_{X−Y} = F_X / F_Y. Connector edges have exactly one endpoint on Y; they
 * are the lines of action of loads and reactions.
 */
struct BoundaryDecomposition {
    Truss truss;
    Subcomplex loop;
    std::vector<std::size_t> connectors;
    Cosheaf force;
    Cosheaf loop_force;
    QuotientPresentation relative;
};

/// Y is empty or a single cycle graph, closed in X.
inline void check_loop(const CellComplex& x, const Subcomplex& y) {
    if (!y.matches(x))
        throw InvalidInput("boundary mask does not match the complex");
    if (!y.is_closed_in(x))
        throw PreconditionError("boundary loop is not closed: an edge lacks an endpoint");
    if (y.count(2) != 0)
        throw PreconditionError("boundary loop cannot contain faces");
    if (y.count(0) == 0 && y.count(1) == 0)
        return;
    std::vector<std::size_t> degree(x.vertex_count(), 0);
    std::vector<std::size_t> loop_edges;
    for (std::size_t e = 0; e < x.edge_count(); ++e)
        if (y.edges[e]) {
            ++degree[x.edge(e).tail];
            ++degree[x.edge(e).head];
            loop_edges.push_back(e);
        }
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
        if (y.vertices[v] && degree[v] != 2)
            throw PreconditionError("boundary loop is not a cycle: vertex " + std::to_string(v) +
                                    " has loop degree " + std::to_string(degree[v]));
    // A 2-regular graph is a single cycle iff it is connected.
    std::vector<bool> seen(x.vertex_count(), false);
    std::vector<std::size_t> stack{x.edge(loop_edges.front()).tail};
    seen[stack.back()] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (auto e : loop_edges) {
            const auto& ed = x.edge(e);
            if (ed.tail != v && ed.head != v)
                continue;
            const std::size_t w = ed.tail == v ? ed.head : ed.tail;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
        if (y.vertices[v] && !seen[v])
            throw PreconditionError("boundary loop is not a single cycle");
}

inline BoundaryDecomposition decompose_boundary(const Truss& t, const Subcomplex& y) {
    check_loop(t.complex, y);
    BoundaryDecomposition d;
    d.truss = t;
    d.loop = y;
    for (std::size_t e = 0; e < t.complex.edge_count(); ++e) {
        const auto& ed = t.complex.edge(e);
        if (!y.edges[e] && (y.vertices[ed.tail] != y.vertices[ed.head]))
            d.connectors.push_back(e);
    }
    d.force = force_cosheaf(t.complex, t.embedding);
    auto [fy, incl] = restrict_to_subcomplex(d.force, y);
    if (y.count(1) != 0 && homology(fy).betti(1) != 0)
        throw PreconditionError("boundary loop carries a self-stress");
    d.loop_force = std::move(fy);
    d.relative = quotient_cosheaf(incl);
    return d;
}

/**
 * Basis of H_1 F_{X−Y}, expanded to edge-indexed vectors (zero on Y). The
 * connector coordinates are the loads and reactions along their lines.
 */
inline std::vector<Vector> equilibrium_stresses(const BoundaryDecomposition& d) {
    const ChainComplex c = boundary_matrices(d.relative.quotient);
    const auto basis = kernel_basis(c.boundary(1));
    std::vector<Vector> out;
    for (const auto& k : basis) {
        Vector s = zero_vector(d.truss.complex.edge_count());
        for (std::size_t i = 0; i < k.size(); ++i)
            s[c.labels[1][i].cell] = k[i];
        out.push_back(std::move(s));
    }
    return out;
}

/// Relative equilibrium matrix ∂_1 of F_{X−Y} applied to an edge-indexed stress.
inline Vector relative_net_forces(const BoundaryDecomposition& d, const Vector& stress) {
    const ChainComplex c = boundary_matrices(d.relative.quotient);
    Vector local = zero_vector(c.dim(1));
    for (std::size_t i = 0; i < local.size(); ++i)
        local[i] = stress.at(c.labels[1][i].cell);
    for (std::size_t e = 0; e < stress.size(); ++e)
        if (d.loop.edges[e] && stress[e] != 0)
            throw PreconditionError("stress is nonzero on loop edge " + std::to_string(e));
    return c.boundary(1) * local;
}

} // namespace homstat
