#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homstat/chain.hpp"
#include "homstat/complex.hpp"
#include "homstat/errors.hpp"
#include "homstat/exactla.hpp"
#include "homstat/sparse_matrix.hpp"

namespace homstat {

/**
 * Cellular cosheaf over a complex of dimension <= 2: a stalk dimension per
 * cell and, per incidence higher ▷ lower, a matrix from the higher stalk to
 * the lower stalk. `maps[k-1][i]` belongs to `base.incidences(k)[i]`.
 *
 * Zero-dimensional stalks are ordinary stalks carrying empty matrices.
 */
class Cosheaf {
  public:
    using StalkDims = std::array<std::vector<std::size_t>, 3>;
    using Maps = std::array<std::vector<SparseMatrix>, 2>;

    Cosheaf() = default;

    Cosheaf(CellComplex base, StalkDims stalks, Maps maps)
        : base_(std::move(base)), stalks_(std::move(stalks)), maps_(std::move(maps)) {
        for (int d = 0; d <= 2; ++d)
            if (stalks_[d].size() != base_.cell_count(d))
                throw InvalidInput("stalk list for dimension " + std::to_string(d) +
                                   " does not match the cell count");
        for (int k = 1; k <= 2; ++k) {
            const auto& incs = base_.incidences(k);
            const auto& ms = maps_[k - 1];
            if (ms.size() != incs.size())
                throw InvalidInput("cosheaf needs one matrix per incidence in degree " +
                                   std::to_string(k));
            for (std::size_t i = 0; i < incs.size(); ++i)
                if (ms[i].rows() != stalks_[k - 1][incs[i].lower] ||
                    ms[i].cols() != stalks_[k][incs[i].higher])
                    throw InvalidInput("cosheaf matrix for incidence " + std::to_string(i) +
                                       " in degree " + std::to_string(k) + " has the wrong shape");
        }
    }

    const CellComplex& base() const { return base_; }
    std::size_t stalk_dim(int dim, std::size_t cell) const { return stalks_.at(dim).at(cell); }
    const std::vector<std::size_t>& stalks(int dim) const { return stalks_.at(dim); }
    const StalkDims& stalk_dims() const { return stalks_; }

    const SparseMatrix& map(int k, std::size_t incidence) const {
        return maps_.at(k - 1).at(incidence);
    }
    const Maps& maps() const { return maps_; }

    /// Matrix of higher ▷ lower, if the cells are incident.
    const SparseMatrix* map_between(int k, std::size_t higher, std::size_t lower) const {
        auto idx = base_.incidence_index(k, higher, lower);
        return idx ? &maps_[k - 1][*idx] : nullptr;
    }

    std::size_t chain_dim(int k) const {
        if (k < 0 || k > 2)
            return 0;
        std::size_t total = 0;
        for (auto s : stalks_[k])
            total += s;
        return total;
    }

    /// Start of each cell's stalk inside C_k.
    std::vector<std::size_t> offsets(int k) const {
        std::vector<std::size_t> off(stalks_.at(k).size() + 1, 0);
        for (std::size_t i = 0; i < stalks_[k].size(); ++i)
            off[i + 1] = off[i] + stalks_[k][i];
        return off;
    }

  private:
    CellComplex base_;
    StalkDims stalks_;
    Maps maps_;
};

/**
 * Stalkwise linear maps φ_x : F_x -> G_x between cosheaves on the same base.
 * `components[d][x]` has shape (dim G_x) x (dim F_x).
 */
struct CosheafMap {
    Cosheaf source;
    Cosheaf target;
    std::array<std::vector<SparseMatrix>, 3> components;

    void validate_shapes() const {
        if (!(source.base() == target.base()))
            throw InvalidInput("cosheaf map between different base complexes");
        for (int d = 0; d <= 2; ++d) {
            if (components[d].size() != source.base().cell_count(d))
                throw InvalidInput("cosheaf map needs one matrix per cell");
            for (std::size_t x = 0; x < components[d].size(); ++x)
                if (components[d][x].rows() != target.stalk_dim(d, x) ||
                    components[d][x].cols() != source.stalk_dim(d, x))
                    throw InvalidInput("cosheaf map matrix has the wrong shape");
        }
    }
};

inline CosheafMap identity_map(const Cosheaf& f) {
    CosheafMap phi{f, f, {}};
    for (int d = 0; d <= 2; ++d)
        for (auto s : f.stalks(d))
            phi.components[d].push_back(SparseMatrix::identity(s));
    return phi;
}

struct MapViolation {
    int degree = 0;
    std::size_t higher = 0;
    std::size_t lower = 0;
    SparseMatrix via_source; ///< φ_lower ∘ F_{higher ▷ lower}
    SparseMatrix via_target; ///< G_{higher ▷ lower} ∘ φ_higher
};

/// Every incidence whose commuting square fails, with both composites.
inline std::vector<MapViolation> check_cosheaf_map(const CosheafMap& phi) {
    phi.validate_shapes();
    std::vector<MapViolation> bad;
    for (int k = 1; k <= 2; ++k) {
        const auto& incs = phi.source.base().incidences(k);
        for (std::size_t i = 0; i < incs.size(); ++i) {
            const auto& inc = incs[i];
            SparseMatrix lhs = phi.components[k - 1][inc.lower] * phi.source.map(k, i);
            SparseMatrix rhs = phi.target.map(k, i) * phi.components[k][inc.higher];
            if (!(lhs == rhs))
                bad.push_back({k, inc.higher, inc.lower, std::move(lhs), std::move(rhs)});
        }
    }
    return bad;
}

/// Copy of V = R^m on every cell, identity matrices on every incidence.
inline Cosheaf constant_cosheaf(const CellComplex& x, std::size_t m) {
    Cosheaf::StalkDims stalks;
    for (int d = 0; d <= 2; ++d)
        stalks[d].assign(x.cell_count(d), m);
    Cosheaf::Maps maps;
    for (int k = 1; k <= 2; ++k)
        maps[k - 1].assign(x.incidences(k).size(), SparseMatrix::identity(m));
    return Cosheaf(x, std::move(stalks), std::move(maps));
}

/**
 * Force cosheaf of a realization p : V -> R^n. Vertex stalks R^n, edge stalks
 * R, face stalks 0. Both end maps of edge t -> h send the stalk basis vector
 * to p(h) - p(t); the incidence signs in ∂ turn this into the opposite pulls
 * p(h) - p(t) at h and p(t) - p(h) at t.
 */
inline Cosheaf force_cosheaf(const CellComplex& x, const Embedding& emb) {
    emb.validate(x);
    Cosheaf::StalkDims stalks{std::vector<std::size_t>(x.vertex_count(), emb.dim),
                              std::vector<std::size_t>(x.edge_count(), 1),
                              std::vector<std::size_t>(x.face_count(), 0)};
    Cosheaf::Maps maps;
    for (const auto& inc : x.incidences(1)) {
        const Vector d = emb.edge_vector(x, inc.higher);
        SparseMatrix col(emb.dim, 1);
        for (std::size_t i = 0; i < emb.dim; ++i)
            col.set(i, 0, d[i]);
        maps[0].push_back(std::move(col));
    }
    for (std::size_t i = 0; i < x.incidences(2).size(); ++i)
        maps[1].emplace_back(1, 0);
    return Cosheaf(x, std::move(stalks), std::move(maps));
}

/**
 * Spline cosheaf of a graph: edge stalks are polynomials of degree <= m in
 * the edge parameter t (tail at t = 0, head at t = 1) in the monomial basis;
 * vertex stalks are order-r jets (value and first r derivatives). Each map
 * evaluates the jet at the corresponding endpoint.
 */
inline Cosheaf spline_cosheaf(const CellComplex& graph, std::size_t m, std::size_t r) {
    if (graph.face_count() != 0)
        throw PreconditionError("spline cosheaf is defined on graphs");
    auto jet = [&](bool at_one) {
        SparseMatrix j(r + 1, m + 1);
        for (std::size_t k = 0; k <= r; ++k)
            for (std::size_t p = k; p <= m; ++p) {
                if (!at_one && p != k)
                    continue;
                Integer falling = 1;
                for (std::size_t i = 0; i < k; ++i)
                    falling *= Integer(p - i);
                j.set(k, p, Rational(falling));
            }
        return j;
    };
    const SparseMatrix at_tail = jet(false);
    const SparseMatrix at_head = jet(true);
    Cosheaf::StalkDims stalks{std::vector<std::size_t>(graph.vertex_count(), r + 1),
                              std::vector<std::size_t>(graph.edge_count(), m + 1), {}};
    Cosheaf::Maps maps;
    for (const auto& inc : graph.incidences(1))
        maps[0].push_back(inc.lower == graph.edge(inc.higher).tail ? at_tail : at_head);
    return Cosheaf(graph, std::move(stalks), std::move(maps));
}

/// Order-r jet at t = 0 or t = 1 of the polynomial with monomial coefficients `c`.
inline Vector polynomial_jet(const Vector& c, std::size_t r, bool at_one) {
    Vector jet = zero_vector(r + 1);
    for (std::size_t k = 0; k <= r; ++k)
        for (std::size_t p = k; p < c.size(); ++p) {
            if (!at_one && p != k)
                continue;
            Integer falling = 1;
            for (std::size_t i = 0; i < k; ++i)
                falling *= Integer(p - i);
            jet[k] += Rational(falling) * c[p];
        }
    return jet;
}

/// Splits a 1-chain of the spline cosheaf into per-edge coefficient vectors.
inline std::vector<Vector> edge_polynomials(const CellComplex& graph, std::size_t m, const Vector& chain) {
    if (chain.size() != graph.edge_count() * (m + 1))
        throw InvalidInput("spline chain has the wrong length");
    std::vector<Vector> out;
    for (std::size_t e = 0; e < graph.edge_count(); ++e)
        out.emplace_back(chain.begin() + static_cast<long>(e * (m + 1)),
                         chain.begin() + static_cast<long>((e + 1) * (m + 1)));
    return out;
}

/**
 * F_Y: stalks of F on the closed subcomplex Y, zero elsewhere, with the
 * inclusion F_Y -> F (identity over Y, zero over X - Y).
 */
inline std::pair<Cosheaf, CosheafMap> restrict_to_subcomplex(const Cosheaf& f, const Subcomplex& y) {
    const CellComplex& x = f.base();
    if (!y.is_closed_in(x))
        throw PreconditionError("subcomplex is not closed");
    Cosheaf::StalkDims stalks;
    for (int d = 0; d <= 2; ++d)
        for (std::size_t c = 0; c < x.cell_count(d); ++c)
            stalks[d].push_back(y.contains(d, c) ? f.stalk_dim(d, c) : 0);
    Cosheaf::Maps maps;
    for (int k = 1; k <= 2; ++k) {
        const auto& incs = x.incidences(k);
        for (std::size_t i = 0; i < incs.size(); ++i) {
            if (y.contains(k, incs[i].higher))
                maps[k - 1].push_back(f.map(k, i));
            else
                maps[k - 1].emplace_back(stalks[k - 1][incs[i].lower], 0);
        }
    }
    Cosheaf fy(x, std::move(stalks), std::move(maps));
    CosheafMap incl{fy, f, {}};
    for (int d = 0; d <= 2; ++d)
        for (std::size_t c = 0; c < x.cell_count(d); ++c)
            incl.components[d].push_back(y.contains(d, c)
                                             ? SparseMatrix::identity(f.stalk_dim(d, c))
                                             : SparseMatrix(f.stalk_dim(d, c), 0));
    return {std::move(fy), std::move(incl)};
}

/**
 * Quotient G/F of an inclusion F -> G, together with per-cell projections
 * G_x -> (G/F)_x and sections (G/F)_x -> G_x. projection ∘ inclusion = 0 and
 * projection ∘ section = identity hold stalkwise.
 */
struct QuotientPresentation {
    CosheafMap inclusion;
    Cosheaf quotient;
    std::array<std::vector<SparseMatrix>, 3> projection;
    std::array<std::vector<SparseMatrix>, 3> section;

    const Cosheaf& sub() const { return inclusion.source; }
    const Cosheaf& total() const { return inclusion.target; }

    CosheafMap projection_map() const { return {inclusion.target, quotient, projection}; }
};

namespace detail {

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<SparseMatrix> inverse(const SparseMatrix& b) {
    const std::size_t n = b.rows();
    if (b.cols() != n)
        throw InvalidInput("inverse of a non-square matrix");
    SparseMatrix aug(n, 2 * n);
    for (const auto& [ij, v] : b.entries())
        aug.set(ij.first, ij.second, v);
    for (std::size_t i = 0; i < n; ++i)
        aug.set(i, n + i, 1);
    const RowEchelon e = reduced_row_echelon(aug);
    if (e.rank() != n || (n > 0 && e.pivots.back() >= n))
        return std::nullopt;
    SparseMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv.set(i, j, e.rows[i][n + j]);
    return inv;
}

/// Orthogonal complement of the column space of `phi` by exact Gram–Schmidt.
inline SparseMatrix orthogonal_complement(const SparseMatrix& phi) {
    const std::size_t n = phi.rows();
    std::vector<Vector> ortho;
    auto add_residual = [&](Vector v) -> std::optional<Vector> {
        for (const auto& u : ortho) {
            const Rational c = dot(v, u) / dot(u, u);
            if (c != 0)
                for (std::size_t i = 0; i < n; ++i)
                    v[i] -= c * u[i];
        }
        if (is_zero(v))
            return std::nullopt;
        ortho.push_back(v);
        return v;
    };
    for (std::size_t j = 0; j < phi.cols(); ++j)
        add_residual(phi.column(j));
    std::vector<Vector> complement;
    for (std::size_t i = 0; i < n && ortho.size() < n; ++i) {
        Vector e = zero_vector(n);
        e[i] = 1;
        if (auto r = add_residual(std::move(e))) {
            // Rescale to a primitive integer vector with positive leading entry.
            Integer l = 1;
            for (const auto& c : *r)
                l = lcm(l, denominator(c));
            Integer g = 0;
            for (const auto& c : *r)
                g = gcd(g, numerator(c) * (l / denominator(c)));
            Rational s = Rational(l, g);
            for (const auto& c : *r)
                if (c != 0) {
                    if (c < 0)
                        s = -s;
                    break;
                }
            for (auto& c : *r)
                c *= s;
            complement.push_back(std::move(*r));
        }
    }
    return SparseMatrix::from_columns(n, complement);
}

} // namespace detail

/**
 * Quotient presentation using caller-chosen complements: `complements[d][x]`
 * spans a complement of im φ_x in G_x. Checks stalkwise injectivity, the
 * commuting squares, and that induced maps kill the image of F.
 */
inline QuotientPresentation
quotient_with_complements(const CosheafMap& incl,
                          const std::array<std::vector<SparseMatrix>, 3>& complements) {
    incl.validate_shapes();
    if (auto bad = check_cosheaf_map(incl); !bad.empty())
        throw PreconditionError("inclusion violates the commuting square at incidence " +
                                std::to_string(bad.front().higher) + " ▷ " +
                                std::to_string(bad.front().lower));
    const CellComplex& x = incl.source.base();
    QuotientPresentation q{incl, {}, {}, {}};
    Cosheaf::StalkDims stalks;
    for (int d = 0; d <= 2; ++d)
        for (std::size_t c = 0; c < x.cell_count(d); ++c) {
            const SparseMatrix& phi = incl.components[d][c];
            if (rank(phi) != phi.cols())
                throw PreconditionError("stalk map over cell (" + std::to_string(d) + ", " +
                                        std::to_string(c) + ") is not injective");
            const SparseMatrix& comp = complements.at(d).at(c);
            if (comp.rows() != phi.rows() || comp.cols() + phi.cols() != phi.rows())
                throw InvalidInput("complement has the wrong shape");
            SparseMatrix basis(phi.rows(), phi.rows());
            for (const auto& [ij, v] : phi.entries())
                basis.set(ij.first, ij.second, v);
            for (const auto& [ij, v] : comp.entries())
                basis.set(ij.first, phi.cols() + ij.second, v);
            auto inv = detail::inverse(basis);
            if (!inv)
                throw InvalidInput("complement does not complete the image to a basis");
            SparseMatrix proj(comp.cols(), phi.rows());
            for (const auto& [ij, v] : inv->entries())
                if (ij.first >= phi.cols())
                    proj.set(ij.first - phi.cols(), ij.second, v);
            stalks[d].push_back(comp.cols());
            q.projection[d].push_back(std::move(proj));
            q.section[d].push_back(comp);
        }
    Cosheaf::Maps maps;
    for (int k = 1; k <= 2; ++k) {
        const auto& incs = x.incidences(k);
        for (std::size_t i = 0; i < incs.size(); ++i) {
            const auto& inc = incs[i];
            const SparseMatrix pg = q.projection[k - 1][inc.lower] * incl.target.map(k, i);
            if (!(pg * incl.components[k][inc.higher]).is_zero())
                throw InternalError("induced quotient map does not kill the subcosheaf");
            maps[k - 1].push_back(pg * q.section[k][inc.higher]);
        }
    }
    q.quotient = Cosheaf(x, std::move(stalks), std::move(maps));
    return q;
}

/**
 * Quotient cosheaf G/F with each quotient stalk realized as the orthogonal
 * complement of the image of F_x inside G_x.
 */
inline QuotientPresentation quotient_cosheaf(const CosheafMap& incl) {
    incl.validate_shapes();
    std::array<std::vector<SparseMatrix>, 3> complements;
    for (int d = 0; d <= 2; ++d)
        for (const auto& phi : incl.components[d])
            complements[d].push_back(detail::orthogonal_complement(phi));
    return quotient_with_complements(incl, complements);
}

/**
 * Assemble the cosheaf chain complex: block (lower, higher) of ∂_k is
 * [higher : lower] · F_{higher ▷ lower}. Throws InternalError if ∂_1∘∂_2 ≠ 0.
 */
inline ChainComplex boundary_matrices(const Cosheaf& f) {
    const CellComplex& x = f.base();
    const int top = std::max(1, x.dimension());
    ChainComplex c;
    c.dims.resize(static_cast<std::size_t>(top) + 1);
    c.labels.resize(c.dims.size());
    c.boundaries.resize(c.dims.size());
    for (int k = 0; k <= top; ++k) {
        c.dims[k] = f.chain_dim(k);
        for (std::size_t cell = 0; cell < x.cell_count(k); ++cell)
            for (std::size_t s = 0; s < f.stalk_dim(k, cell); ++s)
                c.labels[k].push_back({k, cell, s});
    }
    c.boundaries[0] = SparseMatrix(0, c.dims[0]);
    for (int k = 1; k <= top; ++k) {
        const auto hi = f.offsets(k);
        const auto lo = f.offsets(k - 1);
        SparseMatrix d(c.dims[k - 1], c.dims[k]);
        const auto& incs = x.incidences(k);
        for (std::size_t i = 0; i < incs.size(); ++i) {
            if (incs[i].coefficient == 0)
                continue;
            for (const auto& [ij, v] : f.map(k, i).entries())
                d.add(lo[incs[i].lower] + ij.first, hi[incs[i].higher] + ij.second,
                      v * incs[i].coefficient);
        }
        c.boundaries[k] = std::move(d);
    }
    c.check_composition();
    return c;
}

/// Block-diagonal matrix of a cosheaf map on k-chains.
inline SparseMatrix chain_map(const CosheafMap& phi, int k) {
    const auto src = phi.source.offsets(k);
    const auto tgt = phi.target.offsets(k);
    SparseMatrix m(phi.target.chain_dim(k), phi.source.chain_dim(k));
    for (std::size_t c = 0; c < phi.components[k].size(); ++c)
        for (const auto& [ij, v] : phi.components[k][c].entries())
            m.set(tgt[c] + ij.first, src[c] + ij.second, v);
    return m;
}

} // namespace homstat
