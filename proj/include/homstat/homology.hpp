#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "homstat/chain.hpp"
#include "homstat/cosheaf.hpp"
#include "homstat/errors.hpp"
#include "homstat/exactla.hpp"

namespace homstat {

struct DegreeHomology {
    std::size_t betti = 0;
    std::vector<Vector> cycles;          ///< echelon basis of ker ∂_k
    std::vector<Vector> boundaries;      ///< echelon basis of im ∂_{k+1}
    std::vector<Vector> representatives; ///< cycles reduced mod boundaries, in echelon form
};

struct HomologySummary {
    std::vector<DegreeHomology> degrees;

    std::size_t betti(int k) const {
        return k < 0 || k >= static_cast<int>(degrees.size())
                   ? 0
                   : degrees[static_cast<std::size_t>(k)].betti;
    }
    const DegreeHomology& degree(int k) const { return degrees.at(static_cast<std::size_t>(k)); }
};

/**
 * H_k = ker ∂_k / im ∂_{k+1} in every degree, with canonical representatives:
 * kernel vectors reduced against the echelon image basis and echelonized.
 */
inline HomologySummary homology(const ChainComplex& c) {
    c.check_composition();
    HomologySummary h;
    for (int k = 0; k <= c.top_degree(); ++k) {
        DegreeHomology dh;
        dh.cycles = kernel_basis(c.boundary(k));
        SubspaceReducer image = SubspaceReducer::column_space(c.boundary(k + 1));
        dh.boundaries = image.basis().rows;
        std::vector<Vector> reduced;
        reduced.reserve(dh.cycles.size());
        for (const auto& z : dh.cycles)
            reduced.push_back(image.reduce(z));
        dh.representatives = span_echelon(reduced, c.dim(k)).rows;
        dh.betti = dh.cycles.size() - image.dim();
        if (dh.representatives.size() != dh.betti)
            throw InternalError("homology representatives in degree " + std::to_string(k) +
                                " do not match the Betti number");
        h.degrees.push_back(std::move(dh));
    }
    return h;
}

inline HomologySummary homology(const Cosheaf& f) { return homology(boundary_matrices(f)); }

/// Σ (-1)^k dim C_k.
inline long euler_characteristic(const ChainComplex& c) {
    long chi = 0;
    for (int k = 0; k <= c.top_degree(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(c.dim(k));
    return chi;
}

/// Σ (-1)^k β_k.
inline long euler_characteristic(const HomologySummary& h) {
    long chi = 0;
    for (std::size_t k = 0; k < h.degrees.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(h.degrees[k].betti);
    return chi;
}

/// Chains and homology share an Euler characteristic; mismatch is an InternalError.
inline long check_lemma1(const ChainComplex& c, const HomologySummary& h) {
    const long chains = euler_characteristic(c);
    const long classes = euler_characteristic(h);
    if (chains != classes)
        throw InternalError("Euler characteristic of chains (" + std::to_string(chains) +
                            ") differs from that of homology (" + std::to_string(classes) + ")");
    return chains;
}

inline long check_lemma1(const ChainComplex& c) { return check_lemma1(c, homology(c)); }

/**
 * Matrix of the map H_k(source) -> H_k(target) induced by the chain map
 * `f_k`, in the representative bases of both summaries. Column j expresses
 * the image of source representative j in the target representatives.
 */
inline SparseMatrix induced_map(const HomologySummary& source, const HomologySummary& target,
                                const SparseMatrix& f_k, int k) {
    const auto& src = source.degree(k);
    const auto& tgt = target.degree(k);
    const std::size_t n = f_k.rows();
    std::vector<Vector> columns = tgt.boundaries;
    columns.insert(columns.end(), tgt.representatives.begin(), tgt.representatives.end());
    const SparseMatrix basis = SparseMatrix::from_columns(n, columns);
    SparseMatrix out(tgt.betti, src.betti);
    for (std::size_t j = 0; j < src.representatives.size(); ++j) {
        auto coeffs = solve_particular(basis, f_k * src.representatives[j]);
        if (!coeffs)
            throw InternalError("chain map does not send cycles to cycles in degree " +
                                std::to_string(k));
        for (std::size_t i = 0; i < tgt.betti; ++i)
            out.set(i, j, (*coeffs)[tgt.boundaries.size() + i]);
    }
    return out;
}

struct LesDegree {
    int k = 0;
    std::size_t betti_sub = 0;
    std::size_t betti_total = 0;
    std::size_t betti_quotient = 0;
    std::size_t rank_inclusion = 0;  ///< H_k(A) -> H_k(B)
    std::size_t rank_projection = 0; ///< H_k(B) -> H_k(B/A)
    std::size_t rank_connecting = 0; ///< H_k(B/A) -> H_{k-1}(A), by exactness
};

struct LesReport {
    std::vector<LesDegree> degrees;
    long alternating_sum = 0;
    HomologySummary sub;
    HomologySummary total;
    HomologySummary quotient;

    const LesDegree& degree(int k) const { return degrees.at(static_cast<std::size_t>(k)); }
};

/**
 * Homology of A, B and B/A for a quotient presentation, the ranks of the
 * induced maps H_k A -> H_k B and H_k B -> H_k B/A, and the connecting ranks
 * implied by exactness. Throws InternalError if the alternating sum along
 * the long exact sequence is nonzero or if exactness is inconsistent with
 * the computed ranks.
 */
inline LesReport les_dimension_check(const QuotientPresentation& q) {
    const ChainComplex ca = boundary_matrices(q.sub());
    const ChainComplex cb = boundary_matrices(q.total());
    const ChainComplex cq = boundary_matrices(q.quotient);
    LesReport r;
    r.sub = homology(ca);
    r.total = homology(cb);
    r.quotient = homology(cq);
    const CosheafMap proj = q.projection_map();
    const int top = cb.top_degree();
    for (int k = 0; k <= top; ++k) {
        LesDegree d;
        d.k = k;
        d.betti_sub = r.sub.betti(k);
        d.betti_total = r.total.betti(k);
        d.betti_quotient = r.quotient.betti(k);
        d.rank_inclusion = rank(induced_map(r.sub, r.total, chain_map(q.inclusion, k), k));
        d.rank_projection = rank(induced_map(r.total, r.quotient, chain_map(proj, k), k));
        if (d.rank_inclusion + d.rank_projection != d.betti_total)
            throw InternalError("sequence is not exact at H_" + std::to_string(k) + " of the total");
        if (d.rank_projection > d.betti_quotient)
            throw InternalError("projection rank exceeds the quotient Betti number");
        d.rank_connecting = d.betti_quotient - d.rank_projection;
        r.alternating_sum += (k % 2 == 0 ? 1 : -1) *
                             (static_cast<long>(d.betti_sub) - static_cast<long>(d.betti_total) +
                              static_cast<long>(d.betti_quotient));
        r.degrees.push_back(d);
    }
    for (int k = 0; k <= top; ++k) {
        const std::size_t incoming = k + 1 <= top ? r.degrees[k + 1].rank_connecting : 0;
        if (incoming + r.degrees[k].rank_inclusion != r.degrees[k].betti_sub)
            throw InternalError("sequence is not exact at H_" + std::to_string(k) + " of the sub");
    }
    if (r.degrees[0].rank_connecting != 0)
        throw InternalError("connecting map out of degree 0 must vanish");
    if (r.alternating_sum != 0)
        throw InternalError("alternating sum along the long exact sequence is " +
                            std::to_string(r.alternating_sum));
    return r;
}

} // namespace homstat
