#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "homstat/rational.hpp"
#include "homstat/sparse_matrix.hpp"

namespace homstat {

/**
 * Reduced row echelon basis of a row space: `rows[i]` has a leading 1 at
 * column `pivots[i]` and zeros in every other pivot column. Pivots ascend.
 */
struct RowEchelon {
    std::size_t cols = 0;
    std::vector<std::size_t> pivots;
    std::vector<Vector> rows;

    std::size_t rank() const { return pivots.size(); }
};

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

inline void make_primitive(IntRow& row) {
    if (row.empty())
        return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
        g = gcd(g, v);
        if (g == 1)
            break;
    }
    if (row.front().second < 0)
        g = -g;
    if (g != 1)
        for (auto& [c, v] : row)
            v /= g;
}

/// Scale a rational row by the lcm of its denominators; result is primitive.
inline IntRow integer_row(const std::vector<std::pair<std::size_t, Rational>>& row) {
    Integer l = 1;
    for (const auto& [c, v] : row)
        l = lcm(l, denominator(v));
    IntRow out;
    out.reserve(row.size());
    for (const auto& [c, v] : row)
        out.emplace_back(c, numerator(v) * (l / denominator(v)));
    make_primitive(out);
    return out;
}

/// a * target - b * pivot over sorted sparse rows, zeros dropped; primitive.
inline IntRow combine(const Integer& a, const IntRow& target, const Integer& b, const IntRow& pivot) {
    IntRow out;
    out.reserve(pivot.size() + target.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < pivot.size() || j < target.size()) {
        if (j == target.size() || (i < pivot.size() && pivot[i].first < target[j].first)) {
            out.emplace_back(pivot[i].first, -b * pivot[i].second);
            ++i;
        } else if (i == pivot.size() || target[j].first < pivot[i].first) {
            out.emplace_back(target[j].first, a * target[j].second);
            ++j;
        } else {
            Integer v = a * target[j].second - b * pivot[i].second;
            if (v != 0)
                out.emplace_back(target[j].first, std::move(v));
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    return out;
}

/// Clears target's leading entry, which sits in pivot's leading column.
inline IntRow eliminate(const IntRow& pivot, const IntRow& target) {
    return combine(pivot.front().second, target, target.front().second, pivot);
}

inline const Integer* entry_at(const IntRow& row, std::size_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
}

/**
 * Fraction-free forward elimination over primitive integer rows. Columns are
 * processed in ascending order; among the rows leading in the current column
 * the sparsest one is chosen as pivot (Markowitz count restricted to rows).
 * Returns pivot rows in ascending pivot order.
 */
inline std::vector<IntRow> forward_eliminate(std::vector<IntRow> active) {
    std::vector<IntRow> pivots;
    std::erase_if(active, [](const IntRow& r) { return r.empty(); });
    while (!active.empty()) {
        std::size_t lead = active.front().front().first;
        for (const auto& r : active)
            lead = std::min(lead, r.front().first);
        std::size_t best = active.size();
        for (std::size_t i = 0; i < active.size(); ++i)
            if (active[i].front().first == lead &&
                (best == active.size() || active[i].size() < active[best].size()))
                best = i;
        IntRow pivot = std::move(active[best]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        for (auto& r : active)
            if (r.front().first == lead)
                r = eliminate(pivot, r);
        std::erase_if(active, [](const IntRow& r) { return r.empty(); });
        pivots.push_back(std::move(pivot));
    }
    return pivots;
}

inline std::vector<IntRow> integer_rows(const SparseMatrix& m) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(m.rows());
    for (const auto& [ij, v] : m.entries())
        rows[ij.first].emplace_back(ij.second, v);
    std::vector<IntRow> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(integer_row(r));
    return out;
}

inline std::vector<IntRow> integer_rows(const std::vector<Vector>& vectors) {
    std::vector<IntRow> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
        std::vector<std::pair<std::size_t, Rational>> r;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c] != 0)
                r.emplace_back(c, v[c]);
        out.push_back(integer_row(r));
    }
    return out;
}

/// Clears every entry above each pivot, still in integers, then scales pivots to 1.
inline RowEchelon back_substitute(std::vector<IntRow> rows, std::size_t cols) {
    for (std::size_t i = rows.size(); i-- > 0;) {
        const std::size_t p = rows[i].front().first;
        for (std::size_t k = 0; k < i; ++k)
            if (const Integer* b = entry_at(rows[k], p))
                rows[k] = combine(rows[i].front().second, rows[k], Integer(*b), rows[i]);
    }
    RowEchelon e;
    e.cols = cols;
    for (const auto& r : rows) {
        Vector v = zero_vector(cols);
        const Rational lead(r.front().second);
        for (const auto& [c, x] : r)
            v[c] = Rational(x) / lead;
        e.pivots.push_back(r.front().first);
        e.rows.push_back(std::move(v));
    }
    return e;
}

} // namespace detail

/// Reduced row echelon basis of the row space of `m`.
inline RowEchelon reduced_row_echelon(const SparseMatrix& m) {
    return detail::back_substitute(detail::forward_eliminate(detail::integer_rows(m)), m.cols());
}

/// Reduced row echelon basis of the span of `vectors` (each of length `dim`).
inline RowEchelon span_echelon(const std::vector<Vector>& vectors, std::size_t dim) {
    for (const auto& v : vectors)
        if (v.size() != dim)
            throw InvalidInput("vector length mismatch in span");
    return detail::back_substitute(detail::forward_eliminate(detail::integer_rows(vectors)), dim);
}

/// Exact rank over the rationals.
inline std::size_t rank(const SparseMatrix& m) {
    return detail::forward_eliminate(detail::integer_rows(m)).size();
}

inline std::size_t rank_of_vectors(const std::vector<Vector>& vectors) {
    return detail::forward_eliminate(detail::integer_rows(vectors)).size();
}

/**
 * Basis of the null space of `m`, returned in reduced echelon form (so the
 * first nonzero coordinate of every vector is 1).
 */
inline std::vector<Vector> kernel_basis(const SparseMatrix& m) {
    // With columns reversed, the free-column kernel vectors read back in the
    // original order are already the reduced echelon basis of the kernel.
    const std::size_t n = m.cols();
    SparseMatrix reversed(m.rows(), n);
    for (const auto& [ij, v] : m.entries())
        reversed.set(ij.first, n - 1 - ij.second, v);
    const RowEchelon e = reduced_row_echelon(reversed);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = n; free-- > 0;) {
        if (is_pivot[free])
            continue;
        Vector v = zero_vector(n);
        v[n - 1 - free] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            v[n - 1 - e.pivots[i]] = -e.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/**
 * Representatives of a basis of target / im(m): the standard basis vectors
 * at coordinates that are not pivots of the column space's echelon form.
 */
inline std::vector<Vector> cokernel_reps(const SparseMatrix& m) {
    const RowEchelon e = reduced_row_echelon(m.transpose());
    std::vector<bool> is_pivot(m.rows(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vector> reps;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (is_pivot[i])
            continue;
        Vector v = zero_vector(m.rows());
        v[i] = 1;
        reps.push_back(std::move(v));
    }
    return reps;
}

/**
 * Some x with m * x = b, or nullopt when b is not in the image of m.
 * Free variables are set to zero.
 */
inline std::optional<Vector> solve_particular(const SparseMatrix& m, const Vector& b) {
    if (b.size() != m.rows())
        throw InvalidInput("right-hand side length mismatch");
    SparseMatrix augmented(m.rows(), m.cols() + 1);
    for (const auto& [ij, v] : m.entries())
        augmented.set(ij.first, ij.second, v);
    for (std::size_t i = 0; i < b.size(); ++i)
        augmented.set(i, m.cols(), b[i]);
    const RowEchelon e = reduced_row_echelon(augmented);
    Vector x = zero_vector(m.cols());
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == m.cols())
            return std::nullopt;
        x[e.pivots[i]] = e.rows[i][m.cols()];
    }
    return x;
}

/**
 * Canonical reduction of vectors modulo a fixed subspace. The reduced
 * vector vanishes on every pivot coordinate of the subspace's echelon
 * basis, so two vectors are congruent iff their reductions are equal.
 */
class SubspaceReducer {
  public:
    SubspaceReducer(const std::vector<Vector>& spanning, std::size_t dim)
        : basis_(span_echelon(spanning, dim)) {}

    explicit SubspaceReducer(RowEchelon basis) : basis_(std::move(basis)) {}

    /// Reducer for the column space of `m`.
    static SubspaceReducer column_space(const SparseMatrix& m) {
        return SubspaceReducer(reduced_row_echelon(m.transpose()));
    }

    std::size_t dim() const { return basis_.rank(); }
    std::size_t ambient_dim() const { return basis_.cols; }
    const RowEchelon& basis() const { return basis_; }

    Vector reduce(Vector v) const {
        if (v.size() != basis_.cols)
            throw InvalidInput("vector length mismatch in reduction");
        for (std::size_t i = 0; i < basis_.rows.size(); ++i) {
            const Rational f = v[basis_.pivots[i]];
            if (f == 0)
                continue;
            for (std::size_t c = 0; c < v.size(); ++c)
                if (basis_.rows[i][c] != 0)
                    v[c] -= f * basis_.rows[i][c];
        }
        return v;
    }

    bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  private:
    RowEchelon basis_;
};

} // namespace homstat
