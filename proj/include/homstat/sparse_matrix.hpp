#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "homstat/errors.hpp"
#include "homstat/rational.hpp"

namespace homstat {

/**
 * Sparse rational matrix in coordinate form. Entries are kept ordered by
 * (row, col); explicit zeros are never stored.
 */
class SparseMatrix {
  public:
    using Index = std::pair<std::size_t, std::size_t>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static SparseMatrix identity(std::size_t n) {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, i, 1);
        return m;
    }

    static SparseMatrix from_dense(const std::vector<Vector>& rows) {
        SparseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw InvalidInput("ragged dense matrix");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m.set(i, j, rows[i][j]);
        }
        return m;
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    static SparseMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
        SparseMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows)
                throw InvalidInput("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m.set(i, j, columns[j][i]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }
    const std::map<Index, Rational>& entries() const { return entries_; }

    Rational get(std::size_t r, std::size_t c) const {
        check_bounds(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const Rational& v) {
        check_bounds(r, c);
        if (v == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    void add(std::size_t r, std::size_t c, const Rational& v) {
        check_bounds(r, c);
        if (v == 0)
            return;
        auto [it, inserted] = entries_.try_emplace({r, c}, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0)
                entries_.erase(it);
        }
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_);
        for (const auto& [ij, v] : entries_)
            t.entries_.emplace(Index{ij.second, ij.first}, v);
        return t;
    }

    Vector operator*(const Vector& x) const {
        if (x.size() != cols_)
            throw InvalidInput("matrix-vector shape mismatch");
        Vector y = zero_vector(rows_);
        for (const auto& [ij, v] : entries_)
            y[ij.first] += v * x[ij.second];
        return y;
    }

    SparseMatrix operator*(const SparseMatrix& other) const {
        if (cols_ != other.rows_)
            throw InvalidInput("matrix product shape mismatch");
        std::vector<std::vector<std::pair<std::size_t, Rational>>> other_rows(other.rows_);
        for (const auto& [ij, v] : other.entries_)
            other_rows[ij.first].emplace_back(ij.second, v);
        SparseMatrix p(rows_, other.cols_);
        for (const auto& [ij, v] : entries_)
            for (const auto& [k, w] : other_rows[ij.second])
                p.add(ij.first, k, v * w);
        return p;
    }

    SparseMatrix operator-() const {
        SparseMatrix n = *this;
        for (auto& [ij, v] : n.entries_)
            v = -v;
        return n;
    }

    SparseMatrix operator+(const SparseMatrix& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw InvalidInput("matrix sum shape mismatch");
        SparseMatrix s = *this;
        for (const auto& [ij, v] : other.entries_)
            s.add(ij.first, ij.second, v);
        return s;
    }

    SparseMatrix operator-(const SparseMatrix& other) const { return *this + (-other); }

    Vector column(std::size_t c) const {
        Vector col = zero_vector(rows_);
        for (const auto& [ij, v] : entries_)
            if (ij.second == c)
                col[ij.first] = v;
        return col;
    }

    std::vector<Vector> to_dense() const {
        std::vector<Vector> d(rows_, zero_vector(cols_));
        for (const auto& [ij, v] : entries_)
            d[ij.first][ij.second] = v;
        return d;
    }

    /// Matrix with columns permuted/selected: result column j is column `order[j]`.
    SparseMatrix select_columns(const std::vector<std::size_t>& order) const {
        std::vector<std::size_t> inverse(cols_, cols_);
        for (std::size_t j = 0; j < order.size(); ++j)
            inverse.at(order[j]) = j;
        SparseMatrix m(rows_, order.size());
        for (const auto& [ij, v] : entries_)
            if (inverse[ij.second] != cols_)
                m.entries_.emplace(Index{ij.first, inverse[ij.second]}, v);
        return m;
    }

    bool operator==(const SparseMatrix&) const = default;

  private:
    void check_bounds(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw InvalidInput("matrix index out of bounds");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<Index, Rational> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const SparseMatrix& m) {
    os << m.rows() << "x" << m.cols() << " [";
    bool first = true;
    for (const auto& [ij, v] : m.entries()) {
        os << (first ? "" : ", ") << "(" << ij.first << "," << ij.second << ")=" << v;
        first = false;
    }
    return os << "]";
}

} // namespace homstat
