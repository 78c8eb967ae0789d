#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "homstat/errors.hpp"
#include "homstat/sparse_matrix.hpp"

namespace homstat {

/// Coordinate of a chain space: component `component` of the stalk over a cell.
struct ChainLabel {
    int dim = 0;
    std::size_t cell = 0;
    std::size_t component = 0;

    bool operator==(const ChainLabel&) const = default;
};

/**
 * Finite chain complex C_0 <- C_1 <- ... <- C_top over the rationals.
 * `boundaries[k]` is ∂_k : C_k -> C_{k-1} for 1 <= k <= top.
 */
struct ChainComplex {
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> boundaries;
    std::vector<std::vector<ChainLabel>> labels;

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }

    std::size_t dim(int k) const {
        return k < 0 || k > top_degree() ? 0 : dims[static_cast<std::size_t>(k)];
    }

    /// ∂_k for any k, with the zero maps at both ends made explicit.
    SparseMatrix boundary(int k) const {
        if (k >= 1 && k <= top_degree())
            return boundaries.at(static_cast<std::size_t>(k));
        return SparseMatrix(dim(k - 1), dim(k));
    }

    /// Throws InternalError unless every ∂_k ∘ ∂_{k+1} vanishes exactly.
    void check_composition() const {
        for (int k = 1; k < top_degree(); ++k)
            if (!(boundary(k) * boundary(k + 1)).is_zero())
                throw InternalError("composed boundary ∂" + std::to_string(k) + "∘∂" +
                                    std::to_string(k + 1) + " is nonzero");
    }
};

} // namespace homstat
