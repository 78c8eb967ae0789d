#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homstat/errors.hpp"
#include "homstat/rational.hpp"

namespace homstat {

struct CellId {
    int dim = 0;
    std::size_t index = 0;

    auto operator<=>(const CellId&) const = default;
};

/// Oriented edge tail -> head. Cellular boundary is head - tail.
struct Edge {
    std::size_t tail = 0;
    std::size_t head = 0;

    bool operator==(const Edge&) const = default;
};

struct OrientedEdge {
    std::size_t edge = 0;
    int sign = 1;

    bool operator==(const OrientedEdge&) const = default;
};

/// A face is a closed walk of signed edges.
struct Face {
    std::vector<OrientedEdge> boundary;

    bool operator==(const Face&) const = default;
};

/// Incidence higher ▷ lower with its cellular coefficient.
struct Incidence {
    std::size_t higher = 0;
    std::size_t lower = 0;
    int coefficient = 0;

    bool operator==(const Incidence&) const = default;
};

/**
 * Cell complex of dimension at most 2: vertices, oriented edges between
 * distinct vertices, and faces given by closed signed edge cycles. One face
 * may be designated as the exterior of a planar embedding.
 *
 * Invariants are checked on construction, so every instance is valid.
 */
class CellComplex {
  public:
    CellComplex() = default;

    CellComplex(std::size_t vertex_count, std::vector<Edge> edges, std::vector<Face> faces = {},
                std::optional<std::size_t> exterior = std::nullopt)
        : vertex_count_(vertex_count), edges_(std::move(edges)), faces_(std::move(faces)),
          exterior_(exterior) {
        validate();
        build_incidences();
    }

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t face_count() const { return faces_.size(); }

    std::size_t cell_count(int dim) const {
        switch (dim) {
        case 0:
            return vertex_count_;
        case 1:
            return edges_.size();
        case 2:
            return faces_.size();
        default:
            return 0;
        }
    }

    /// Top dimension with at least one cell (0 for the empty complex).
    int dimension() const {
        if (!faces_.empty())
            return 2;
        return edges_.empty() ? 0 : 1;
    }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(std::size_t f) const { return faces_.at(f); }
    std::optional<std::size_t> exterior_face() const { return exterior_; }

    /**
     * Incidences of k-cells onto (k-1)-cells for k = 1, 2. For an edge the
     * tail comes first (coefficient -1), then the head (+1). For a face the
     * coefficients of repeated edges are summed, ordered by first appearance.
     */
    const std::vector<Incidence>& incidences(int k) const {
        if (k != 1 && k != 2)
            throw InvalidInput("incidences exist only in degrees 1 and 2");
        return incidences_[static_cast<std::size_t>(k - 1)];
    }

    std::optional<std::size_t> incidence_index(int k, std::size_t higher, std::size_t lower) const {
        const auto& lookup = incidence_lookup_[static_cast<std::size_t>(k - 1)];
        auto it = lookup.find({higher, lower});
        if (it == lookup.end())
            return std::nullopt;
        return it->second;
    }

    /// Faces using edge `e` with sign +1 (left) and -1 (right).
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> edge_sides(std::size_t e) const {
        std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sides;
        for (std::size_t f = 0; f < faces_.size(); ++f)
            for (const auto& oe : faces_[f].boundary)
                if (oe.edge == e)
                    (oe.sign > 0 ? sides.first : sides.second).push_back(f);
        return sides;
    }

    /**
     * True when every edge is used exactly once with sign +1 and once with
     * sign -1, by two distinct faces.
     */
    bool is_closed_surface() const {
        if (faces_.empty())
            return false;
        std::vector<int> plus(edges_.size(), 0), minus(edges_.size(), 0);
        std::vector<std::size_t> left(edges_.size(), 0), right(edges_.size(), 0);
        for (std::size_t f = 0; f < faces_.size(); ++f)
            for (const auto& oe : faces_[f].boundary) {
                if (oe.sign > 0) {
                    ++plus[oe.edge];
                    left[oe.edge] = f;
                } else {
                    ++minus[oe.edge];
                    right[oe.edge] = f;
                }
            }
        for (std::size_t e = 0; e < edges_.size(); ++e)
            if (plus[e] != 1 || minus[e] != 1 || left[e] == right[e])
                return false;
        return true;
    }

    bool operator==(const CellComplex& other) const {
        return vertex_count_ == other.vertex_count_ && edges_ == other.edges_ &&
               faces_ == other.faces_ && exterior_ == other.exterior_;
    }

  private:
    void validate() const {
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto& [t, h] = edges_[e];
            if (t >= vertex_count_ || h >= vertex_count_)
                throw InvalidInput("edge " + std::to_string(e) + " references a missing vertex");
            if (t == h)
                throw InvalidInput("edge " + std::to_string(e) + " is a self-loop");
        }
        for (std::size_t f = 0; f < faces_.size(); ++f) {
            const auto& cycle = faces_[f].boundary;
            const std::string name = "face " + std::to_string(f);
            if (cycle.empty())
                throw InvalidInput(name + " has an empty boundary");
            for (const auto& oe : cycle) {
                if (oe.edge >= edges_.size())
                    throw InvalidInput(name + " references a missing edge");
                if (oe.sign != 1 && oe.sign != -1)
                    throw InvalidInput(name + " has a sign other than +1/-1");
            }
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                const auto& a = cycle[i];
                const auto& b = cycle[(i + 1) % cycle.size()];
                if (end_vertex(a) != start_vertex(b))
                    throw InvalidInput(name + " boundary does not close at position " +
                                       std::to_string(i));
            }
        }
        if (exterior_ && *exterior_ >= faces_.size())
            throw InvalidInput("exterior face index out of range");
    }

    std::size_t start_vertex(const OrientedEdge& oe) const {
        return oe.sign > 0 ? edges_[oe.edge].tail : edges_[oe.edge].head;
    }
    std::size_t end_vertex(const OrientedEdge& oe) const {
        return oe.sign > 0 ? edges_[oe.edge].head : edges_[oe.edge].tail;
    }

    void build_incidences() {
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            push_incidence(0, {e, edges_[e].tail, -1});
            push_incidence(0, {e, edges_[e].head, +1});
        }
        for (std::size_t f = 0; f < faces_.size(); ++f)
            for (const auto& oe : faces_[f].boundary) {
                auto& lookup = incidence_lookup_[1];
                if (auto it = lookup.find({f, oe.edge}); it != lookup.end())
                    incidences_[1][it->second].coefficient += oe.sign;
                else
                    push_incidence(1, {f, oe.edge, oe.sign});
            }
    }

    void push_incidence(std::size_t slot, Incidence inc) {
        incidence_lookup_[slot].emplace(std::pair{inc.higher, inc.lower}, incidences_[slot].size());
        incidences_[slot].push_back(inc);
    }

    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::optional<std::size_t> exterior_;
    std::vector<Incidence> incidences_[2];
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> incidence_lookup_[2];
};

/// Validating constructor; throws InvalidInput on malformed data.
inline CellComplex build_complex(std::size_t vertex_count, std::vector<Edge> edges,
                                 std::vector<Face> faces = {},
                                 std::optional<std::size_t> exterior = std::nullopt) {
    return CellComplex(vertex_count, std::move(edges), std::move(faces), exterior);
}

inline long euler_char(const CellComplex& x) {
    return static_cast<long>(x.vertex_count()) - static_cast<long>(x.edge_count()) +
           static_cast<long>(x.face_count());
}

/// Same complex with edge `e` reversed; face cycles are re-signed to match.
inline CellComplex with_edge_flipped(const CellComplex& x, std::size_t e) {
    auto edges = x.edges();
    std::swap(edges.at(e).tail, edges.at(e).head);
    auto faces = x.faces();
    for (auto& f : faces)
        for (auto& oe : f.boundary)
            if (oe.edge == e)
                oe.sign = -oe.sign;
    return CellComplex(x.vertex_count(), std::move(edges), std::move(faces), x.exterior_face());
}

/// Same complex with face `f` traversed in the opposite direction.
inline CellComplex with_face_flipped(const CellComplex& x, std::size_t f) {
    auto faces = x.faces();
    auto& cycle = faces.at(f).boundary;
    std::reverse(cycle.begin(), cycle.end());
    for (auto& oe : cycle)
        oe.sign = -oe.sign;
    return CellComplex(x.vertex_count(), x.edges(), std::move(faces), x.exterior_face());
}

/**
 * A set of cells of a complex, as membership masks per dimension.
 */
struct Subcomplex {
    std::vector<bool> vertices;
    std::vector<bool> edges;
    std::vector<bool> faces;

    static Subcomplex empty(const CellComplex& x) {
        return {std::vector<bool>(x.vertex_count(), false), std::vector<bool>(x.edge_count(), false),
                std::vector<bool>(x.face_count(), false)};
    }

    static Subcomplex whole(const CellComplex& x) {
        return {std::vector<bool>(x.vertex_count(), true), std::vector<bool>(x.edge_count(), true),
                std::vector<bool>(x.face_count(), true)};
    }

    bool contains(int dim, std::size_t cell) const {
        switch (dim) {
        case 0:
            return vertices.at(cell);
        case 1:
            return edges.at(cell);
        case 2:
            return faces.at(cell);
        default:
            return false;
        }
    }

    std::size_t count(int dim) const {
        const auto& mask = dim == 0 ? vertices : dim == 1 ? edges : faces;
        return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    }

    bool matches(const CellComplex& x) const {
        return vertices.size() == x.vertex_count() && edges.size() == x.edge_count() &&
               faces.size() == x.face_count();
    }

    /// Closed: contains every boundary cell of each of its cells.
    bool is_closed_in(const CellComplex& x) const {
        if (!matches(x))
            return false;
        for (const auto& inc : x.incidences(1))
            if (edges[inc.higher] && !vertices[inc.lower])
                return false;
        for (const auto& inc : x.incidences(2))
            if (faces[inc.higher] && !edges[inc.lower])
                return false;
        return true;
    }
};

/// Vertex positions in R^n.
struct Embedding {
    std::size_t dim = 0;
    std::vector<Vector> positions;

    const Vector& position(std::size_t v) const { return positions.at(v); }

    /// p(head) - p(tail).
    Vector edge_vector(const CellComplex& x, std::size_t e) const {
        const auto& ed = x.edge(e);
        Vector d = positions.at(ed.head);
        for (std::size_t i = 0; i < dim; ++i)
            d[i] -= positions.at(ed.tail)[i];
        return d;
    }

    void validate(const CellComplex& x) const {
        if (positions.size() != x.vertex_count())
            throw InvalidInput("embedding has " + std::to_string(positions.size()) +
                               " positions for " + std::to_string(x.vertex_count()) + " vertices");
        for (std::size_t v = 0; v < positions.size(); ++v)
            if (positions[v].size() != dim)
                throw InvalidInput("vertex " + std::to_string(v) + " position has wrong dimension");
        for (std::size_t e = 0; e < x.edge_count(); ++e)
            if (is_zero(edge_vector(x, e)))
                throw InvalidInput("edge " + std::to_string(e) + " has coincident endpoints");
    }
};

} // namespace homstat
