#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homstat/complex.hpp"
#include "homstat/duality.hpp"
#include "homstat/errors.hpp"
#include "homstat/planar.hpp"
#include "homstat/rational.hpp"
#include "homstat/statics.hpp"

namespace homstat {

using Json = nlohmann::ordered_json;

/// Ids may be non-negative integers or strings; the original JSON is kept for output.
struct DocId {
    Json value;

    std::string text() const { return value.is_string() ? value.get<std::string>() : value.dump(); }
};

struct VertexRecord {
    DocId id;
    Vector position;
};

struct EdgeRecord {
    DocId id;
    std::size_t tail = 0;
    std::size_t head = 0;
};

struct FaceRecord {
    DocId id;
    std::vector<OrientedEdge> boundary;
};

struct BoundaryRecord {
    std::vector<std::size_t> loop_vertices;
    std::vector<std::size_t> loop_edges;
    std::vector<std::size_t> connector_edges;
};

/**
 * On-disk truss: vertices with exact coordinates, oriented edges, optional
 * faces and exterior face, and an optional boundary loop. References between
 * records are resolved to indices on parse.
 */
struct TrussDocument {
    std::size_t dimension = 0;
    std::vector<VertexRecord> vertices;
    std::vector<EdgeRecord> edges;
    std::optional<std::vector<FaceRecord>> faces;
    std::optional<std::size_t> exterior_face;
    std::optional<BoundaryRecord> boundary;
};

namespace detail {

inline const Json& field(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object())
        throw InvalidInput(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw InvalidInput(where + ": missing field \"" + key + "\"");
    return *it;
}

inline const Json& array_field(const Json& obj, const std::string& key, const std::string& where) {
    const Json& a = field(obj, key, where);
    if (!a.is_array())
        throw InvalidInput(where + "." + key + ": expected an array");
    return a;
}

inline DocId read_id(const Json& rec, const std::string& where) {
    const Json& id = field(rec, "id", where);
    if (!(id.is_string() || id.is_number_unsigned() ||
          (id.is_number_integer() && id.get<long long>() >= 0)))
        throw InvalidInput(where + ".id: expected a string or non-negative integer");
    return {id};
}

/// Id text -> index, rejecting duplicates.
class IdTable {
  public:
    IdTable(std::string kind) : kind_(std::move(kind)) {}

    void add(const DocId& id, std::size_t index, const std::string& where) {
        if (!index_.emplace(id.text(), index).second)
            throw InvalidInput(where + ".id: duplicate " + kind_ + " id " + id.text());
    }

    std::size_t find(const Json& ref, const std::string& where) const {
        const std::string key = ref.is_string() ? ref.get<std::string>() : ref.dump();
        auto it = index_.find(key);
        if (it == index_.end())
            throw InvalidInput(where + ": unknown " + kind_ + " id " + key);
        return it->second;
    }

  private:
    std::string kind_;
    std::map<std::string, std::size_t> index_;
};

inline Rational read_coordinate(const Json& c, const std::string& where) {
    if (c.is_string())
        return parse_rational(c.get<std::string>());
    if (c.is_number_integer())
        return Rational(c.get<long long>());
    throw InvalidInput(where + ": coordinates must be strings (decimal or \"num/den\") or integers");
}

inline std::vector<std::size_t> read_refs(const Json& obj, const std::string& key,
                                          const IdTable& table, const std::string& where) {
    std::vector<std::size_t> out;
    const Json& a = array_field(obj, key, where);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(table.find(a[i], where + "." + key + "[" + std::to_string(i) + "]"));
    return out;
}

} // namespace detail

/**
 * Parses a document; every schema problem is an InvalidInput naming the
 * offending field, and JSON syntax errors carry nlohmann's line/column.
 */
inline TrussDocument parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    using detail::field;
    TrussDocument doc;
    const Json& version = field(j, "version", "document");
    if (version != 1)
        throw InvalidInput("document.version: unsupported version " + version.dump());
    const Json& dim = field(j, "dimension", "document");
    if (!dim.is_number_integer() || dim.get<long long>() < 1)
        throw InvalidInput("document.dimension: expected a positive integer");
    doc.dimension = dim.get<std::size_t>();

    detail::IdTable vertex_ids("vertex"), edge_ids("edge"), face_ids("face");
    const Json& vs = detail::array_field(j, "vertices", "document");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "vertices[" + std::to_string(i) + "]";
        VertexRecord rec{detail::read_id(vs[i], where), {}};
        const Json& pos = detail::array_field(vs[i], "position", where);
        if (pos.size() != doc.dimension)
            throw InvalidInput(where + ".position: expected " + std::to_string(doc.dimension) +
                               " coordinates, got " + std::to_string(pos.size()));
        for (std::size_t c = 0; c < pos.size(); ++c) {
            const std::string at = where + ".position[" + std::to_string(c) + "]";
            try {
                rec.position.push_back(detail::read_coordinate(pos[c], at));
            } catch (const InvalidInput& e) {
                throw InvalidInput(at + ": " + e.what());
            }
        }
        vertex_ids.add(rec.id, i, where);
        doc.vertices.push_back(std::move(rec));
    }

    const Json& es = detail::array_field(j, "edges", "document");
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        EdgeRecord rec{detail::read_id(es[i], where),
                       vertex_ids.find(field(es[i], "tail", where), where + ".tail"),
                       vertex_ids.find(field(es[i], "head", where), where + ".head")};
        if (rec.tail == rec.head)
            throw InvalidInput(where + ": edge is a self-loop");
        edge_ids.add(rec.id, i, where);
        doc.edges.push_back(std::move(rec));
    }

    if (j.contains("faces")) {
        const Json& fs = detail::array_field(j, "faces", "document");
        doc.faces.emplace();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const std::string where = "faces[" + std::to_string(i) + "]";
            FaceRecord rec{detail::read_id(fs[i], where), {}};
            const Json& b = detail::array_field(fs[i], "boundary", where);
            for (std::size_t k = 0; k < b.size(); ++k) {
                const std::string at = where + ".boundary[" + std::to_string(k) + "]";
                const Json& sign = field(b[k], "sign", at);
                if (sign != 1 && sign != -1)
                    throw InvalidInput(at + ".sign: expected 1 or -1");
                rec.boundary.push_back(
                    {edge_ids.find(field(b[k], "edge", at), at + ".edge"), sign.get<int>()});
            }
            face_ids.add(rec.id, i, where);
            doc.faces->push_back(std::move(rec));
        }
    }
    if (j.contains("exterior_face")) {
        if (!doc.faces)
            throw InvalidInput("document.exterior_face: given without faces");
        doc.exterior_face = face_ids.find(j["exterior_face"], "document.exterior_face");
    }
    if (j.contains("boundary")) {
        const Json& b = j["boundary"];
        BoundaryRecord rec;
        rec.loop_vertices = detail::read_refs(b, "loop_vertices", vertex_ids, "boundary");
        rec.loop_edges = detail::read_refs(b, "loop_edges", edge_ids, "boundary");
        if (b.contains("connector_edges"))
            rec.connector_edges = detail::read_refs(b, "connector_edges", edge_ids, "boundary");
        doc.boundary = std::move(rec);
    }
    return doc;
}

inline Json serialize_document(const TrussDocument& doc) {
    Json j;
    j["version"] = 1;
    j["dimension"] = doc.dimension;
    Json vs = Json::array();
    for (const auto& v : doc.vertices) {
        Json pos = Json::array();
        for (const auto& c : v.position)
            pos.push_back(to_string(c));
        vs.push_back({{"id", v.id.value}, {"position", pos}});
    }
    j["vertices"] = vs;
    Json es = Json::array();
    for (const auto& e : doc.edges)
        es.push_back({{"id", e.id.value},
                      {"tail", doc.vertices[e.tail].id.value},
                      {"head", doc.vertices[e.head].id.value}});
    j["edges"] = es;
    if (doc.faces) {
        Json fs = Json::array();
        for (const auto& f : *doc.faces) {
            Json b = Json::array();
            for (const auto& oe : f.boundary)
                b.push_back({{"edge", doc.edges[oe.edge].id.value}, {"sign", oe.sign}});
            fs.push_back({{"id", f.id.value}, {"boundary", b}});
        }
        j["faces"] = fs;
    }
    if (doc.exterior_face)
        j["exterior_face"] = (*doc.faces)[*doc.exterior_face].id.value;
    if (doc.boundary) {
        auto ids = [](const auto& records, const std::vector<std::size_t>& idx) {
            Json a = Json::array();
            for (auto i : idx)
                a.push_back(records[i].id.value);
            return a;
        };
        j["boundary"] = {{"loop_vertices", ids(doc.vertices, doc.boundary->loop_vertices)},
                         {"loop_edges", ids(doc.edges, doc.boundary->loop_edges)},
                         {"connector_edges", ids(doc.edges, doc.boundary->connector_edges)}};
    }
    return j;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline TrussDocument load_document(const std::string& path) { return parse_document(read_file(path)); }

/**
 * Positions re-embedded in R^n: extra coordinates are zero, and dropping
 * coordinates is only allowed when they vanish.
 */
inline TrussDocument with_dimension(TrussDocument doc, std::size_t n) {
    if (n == 0)
        throw InvalidInput("--dim must be positive");
    for (std::size_t v = 0; v < doc.vertices.size(); ++v) {
        auto& p = doc.vertices[v].position;
        for (std::size_t c = n; c < p.size(); ++c)
            if (p[c] != 0)
                throw InvalidInput("vertex " + doc.vertices[v].id.text() + " has nonzero coordinate " +
                                   std::to_string(c) + ", cannot embed in dimension " +
                                   std::to_string(n));
        p.resize(n, Rational(0));
    }
    doc.dimension = n;
    return doc;
}

/// Truss with whatever faces the document lists (none if absent).
inline Truss to_truss(const TrussDocument& doc) {
    std::vector<Edge> edges;
    for (const auto& e : doc.edges)
        edges.push_back({e.tail, e.head});
    std::vector<Face> faces;
    if (doc.faces)
        for (const auto& f : *doc.faces)
            faces.push_back({f.boundary});
    Embedding emb{doc.dimension, {}};
    for (const auto& v : doc.vertices)
        emb.positions.push_back(v.position);
    return Truss(build_complex(doc.vertices.size(), std::move(edges), std::move(faces), doc.exterior_face),
                 std::move(emb));
}

/// Graph part only, for computations that never look at faces.
inline Truss to_graph_truss(const TrussDocument& doc) {
    TrussDocument g = doc;
    g.faces.reset();
    g.exterior_face.reset();
    return to_truss(g);
}

/// Planar form diagram, tracing faces when the document has none.
inline FormDiagram to_form_diagram(const TrussDocument& doc) { return make_form_diagram(to_truss(doc)); }

/// Face records named "f0", "f1", ... for traced faces, so reports can refer to them.
inline TrussDocument with_traced_faces(TrussDocument doc, const CellComplex& traced) {
    if (doc.faces)
        return doc;
    doc.faces.emplace();
    for (std::size_t f = 0; f < traced.face_count(); ++f)
        doc.faces->push_back({{Json("f" + std::to_string(f))}, traced.face(f).boundary});
    doc.exterior_face = traced.exterior_face();
    return doc;
}

/// Boundary decomposition over the form diagram (faces traced if needed).
inline BoundaryDecomposition to_boundary(const TrussDocument& doc, const Truss& t) {
    if (!doc.boundary)
        throw InvalidInput("document has no boundary section");
    Subcomplex y = Subcomplex::empty(t.complex);
    for (auto v : doc.boundary->loop_vertices)
        y.vertices[v] = true;
    for (auto e : doc.boundary->loop_edges)
        y.edges[e] = true;
    BoundaryDecomposition d = decompose_boundary(t, y);
    if (!doc.boundary->connector_edges.empty()) {
        std::vector<std::size_t> listed = doc.boundary->connector_edges;
        std::sort(listed.begin(), listed.end());
        if (listed != d.connectors)
            throw InvalidInput("boundary.connector_edges does not match the edges with one endpoint on the loop");
    }
    return d;
}

} // namespace homstat
