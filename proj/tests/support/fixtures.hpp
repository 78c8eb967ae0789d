#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homstat/homstat.hpp"

namespace fixtures {

using namespace homstat;

inline Embedding plane(std::vector<std::pair<long, long>> pts) {
    Embedding emb{2, {}};
    for (auto [x, y] : pts)
        emb.positions.push_back({Rational(x), Rational(y)});
    return emb;
}

/// Centre joint, four corners, spokes 0-3 then the counterclockwise rim 4-7.
inline Truss wheel5() {
    return Truss(build_complex(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}}),
                 plane({{0, 0}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}));
}

inline Truss tri3() { return Truss(build_complex(3, {{0, 1}, {1, 2}, {2, 0}}), plane({{0, 0}, {1, 0}, {0, 1}})); }

inline Truss c4() {
    return Truss(build_complex(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), plane({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

inline Truss collinear3() {
    return Truss(build_complex(3, {{0, 1}, {1, 2}, {0, 2}}), plane({{0, 0}, {1, 0}, {2, 0}}));
}

inline CellComplex c3_graph() { return build_complex(3, {{0, 1}, {1, 2}, {2, 0}}); }

inline FormDiagram form(const Truss& t) { return make_form_diagram(t); }

inline std::string path(const std::string& name) { return std::string(HOMSTAT_FIXTURE_DIR) + "/" + name; }

inline TrussDocument document(const std::string& name) { return load_document(path(name + ".json")); }

} // namespace fixtures
