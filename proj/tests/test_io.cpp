#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sys/wait.h>

#include "homstat/homstat.hpp"
#include "support/fixtures.hpp"

using namespace homstat;

namespace {

const char* kTriangle = R"({
  "version": 1,
  "dimension": 2,
  "vertices": [
    {"id": "a", "position": ["0", "0"]},
    {"id": "b", "position": ["1/3", "0"]},
    {"id": "c", "position": ["0.25", "1e1"]}
  ],
  "edges": [
    {"id": 10, "tail": "a", "head": "b"},
    {"id": 11, "tail": "b", "head": "c"},
    {"id": 12, "tail": "c", "head": "a"}
  ]
})";

std::string with_edge(const std::string& head) {
    std::string s = kTriangle;
    s.replace(s.find("\"head\": \"a\""), 11, "\"head\": \"" + head + "\"");
    return s;
}

int count(const std::string& text, const std::string& needle) {
    int n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}

struct CliResult {
    int code;
    std::string out;
};

CliResult cli(const std::string& args) {
    const auto out = std::filesystem::temp_directory_path() / "homstat_test_out.txt";
    const std::string cmd = std::string(HOMSTAT_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return {WEXITSTATUS(status), read_file(out.string())};
}

std::string temp_doc(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

} // namespace

TEST(Io, ParsesExactCoordinates) {
    const TrussDocument doc = parse_document(kTriangle);
    EXPECT_EQ(doc.vertices[1].position[0], Rational(1, 3));
    EXPECT_EQ(doc.vertices[2].position[0], Rational(1, 4));
    EXPECT_EQ(doc.vertices[2].position[1], Rational(10));
    EXPECT_EQ(doc.edges[2].tail, 2u);
    EXPECT_EQ(doc.edges[2].head, 0u);
}

TEST(Io, DiagnosticsNameTheField) {
    try {
        parse_document(with_edge("zz"));
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("edges[2].head"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
    }
    try {
        parse_document("{\"version\": 1,\n \"dimension\": }");
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_document(R"({"version": 2, "dimension": 2, "vertices": [], "edges": []})"), InvalidInput);
    std::string bad = kTriangle;
    bad.replace(bad.find("\"1/3\""), 5, "\"1/0\"");
    EXPECT_THROW(parse_document(bad), InvalidInput);
    std::string dup = kTriangle;
    dup.replace(dup.find("\"id\": \"b\""), 9, "\"id\": \"a\"");
    EXPECT_THROW(parse_document(dup), InvalidInput);
}

TEST(Io, RoundTripIsFixedPoint) {
    for (const char* name : {"wheel5", "tri3", "c4", "collinear3", "loaded1", "c3"}) {
        const TrussDocument doc = fixtures::document(name);
        const std::string once = serialize_document(doc).dump(2);
        const std::string twice = serialize_document(parse_document(once)).dump(2);
        EXPECT_EQ(once, twice) << name;
    }
    const std::string t = serialize_document(parse_document(kTriangle)).dump();
    EXPECT_NE(t.find("\"1/3\""), std::string::npos);
    EXPECT_NE(t.find("\"id\":10"), std::string::npos);
}

TEST(Io, FacesAreTracedWhenAbsent) {
    const TrussDocument doc = fixtures::document("wheel5");
    EXPECT_FALSE(doc.faces);
    const FormDiagram fd = to_form_diagram(doc);
    EXPECT_EQ(fd.complex().face_count(), 5u);
    const TrussDocument traced = with_traced_faces(doc, fd.complex());
    const FormDiagram again = to_form_diagram(parse_document(serialize_document(traced).dump()));
    EXPECT_EQ(again.complex(), fd.complex());
}

TEST(Io, DimensionOverride) {
    const TrussDocument doc = fixtures::document("collinear3");
    EXPECT_EQ(with_dimension(doc, 1).vertices[2].position, (Vector{2}));
    EXPECT_EQ(with_dimension(doc, 3).vertices[2].position, (Vector{2, 0, 0}));
    EXPECT_THROW(with_dimension(fixtures::document("wheel5"), 1), InvalidInput);
}

TEST(Svg, FormDiagramStressClasses) {
    const FormDiagram fd = fixtures::form(fixtures::wheel5());
    const std::string svg = render_svg(fd, analyze(fd.truss).self_stresses[0]);
    EXPECT_EQ(count(svg, "<line "), 8);
    EXPECT_EQ(count(svg, "class=\"tension\""), 4);
    EXPECT_EQ(count(svg, "class=\"compression\""), 4);
    EXPECT_EQ(svg, render_svg(fd, analyze(fd.truss).self_stresses[0]));
}

TEST(Svg, ForceDiagramSegmentsAreExactlyParallel) {
    const FormDiagram fd = fixtures::form(fixtures::wheel5());
    const ForceDiagram d = force_diagram_from_stress(fd, analyze(fd.truss).self_stresses[0]);
    const std::string svg = render_svg(d, fd.complex(), fd.embedding());
    const std::regex seg(R"re(data-x1="([^"]+)" data-y1="([^"]+)" data-x2="([^"]+)" data-y2="([^"]+)" data-stress="[^"]+" data-dx="([^"]+)" data-dy="([^"]+)")re");
    int n = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), seg); it != std::sregex_iterator(); ++it, ++n) {
        const auto& m = *it;
        const Point2 v{parse_rational(m[3].str()) - parse_rational(m[1].str()),
                       parse_rational(m[4].str()) - parse_rational(m[2].str())};
        EXPECT_EQ(cross(v, Point2{parse_rational(m[5].str()), parse_rational(m[6].str())}), 0);
    }
    EXPECT_EQ(n, 8);
    EXPECT_EQ(count(svg, "<circle "), 5);
}

TEST(Svg, ZeroStressDualWarns) {
    const FormDiagram fd = fixtures::form(fixtures::tri3());
    const std::string svg = render_svg(force_diagram_from_stress(fd, zero_vector(3)), fd.complex(), fd.embedding());
    EXPECT_NE(svg.find("<!-- warning: degenerate"), std::string::npos);
    EXPECT_EQ(count(svg, "class=\"zero\""), 3);
}

TEST(Report, AnalyzeWheel5) {
    const TrussDocument doc = fixtures::document("wheel5");
    const Json j = analyze_json(doc, to_truss(doc));
    EXPECT_EQ(j["force_cosheaf"]["betti"], Json::array({3, 1}));
    EXPECT_EQ(j["maxwell"]["line"], "2·5 − 8 = 2 = 3 + 0 − 1");
    EXPECT_EQ(j["self_stresses"][0]["4"], "-1/2");
}

TEST(Report, CheckPassesOnEveryFixture) {
    for (const char* name : {"wheel5", "tri3", "c4", "collinear3", "loaded1", "c3"}) {
        const CheckOutcome c = check_document(fixtures::document(name));
        EXPECT_TRUE(c.passed) << name << ": " << c.report.dump();
    }
}

TEST(Report, SplineJetsAgree) {
    const Json j = spline_json(fixtures::document("c3"), 1, 0);
    EXPECT_EQ(j["betti"][1], 3);
    EXPECT_EQ(j["splines"].size(), 3u);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("analyze " + fixtures::path("missing.json")).code, 1);
    EXPECT_EQ(cli("analyze " + temp_doc("homstat_bad.json", with_edge("zz"))).code, 1);
    EXPECT_EQ(cli("frobnicate " + fixtures::path("wheel5.json")).code, 1);
    EXPECT_EQ(cli("dual " + fixtures::path("wheel5.json") + " --stress 4").code, 1);
    // Disconnected form diagram: well-formed but fails a precondition.
    const std::string two = R"({"version": 1, "dimension": 2,
      "vertices": [{"id": 0, "position": ["0", "0"]}, {"id": 1, "position": ["1", "0"]},
                   {"id": 2, "position": ["5", "0"]}, {"id": 3, "position": ["6", "1"]}],
      "edges": [{"id": 0, "tail": 0, "head": 1}, {"id": 1, "tail": 2, "head": 3}]})";
    EXPECT_EQ(cli("dual " + temp_doc("homstat_two.json", two)).code, 2);
    const CliResult ok = cli("analyze " + fixtures::path("wheel5.json"));
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("2·5 − 8 = 2 = 3 + 0 − 1"), std::string::npos);
}

TEST(Cli, EveryCommandRunsOnFixtures) {
    EXPECT_EQ(cli("maxwell " + fixtures::path("collinear3.json")).code, 0);
    EXPECT_EQ(cli("selfstress " + fixtures::path("wheel5.json")).code, 0);
    EXPECT_EQ(cli("rotations " + fixtures::path("c4.json")).code, 0);
    EXPECT_EQ(cli("relative " + fixtures::path("loaded1.json")).code, 0);
    EXPECT_EQ(cli("analyze --boundary " + fixtures::path("loaded1.json")).code, 0);
    EXPECT_EQ(cli("spline " + fixtures::path("c3.json") + " --m 3 --r 1").code, 0);
    EXPECT_EQ(cli("check " + fixtures::path("wheel5.json")).code, 0);
    EXPECT_EQ(cli("analyze --dim 3 " + fixtures::path("wheel5.json")).code, 0);
}
