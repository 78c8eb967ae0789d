#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "homstat/homstat.hpp"

using namespace homstat;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidInput("cannot write " + path);
    out << text;
}

void emit(const Json& report) { std::cout << report.dump(2) << '\n'; }

struct Options {
    std::string file;
    std::string svg;
    std::optional<std::size_t> stress;
    std::optional<std::size_t> dim;
    bool boundary = false;
    std::size_t m = 1;
    std::size_t r = 0;
};

TrussDocument load(const Options& o) {
    TrussDocument doc = load_document(o.file);
    return o.dim ? with_dimension(std::move(doc), *o.dim) : doc;
}

int run(const std::string& command, const Options& o) {
    const TrussDocument doc = load(o);
    if (command == "analyze" || command == "selfstress") {
        const Truss t = to_truss(doc);
        Json j = command == "analyze" ? analyze_json(doc, t) : selfstress_json(doc, t);
        if (o.boundary) {
            const Truss bt = doc.dimension == 2 && !doc.faces ? to_form_diagram(doc).truss : t;
            j["relative"] = relative_json(Labels{with_traced_faces(doc, bt.complex)},
                                          relative_summary(to_boundary(doc, bt)));
        }
        if (!o.svg.empty()) {
            const FormDiagram fd = to_form_diagram(doc);
            const auto s = analyze(fd.truss).self_stresses;
            std::optional<Vector> stress;
            if (!s.empty())
                stress = s.at(o.stress.value_or(0));
            write_text(o.svg, render_svg(fd, stress));
        }
        emit(j);
    } else if (command == "maxwell") {
        emit({{"command", "maxwell"}, {"maxwell", maxwell_json(maxwell_report(to_truss(doc)))}});
    } else if (command == "dual") {
        const DualResult d = dual_result(doc, o.stress);
        if (!o.svg.empty())
            write_text(o.svg, render_svg(d.diagram, d.form.complex(), d.form.embedding()));
        emit(d.report);
    } else if (command == "rotations") {
        emit(rotations_json(doc));
    } else if (command == "relative") {
        const RelativeResult r = relative_result(doc, o.stress);
        if (!o.svg.empty()) {
            if (!r.diagram)
                throw PreconditionError("relative force diagrams need a planar document");
            write_text(o.svg, render_svg(r.diagram->diagram, r.truss->complex, r.truss->embedding));
        }
        emit(r.report);
    } else if (command == "spline") {
        emit(spline_json(doc, o.m, o.r));
    } else if (command == "check") {
        const CheckOutcome c = check_document(doc);
        emit(c.report);
        return c.passed ? 0 : 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homological statics of trusses over exact rationals"};
    app.require_subcommand(1, 1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", o.file, "TrussDocument JSON")->required();
        sub->add_option("--dim", o.dim, "Re-embed the vertices in R^N");
    };
    struct Spec {
        const char* name;
        const char* help;
        bool svg, stress, boundary;
    };
    const Spec specs[] = {
        {"analyze", "Self-stresses, degrees of freedom and the Maxwell count", true, true, true},
        {"maxwell", "Maxwell counting report", false, false, false},
        {"selfstress", "Basis of self-stresses", true, true, true},
        {"dual", "Force diagram of a self-stress", true, true, false},
        {"rotations", "Impossible dual edge rotations", false, false, false},
        {"relative", "Equilibrium stresses and force diagram of a loaded truss", true, true, true},
        {"spline", "Spline cosheaf homology of the graph", false, false, false},
        {"check", "Run every applicable invariant check", false, false, false},
    };
    for (const auto& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        if (s.svg)
            sub->add_option("--svg", o.svg, "Write an SVG drawing");
        if (s.stress)
            sub->add_option("--stress", o.stress, "Index into the stress basis");
        if (s.boundary)
            sub->add_flag("--boundary", o.boundary, "Use the document's boundary section");
        if (std::string(s.name) == "spline") {
            sub->add_option("--m", o.m, "Polynomial degree on edges");
            sub->add_option("--r", o.r, "Smoothness order at vertices");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, o);
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
