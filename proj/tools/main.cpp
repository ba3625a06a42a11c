// linepat: command line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "linepat/cubing.hpp"

using json = nlohmann::ordered_json;
using namespace lp;

namespace {

struct Global {
    int threads = 1;
    int rank = 0;
    std::string basis;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LinePattern load(const Global& g, const std::string& path) {
    LoadOptions opts;
    if (g.rank > 0) opts.rank = g.rank;
    if (!g.basis.empty()) opts.basis_names = g.basis;
    auto loaded = load_pattern_text(read_input(path), opts);
    for (const auto& n : loaded.notes)
        std::cerr << (n.find("duplicate") != std::string::npos ? "warning: " : "note: ") << n << "\n";
    return loaded.pattern;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

std::string fmt(const Basis& B, const Direction& d) {
    return d.from.empty() ? B.format(d.letter) : B.format(d.from) + ":" + B.format(d.letter);
}

json words_json(const LinePattern& P) {
    json a = json::array();
    for (const auto& g : P.generators()) a.push_back(P.basis().format(g.word()));
    return a;
}

// "vertex:W", "ball:R" or "ball:R@W", "hull:W1,W2,..."
Subtree parse_subtree(const LinePattern& P, const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw Error(Errc::Parse, "subtree spec needs kind:argument, got '" + spec + "'");
    const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    const Basis& B = P.basis();
    if (kind == "vertex") return Subtree::single(B.parse(arg));
    if (kind == "ball") {
        const auto at = arg.find('@');
        Word c = at == std::string::npos ? Word() : B.parse(arg.substr(at + 1));
        int r = 0;
        try {
            r = std::stoi(arg.substr(0, at));
        } catch (...) {
            throw Error(Errc::Parse, "bad ball radius in '" + spec + "'");
        }
        if (r < 0) throw Error(Errc::Parse, "negative ball radius");
        return Subtree::ball(c, r, P.rank());
    }
    if (kind == "hull") {
        std::vector<Word> ws;
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ',')) ws.push_back(B.parse(item));
        if (ws.empty()) throw Error(Errc::Parse, "hull needs at least one vertex");
        return Subtree::hull(ws);
    }
    throw Error(Errc::Parse, "unknown subtree kind '" + kind + "'");
}

// ---- report builders ----------------------------------------------------------------

json trace_json(const LinePattern& start, const ReductionTrace& t) {
    json j;
    j["input"] = words_json(start);
    json steps = json::array();
    for (std::size_t i = 0; i < t.steps.size(); ++i)
        steps.push_back({{"automorphism", format_aut(t.steps[i], start.basis())}, {"complexity", t.complexities[i + 1]}});
    j["complexities"] = t.complexities;
    j["steps"] = steps;
    j["final"] = words_json(t.final_pattern);
    return j;
}

json cut_pairs_json(const LinePattern& P, const CutPairResult& r) {
    const Basis& B = P.basis();
    json j{{"result", kind_name(r.kind)}, {"how", r.how}, {"depth", r.depth}, {"states", r.states}};
    if (r.g) j["generator"] = B.format(r.g->word());
    if (!r.two_lines.empty()) {
        json ls = json::array();
        for (const auto& l : r.two_lines) ls.push_back(P.format(l));
        j["lines"] = ls;
    }
    if (r.how == "ray") {
        j["ray_start"] = B.format(r.ray_start);
        j["ray"] = B.format(r.ray);
        j["loop_start"] = r.loop_start;
    }
    return j;
}

json cubing_json(const CubingSummary& s) {
    json qi{{"sampled_pairs", s.qi.sampled_pairs}, {"lower_bound_holds", s.qi.lower_bound_holds},
            {"c", s.qi.c},
            {"monotone", s.qi.monotone},
            {"max_neighbourhood", s.qi.max_neighbourhood},
            {"bound_violations", s.qi.bound_violations}};
    json checks{{"inconsistent_vertices", s.checks.inconsistent_vertices},
                {"bad_edges", s.checks.bad_edges},
                {"flip_rule_mismatches", s.checks.flip_rule_mismatches},
                {"hyperplane_classes_off", s.checks.hyperplane_classes_off},
                {"crossing_mismatches", s.checks.crossing_mismatches},
                {"interior_instances", s.checks.interior_instances}};
    json by_size = json::object();
    for (const auto& [k, v] : s.crossing_degrees_by_size) by_size[std::to_string(k)] = v;
    return json{{"radius", s.radius},
                {"interior_radius", s.interior_radius},
                {"instances", s.instances},
                {"vertices", s.vertices},
                {"edges", s.edges},
                {"squares", s.squares},
                {"max_cube_dim", s.max_cube_dim},
                {"is_tree", s.tree},
                {"interior_valences", s.interior_valences},
                {"crossing_degrees", s.crossing_degrees},
                {"crossing_degrees_by_size", by_size},
                {"qi_diagnostics", qi},
                {"checks", checks}};
}

json classification_json(const LinePattern& P, const Classification& c) {
    json j;
    j["pattern"] = words_json(P);
    j["verdict"] = verdict_name(c.verdict);
    j["reduction"] = trace_json(P, c.trace);
    j["connected"] = c.connectivity.connected;
    if (!c.connectivity.connected) {
        std::string a, b;
        for (Letter x : c.connectivity.side_a) a += c.minimal.basis().format(x);
        for (Letter x : c.connectivity.side_b) b += c.minimal.basis().format(x);
        j["separation"] = {a, b};
    }
    if (c.cut_point) j["cut_point"] = c.minimal.basis().format(c.cut_point->word());
    if (c.cut_pairs) j["cut_pairs"] = cut_pairs_json(c.minimal, *c.cut_pairs);
    if (c.catalog) {
        json orbits = json::array();
        for (const auto& o : c.catalog->orbits)
            orbits.push_back({{"id", o.id},
                              {"size", o.rep.size()},
                              {"indecomposable", o.indecomposable},
                              {"edge_cut", o.edge_cut}});
        j["catalog"] = {{"max_size", c.catalog->max_size}, {"radius", c.catalog->radius}, {"orbits", orbits}};
    }
    if (c.cubing) j["cubing"] = cubing_json(*c.cubing);
    j["notes"] = c.notes;
    return j;
}

// Human rendering walks the same JSON so the two never disagree.
void print_human(std::ostream& os, const json& j, int indent = 0) {
    const std::string pad(indent, ' ');
    for (const auto& [k, v] : j.items()) {
        if (v.is_object()) {
            os << pad << k << ":\n";
            print_human(os, v, indent + 2);
        } else if (v.is_array() && !v.empty() && v.front().is_structured()) {
            os << pad << k << ":\n";
            for (const auto& e : v) {
                if (e.is_object()) {
                    std::string line;
                    for (const auto& [ek, ev] : e.items())
                        line += (line.empty() ? "" : " ") + ek + "=" + (ev.is_string() ? ev.get<std::string>() : ev.dump());
                    os << pad << "  - " << line << "\n";
                } else {
                    os << pad << "  - " << e.dump() << "\n";
                }
            }
        } else if (v.is_array()) {
            std::string line;
            for (const auto& e : v) line += (line.empty() ? "" : " ") + (e.is_string() ? e.get<std::string>() : e.dump());
            os << pad << k << ": " << (line.empty() ? "-" : line) << "\n";
        } else {
            os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

void emit(const json& j, const std::string& json_path) {
    if (json_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_human(std::cout, j);
    if (!json_path.empty()) write_file(json_path, j.dump(2) + "\n");
}

// ---- commands -------------------------------------------------------------------------

int cmd_wh(const Global& g, const std::string& file, const std::string& spec, const std::string& dot_path) {
    LinePattern P = load(g, file);
    const Subtree X = parse_subtree(P, spec);
    const WhGraph G = X.size() == 1 ? wh_at_vertex(P, X.vertices().front()) : wh_over(P, X);
    const Components C = components(G);
    std::ostringstream os;
    os << "// pattern " << P.describe() << "\n";
    os << "// subtree " << spec << " (" << X.size() << " vertices)\n";
    os << "// complexity " << P.complexity() << ", nodes " << G.nodes().size() << ", edges " << G.edges().size()
       << ", components " << C.count << "\n";
    std::string cuts;
    for (const auto& d : cut_vertices(G)) cuts += (cuts.empty() ? "" : " ") + fmt(P.basis(), d);
    os << "// cut vertices " << (cuts.empty() ? "none" : cuts) << "\n";
    os << to_dot(G, P);
    if (dot_path.empty()) std::cout << os.str();
    else write_file(dot_path, os.str());
    return 0;
}

int cmd_reduce(const Global& g, const std::string& file, const std::string& json_path) {
    LinePattern P = load(g, file);
    emit(trace_json(P, minimize(P, g.threads)), json_path);
    return 0;
}

int cmd_cutpoints(const Global& g, const std::string& file) {
    LinePattern P = load(g, file);
    require_reduced(P);
    const auto w = has_cut_point(P);
    json j{{"pattern", words_json(P)}, {"cut_point", w ? json(P.basis().format(w->word())) : json(nullptr)}};
    if (w) j["periodic"] = verdict_name(classify_periodic(P, w->word()).verdict);
    emit(j, "");
    return w ? exit_code(Verdict::HasCutPoint) : 0;
}

int cmd_cutpairs(const Global& g, const std::string& file, int depth_cap, const std::string& json_path) {
    LinePattern P = load(g, file);
    const auto r = detect_cut_pairs(P, depth_cap);
    json j{{"pattern", words_json(P)}};
    j["cut_pairs"] = cut_pairs_json(P, r);
    emit(j, json_path);
    switch (r.kind) {
        case CutPairResult::Kind::Witness: return exit_code(Verdict::HasCutPair);
        case CutPairResult::Kind::Inconclusive: return exit_code(Verdict::Inconclusive);
        default: return 0;
    }
}

int cmd_cutsets(const Global& g, const std::string& file, int max_size, int core_radius, const std::string& json_path) {
    LinePattern P = load(g, file);
    EnumerateOptions eo;
    eo.max_size = max_size;
    eo.radius = core_radius;
    eo.threads = g.threads;
    const Catalog cat = enumerate(P, eo);
    for (const auto& w : cat.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "pattern " << P.describe() << "\n";
    std::cout << "max size " << cat.max_size << ", core radius " << cat.radius << " (formula " << cat.radius_formula
              << "), observed pruned core diameter " << cat.max_observed_diameter << "\n";
    std::cout << cat.orbits.size() << " orbits\n";
    for (const auto& o : cat.orbits) {
        std::cout << "orbit " << o.id << ": size " << o.rep.size() << (o.edge_cut ? ", edge" : "")
                  << (o.indecomposable ? ", indecomposable" : ", decomposable") << ", crossings "
                  << o.crossings_within_catalog << ", lines";
        for (const auto& l : o.rep.lines()) std::cout << " " << P.format(l);
        std::cout << "\n";
    }
    if (!json_path.empty()) {
        const std::string text = catalog_to_json(P, cat);
        if (json_path == "-") std::cout << text;
        else write_file(json_path, text);
    }
    return 0;
}

json complex_json(const LinePattern& P, const CubingSummary& s, const CubeComplex& C, const Window& W) {
    json j = cubing_json(s);
    json inst = json::array();
    for (std::size_t i = 0; i < W.size(); ++i) {
        json lines = json::array();
        for (const auto& l : W.instances[i].cut.lines()) lines.push_back(P.format(l));
        inst.push_back({{"id", i},
                        {"orbit", W.instances[i].orbit},
                        {"shift", P.basis().format(W.instances[i].shift)},
                        {"lines", lines}});
    }
    json verts = json::array();
    for (std::size_t v = 0; v < C.vertices.size(); ++v) {
        std::string bits;
        for (std::size_t i = 0; i < W.size(); ++i) bits += C.vertices[v].get(i) ? '1' : '0';
        verts.push_back({{"id", v}, {"orientation", bits}});
    }
    json edges = json::array();
    for (std::size_t e = 0; e < C.edges.size(); ++e)
        edges.push_back({C.edges[e].first, C.edges[e].second, C.edge_coord[e]});
    json squares = json::array();
    for (const auto& q : C.squares) squares.push_back(q);
    j["instance_list"] = inst;
    j["vertex_list"] = verts;
    j["edge_list"] = edges;
    j["square_list"] = squares;
    return j;
}

int cmd_cubing(const Global& g, const std::string& file, int radius, int max_size, int core_radius, bool all,
               const std::string& dot_path, const std::string& json_path) {
    LinePattern P = load(g, file);
    EnumerateOptions eo;
    eo.max_size = max_size;
    eo.radius = core_radius;
    eo.threads = g.threads;
    const Catalog cat = enumerate(P, eo);
    for (const auto& w : cat.warnings) std::cerr << "warning: " << w << "\n";
    CubingOptions co;
    co.radius = radius;
    co.all_orbits = all;
    co.threads = g.threads;
    CubeComplex C;
    Window W;
    const CubingSummary s = cubing_summary(P, cat, co, &C, &W);
    print_human(std::cout, cubing_json(s));
    if (!dot_path.empty()) write_file(dot_path, cubing_dot(C));
    if (!json_path.empty()) write_file(json_path, complex_json(P, s, C, W).dump(2) + "\n");
    return 0;
}

int cmd_classify(const Global& g, const std::string& file, const ClassifyOptions& opts, const std::string& json_path) {
    LinePattern P = load(g, file);
    ClassifyOptions o = opts;
    o.threads = g.threads;
    const Classification c = classify(P, o);
    emit(classification_json(P, c), json_path);
    return exit_code(c.verdict);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Line patterns in free groups: Whitehead graphs, cut sets and cubings"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--rank", g.rank, "rank of the free group (default: from the letters used)")
        ->check(CLI::PositiveNumber);
    app.add_option("--basis", g.basis, "basis letters, e.g. xyz");

    std::string file, spec = "vertex:1", dot, json_out;
    int depth_cap = 32, max_size = 0, core_radius = -1, radius = -1;
    bool all = false, no_cubing = false;

    auto* wh = app.add_subcommand("wh", "Whitehead graph over a subtree, as DOT");
    wh->add_option("file", file, "pattern file, or - for stdin")->required();
    wh->add_option("--subtree", spec, "vertex:W, ball:R[@W] or hull:W1,W2,...");
    wh->add_option("--dot", dot, "write DOT here instead of stdout");

    auto* red = app.add_subcommand("reduce", "minimize complexity by Whitehead automorphisms");
    red->add_option("file", file)->required();
    red->add_option("--json", json_out, "write JSON here (- for stdout)");

    auto* cp = app.add_subcommand("cutpoints", "search for cut points");
    cp->add_option("file", file)->required();

    auto* cpair = app.add_subcommand("cutpairs", "search for cut pairs");
    cpair->add_option("file", file)->required();
    cpair->add_option("--depth-cap", depth_cap)->check(CLI::PositiveNumber);
    cpair->add_option("--json", json_out);

    auto* cs = app.add_subcommand("cutsets", "enumerate minimal cut sets up to translation");
    cs->add_option("file", file)->required();
    cs->add_option("--max-size", max_size, "largest cut set size b");
    cs->add_option("--core-radius,--radius", core_radius, "pruned core radius bound D");
    cs->add_option("--json", json_out, "write the catalog as JSON (- for stdout)");

    auto* cub = app.add_subcommand("cubing", "build the dual cube complex over a window");
    cub->add_option("file", file)->required();
    cub->add_option("--radius", radius, "window radius");
    cub->add_option("--max-size", max_size);
    cub->add_option("--core-radius", core_radius);
    cub->add_flag("--all-orbits", all, "include decomposable orbits");
    cub->add_option("--dot", dot);
    cub->add_option("--json", json_out);

    auto* cl = app.add_subcommand("classify", "full rigidity classification");
    cl->add_option("file", file)->required();
    cl->add_option("--depth-cap", depth_cap)->check(CLI::PositiveNumber);
    cl->add_option("--max-size", max_size);
    cl->add_option("--core-radius", core_radius);
    cl->add_option("--radius", radius, "cubing window radius");
    cl->add_flag("--no-cubing", no_cubing);
    cl->add_option("--json", json_out, "write the report as JSON (- for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*wh) return cmd_wh(g, file, spec, dot);
        if (*red) return cmd_reduce(g, file, json_out);
        if (*cp) return cmd_cutpoints(g, file);
        if (*cpair) return cmd_cutpairs(g, file, depth_cap, json_out);
        if (*cs) return cmd_cutsets(g, file, max_size, core_radius, json_out);
        if (*cub) return cmd_cubing(g, file, radius, max_size, core_radius, all, dot, json_out);
        if (*cl) {
            ClassifyOptions o;
            o.depth_cap = depth_cap;
            o.max_size = max_size;
            o.radius = core_radius;
            o.window_radius = radius;
            o.build_cubing = !no_cubing;
            return cmd_classify(g, file, o, json_out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
