#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polymatch/decompose.hpp"
#include "polymatch/io.hpp"
#include "polymatch/matcher.hpp"
#include "polymatch/oracle.hpp"
#include "polymatch/overlap.hpp"
#include "polymatch/svg.hpp"

using namespace polymatch;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
    double eps = 0.25;
    Config cfg;
    std::string svg;
    std::string out;
    bool timings = false;
};

const auto open_unit = CLI::Validator(
    [](std::string& s) -> std::string {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        return end != s.c_str() && *end == '\0' && v > 0.0 && v < 1.0 ? std::string{} : "eps must lie in (0, 1), got " + s;
    },
    "in (0,1)");

void emit(const ordered_json& j) { std::cout << j.dump() << '\n'; }

ordered_json point_json(const Point& p) { return ordered_json::array({p.x, p.y}); }

ConvexPolygon as_convex(const SimplePolygon& p, const std::string& path) {
    try {
        return ConvexPolygon(p.ring());
    } catch (const GeometryError& e) {
        throw GeometryError(path + ": expected a convex polygon (" + e.what() + ")");
    }
}

void add_config_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--c3", o.cfg.c3, "shrink factor of the overlap rectangle")->capture_default_str();
    cmd->add_option("--cR", o.cfg.cR, "overlap rectangle expansion constant")->capture_default_str();
    cmd->add_option("--c4", o.cfg.c4, "slicing constant of the inner approximation")->capture_default_str();
    cmd->add_option("--grid-factor", o.cfg.grid_factor, "grid subdivisions are ceil(grid-factor / eps)")
        ->capture_default_str();
    cmd->add_option("--seed", o.cfg.lp_seed, "seed for randomized structures")->capture_default_str();
    cmd->add_flag("--slice-onion", o.cfg.slice_onion, "slice onion instead of grid for nested pairs");
    cmd->add_flag("--linear-scan", o.cfg.linear_scan, "linear-scan point location");
    cmd->add_flag("--parallel-pairs", o.cfg.parallel_pairs, "build pair approximations concurrently");
}

int run_decompose(const std::string& in, const Options& o) {
    const SimplePolygon poly = read_polygon_file(in);
    const auto d = decompose(poly);
    SimplePolygon out(poly.ring(), d.parts);
    if (!o.out.empty()) write_polygon_file(o.out, out);
    if (!o.svg.empty()) {
        SvgCanvas svg;
        for (std::size_t i = 0; i < d.parts.size(); ++i) svg.polygon(d.parts[i].vertices(), SvgCanvas::palette(i));
        svg.polygon(poly.ring(), "none", "#000", 1.0);
        svg.save(o.svg);
    }
    ordered_json j;
    j["command"] = "decompose";
    j["parts"] = d.size();
    j["notches"] = count_notches(poly);
    j["area"] = area(poly);
    emit(j);
    return 0;
}

int run_match(const std::string& fp, const std::string& fq, const Options& o, const std::string& context) {
    const SimplePolygon p = read_polygon_file(fp);
    const SimplePolygon q = read_polygon_file(fq);
    const auto t0 = std::chrono::steady_clock::now();
    const QueryStructure qs(p, q, o.eps, o.cfg);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto& r = qs.result();
    ordered_json j;
    j["command"] = "match";
    j["translation"] = point_json(r.translation);
    j["value"] = r.value;
    j["epsilon"] = r.epsilon;
    j["pair_budget"] = r.pair_budget;
    j["parts"] = ordered_json::array({r.parts_p, r.parts_q});
    j["face_count"] = r.face_count;
    j["event_polygons"] = r.stats.event_polygons;
    j["branches"] = r.pair_branches;
    if (o.timings) {
        j["timings"] = {{"pairs", r.stats.pair_seconds},
                        {"overlay", r.stats.overlay_seconds},
                        {"locator", r.stats.locator_seconds},
                        {"maximize", r.stats.maximize_seconds},
                        {"total", total}};
    }
    emit(j);
    if (!context.empty()) write_text_file(context, format_context({p, q, o.eps, o.cfg}));
    if (!o.svg.empty()) {
        SvgCanvas svg;
        svg.polygon(p.ring(), SvgCanvas::palette(0));
        std::vector<Point> placed;
        for (const auto& v : q.ring()) placed.push_back(v + r.translation);
        svg.polygon(placed, SvgCanvas::palette(1));
        svg.save(o.svg);
    }
    return 0;
}

int run_oracle(const std::string& fp, const std::string& fq, const OracleOptions& opt) {
    const auto rep = grid_max_overlap(read_polygon_file(fp), read_polygon_file(fq), opt);
    ordered_json j;
    j["command"] = "oracle";
    j["best_translation"] = point_json(rep.best_translation);
    j["best_value"] = rep.best_value;
    j["grid_pitch"] = rep.grid_pitch;
    j["refinement_levels"] = rep.refinement_levels;
    j["value_slack_bound"] = rep.value_slack_bound;
    emit(j);
    return 0;
}

int run_slice(const std::string& fx, const std::string& fy, double alpha, const std::vector<double>& seed,
              const Options& o) {
    const ConvexPolygon x = as_convex(read_polygon_file(fx), fx);
    const ConvexPolygon y = as_convex(read_polygon_file(fy), fy);
    Point s;
    if (seed.size() == 2) {
        s = {seed[0], seed[1]};
    } else {
        const Maximum m = maximize_convex_overlap(x, y);
        if (alpha > m.value) throw NoSuchSlice("no such slice: alpha exceeds the maximum overlap");
        s = m.t;
    }
    const Slice sl = compute_slice(x, y, alpha, s);
    if (!o.out.empty()) write_polygon_file(o.out, SimplePolygon(sl.boundary.vertices()));
    if (!o.svg.empty()) {
        SvgCanvas svg;
        svg.polygon(sl.boundary.vertices(), SvgCanvas::palette(2));
        svg.marker(s, "#000");
        svg.save(o.svg);
    }
    ordered_json j;
    j["command"] = "slice";
    j["alpha"] = alpha;
    j["seed"] = point_json(s);
    j["vertices"] = sl.boundary.size();
    j["area"] = area(sl.boundary);
    emit(j);
    return 0;
}

int run_pair_approx(const std::string& fx, const std::string& fy, const Options& o) {
    const ConvexPolygon x = as_convex(read_polygon_file(fx), fx);
    const ConvexPolygon y = as_convex(read_polygon_file(fy), fy);
    const PiecewiseQuadratic psi = approx_convex_pair(x, y, o.eps, o.cfg);
    if (!o.out.empty()) {
        ordered_json ev = ordered_json::array();
        for (const auto& e : psi.event_polygons()) {
            ordered_json ring = ordered_json::array();
            for (const auto& v : e.vertices()) ring.push_back(point_json(v));
            ev.push_back(std::move(ring));
        }
        ordered_json file;
        file["branch"] = psi.branch_name();
        file["events"] = std::move(ev);
        write_text_file(o.out, file.dump() + "\n");
    }
    if (!o.svg.empty()) {
        SvgCanvas svg;
        for (std::size_t i = 0; i < psi.event_polygons().size(); ++i) {
            svg.polygon(psi.event_polygons()[i].vertices(), "none", SvgCanvas::palette(i), 0.0);
        }
        svg.save(o.svg);
    }
    std::size_t max_size = 0;
    for (const auto& e : psi.event_polygons()) max_size = std::max(max_size, e.size());
    ordered_json j;
    j["command"] = "pair-approx";
    j["branch"] = psi.branch_name();
    j["epsilon"] = psi.eps_budget();
    j["event_polygons"] = psi.event_polygons().size();
    j["max_complexity"] = max_size;
    emit(j);
    return 0;
}

int run_query(const std::string& context, const std::vector<std::string>& points) {
    const MatchContext ctx = parse_context(read_text_file(context));
    const QueryStructure qs(ctx.p, ctx.q, ctx.eps, ctx.config);
    for (const auto& s : points) {
        double x = 0.0;
        double y = 0.0;
        char tail = 0;
        if (std::sscanf(s.c_str(), "%lf,%lf%c", &x, &y, &tail) != 2) {
            throw ParseError("query point '" + s + "': expected x,y");
        }
        const Point t{x, y};
        ordered_json j;
        j["command"] = "query";
        j["t"] = point_json(t);
        j["psi"] = qs.query(t);
        j["face"] = qs.locate(t);
        emit(j);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate maximum-overlap translation of polygons"};
    app.require_subcommand(1);

    Options o;
    std::string in, fp, fq, context, save_context;
    double alpha = 0.0;
    std::vector<double> seed;
    std::vector<std::string> points;
    OracleOptions oracle_opt;

    auto* dec = app.add_subcommand("decompose", "convex decomposition of a polygon file");
    dec->add_option("input", in, "polygon file")->required();
    dec->add_option("-o,--output", o.out, "write the polygon with its parts");
    dec->add_option("--svg", o.svg, "render parts");

    auto* match = app.add_subcommand("match", "approximate best translation of Q over P");
    match->add_option("P", fp, "polygon file")->required();
    match->add_option("Q", fq, "polygon file")->required();
    match->add_option("--eps", o.eps, "approximation parameter in (0,1)")
        ->check(open_unit)
        ->capture_default_str();
    match->add_option("--svg", o.svg, "render P and Q at the returned translation");
    match->add_option("--save-context", save_context, "store inputs for later queries");
    match->add_flag("--timings", o.timings, "include wall-clock timings in the output");
    add_config_flags(match, o);

    auto* orc = app.add_subcommand("oracle", "dense-grid reference maximum");
    orc->add_option("P", fp, "polygon file")->required();
    orc->add_option("Q", fq, "polygon file")->required();
    orc->add_option("--base-grid", oracle_opt.base_grid, "samples per axis")->capture_default_str();
    orc->add_option("--levels", oracle_opt.refinement_levels, "refinement levels")->capture_default_str();

    auto* sl = app.add_subcommand("slice", "superlevel set of a convex pair");
    sl->add_option("X", fp, "convex polygon file")->required();
    sl->add_option("Y", fq, "convex polygon file")->required();
    sl->add_option("--alpha", alpha, "overlap level")->required();
    sl->add_option("--seed-point", seed, "translation inside the slice")->expected(2);
    sl->add_option("-o,--output", o.out, "write the slice ring");
    sl->add_option("--svg", o.svg, "render the slice");

    auto* pa = app.add_subcommand("pair-approx", "event polygons of a convex pair approximation");
    pa->add_option("X", fp, "convex polygon file")->required();
    pa->add_option("Y", fq, "convex polygon file")->required();
    pa->add_option("--eps", o.eps, "approximation parameter in (0,1)")
        ->check(open_unit)
        ->capture_default_str();
    pa->add_option("-o,--output", o.out, "write event polygons");
    pa->add_option("--svg", o.svg, "render event polygons");
    add_config_flags(pa, o);

    auto* qry = app.add_subcommand("query", "evaluate psi from a saved match context");
    qry->add_option("context", context, "file written by match --save-context")->required();
    qry->add_option("-t,--at", points, "translation as x,y (repeatable)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*dec) return run_decompose(in, o);
        if (*match) return run_match(fp, fq, o, save_context);
        if (*orc) return run_oracle(fp, fq, oracle_opt);
        if (*sl) return run_slice(fp, fq, alpha, seed, o);
        if (*pa) return run_pair_approx(fp, fq, o);
        if (*qry) return run_query(context, points);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
