#include "appint/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "appint/json_io.hpp"

namespace appint::cli {

namespace {

void require_fields(const Json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional, const char* what) {
    for (const char* f : required)
        if (!j.contains(f))
            throw ValidationError(std::string(what) + ": missing field '" + f + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* f : required)
            if (it.key() == f) known = true;
        for (const char* f : optional)
            if (it.key() == f) known = true;
        if (!known)
            throw ValidationError(std::string(what) + ": unknown field '" + it.key() + "'");
    }
}

std::vector<double> schedule_from_json(const Json& j, const char* what) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
    } else if (j.is_array()) {
        for (const Json& v : j) out.push_back(v.get<double>());
    } else {
        throw ValidationError(std::string(what) + ": expected a number or an array of numbers");
    }
    return out;
}

SymbolProgram program_from_json(const Json& j) {
    require_fields(j, {"family"},
                   {"spectrum", "v_init", "case", "alpha", "beta", "symbols"}, "program");
    std::string family = j["family"].get<std::string>();
    if (family == "exp_bspline") {
        if (!j.contains("spectrum"))
            throw ValidationError("program: exp_bspline needs a spectrum");
        return SymbolProgram::exponential_bspline(spectrum_from_json(j["spectrum"]));
    }
    if (family == "five_term") {
        if (!j.contains("v_init")) throw ValidationError("program: five_term needs v_init");
        double v_init = j["v_init"].get<double>();
        if (j.contains("case")) {
            if (j.contains("alpha") || j.contains("beta"))
                throw ValidationError("program: give either a preset case or alpha/beta, not both");
            return SymbolProgram::five_term_preset_program(j["case"].get<int>(), v_init);
        }
        if (!j.contains("alpha") || !j.contains("beta"))
            throw ValidationError("program: five_term needs a preset case or alpha/beta schedules");
        return SymbolProgram::five_term_custom(schedule_from_json(j["alpha"], "alpha"),
                                               schedule_from_json(j["beta"], "beta"), v_init);
    }
    if (family == "explicit") {
        if (!j.contains("symbols")) throw ValidationError("program: explicit needs symbols");
        std::vector<LaurentPolynomial> symbols;
        for (const Json& s : j["symbols"]) symbols.push_back(laurent_from_json(s));
        return SymbolProgram::explicit_symbols(std::move(symbols));
    }
    throw ValidationError("program: unknown family '" + family + "'");
}

std::vector<InterpolatorySelection> selections_from_json(const Json& j) {
    std::vector<InterpolatorySelection> out;
    if (j.is_array()) {
        for (const Json& s : j) out.push_back(selection_from_json(s));
    } else {
        out.push_back(selection_from_json(j));
    }
    return out;
}

SolverChoice solver_from_string(const std::string& s) {
    if (s == "matrix") return SolverChoice::Matrix;
    if (s == "roots") return SolverChoice::Roots;
    if (s == "both") return SolverChoice::Both;
    throw ValidationError("solver must be matrix, roots or both (got '" + s + "')");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + path + "'");
    out << content;
}

SolverChoice effective_solver(const SchemeConfig& config) {
    if (const char* env = std::getenv("APPINT_SOLVER"); env && *env)
        return solver_from_string(env);
    return config.solver;
}

// -------- subdivide machinery --------

struct PointsFile {
    std::vector<double> x;
    std::vector<double> y;
    bool has_y = false;
};

PointsFile read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open points file '" + path + "'");
    PointsFile pts;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double a, b;
        if (!(row >> a)) {
            if (first) { first = false; continue; }  // header line
            throw ParseError("points file: cannot parse line '" + line + "'");
        }
        if (row >> b) {
            pts.y.push_back(b);
            pts.has_y = true;
        }
        pts.x.push_back(a);
        first = false;
    }
    if (pts.x.empty()) throw ValidationError("points file is empty");
    if (pts.has_y && pts.y.size() != pts.x.size())
        throw ParseError("points file mixes one- and two-column rows");
    return pts;
}

struct CsvData {
    struct Row {
        int level;
        long index;
        double t, x, y;
    };
    std::vector<Row> rows;
    bool has_y = false;
};

CsvData read_refinement_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open CSV file '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw ParseError("CSV file is empty");
    CsvData csv;
    csv.has_y = header.find(",y") != std::string::npos;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        CsvData::Row r{};
        if (!(row >> r.level >> r.index >> r.t >> r.x))
            throw ParseError("CSV: cannot parse row '" + line + "'");
        if (csv.has_y && !(row >> r.y)) throw ParseError("CSV: missing y value in '" + line + "'");
        csv.rows.push_back(r);
    }
    if (csv.rows.empty()) throw ParseError("CSV has no data rows");
    return csv;
}

} // namespace

SchemeConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    require_fields(j, {"program"},
                   {"selections", "levels", "spectrum", "solver", "tolerances", "output"},
                   "config");
    SchemeConfig config;
    config.program = program_from_json(j["program"]);
    if (j.contains("selections")) config.selections = selections_from_json(j["selections"]);
    if (j.contains("levels")) {
        config.levels = j["levels"].get<int>();
        if (config.levels < 1) throw ValidationError("config: levels must be at least 1");
    }
    if (j.contains("spectrum")) config.spectrum = spectrum_from_json(j["spectrum"]);
    if (j.contains("solver")) config.solver = solver_from_string(j["solver"].get<std::string>());
    if (j.contains("tolerances")) {
        const Json& t = j["tolerances"];
        require_fields(t, {}, {"interpolation", "reproduction", "bezout", "coprimality"},
                       "tolerances");
        if (t.contains("interpolation")) config.tolerances.interpolation = t["interpolation"].get<double>();
        if (t.contains("reproduction")) config.tolerances.reproduction = t["reproduction"].get<double>();
        if (t.contains("bezout")) config.tolerances.bezout = t["bezout"].get<double>();
        if (t.contains("coprimality")) config.tolerances.coprimality = t["coprimality"].get<double>();
        for (double tol : {config.tolerances.interpolation, config.tolerances.reproduction,
                           config.tolerances.bezout, config.tolerances.coprimality})
            if (tol <= 0.0) throw ValidationError("config: tolerances must be positive");
    }
    if (j.contains("output")) {
        for (auto it = j["output"].begin(); it != j["output"].end(); ++it)
            config.output[it.key()] = it.value().get<std::string>();
    }
    return config;
}

SpectrumSpec resolve_spectrum(const SchemeConfig& config) {
    if (config.spectrum) return *config.spectrum;
    if (auto derived = config.program.verification_spectrum()) return *derived;
    throw ValidationError("no spectrum available: give one in the config");
}

int cmd_convert(const SchemeConfig& config, const std::string& out_path) {
    SolverChoice solver = effective_solver(config);
    try {
        InterpolatorySequence seq = run_appint(config.program, config.selections, config.levels,
                                               solver, config.tolerances.coprimality);
        write_file(out_path, dump_deterministic(sequence_to_json(seq)));
    } catch (const CoprimalityFailure& failure) {
        Json j;
        j["failure"] = "coprimality";
        j["level"] = failure.level;
        j["margin"] = failure.margin;
        j["levels"] = sequence_to_json(failure.partial);
        write_file(out_path, dump_deterministic(j));
        throw;
    }
    return kExitOk;
}

namespace {

void append_csv_rows(std::string& out, const RefinementRun& run, int level,
                     const RefinementRun* yrun, bool valid_column, long hull_lo, long hull_hi) {
    const DataSequence& data = run.levels[static_cast<std::size_t>(level)];
    const ValidInterval& valid = run.valid[static_cast<std::size_t>(level)];
    for (long i = std::max(hull_lo, data.first()); i <= std::min(hull_hi, data.last()); ++i) {
        out += std::to_string(level);
        out += ',';
        out += std::to_string(i);
        out += ',';
        out += format_shortest(RefinementRun::grid_t(level, i));
        out += ',';
        out += format_shortest(data.at(i));
        if (yrun) {
            out += ',';
            out += format_shortest(yrun->levels[static_cast<std::size_t>(level)].at(i));
        }
        if (valid_column) {
            out += ',';
            out += valid.contains(i) ? '1' : '0';
        }
        out += '\n';
    }
}

} // namespace

int cmd_subdivide(const SchemeConfig& config, const std::string& points_path, int levels,
                  const std::string& out_path, bool valid_column) {
    PointsFile pts = read_points(points_path);
    SolverChoice solver = effective_solver(config);
    InterpolatorySequence seq =
        run_appint(config.program, config.selections, levels, solver,
                   config.tolerances.coprimality);
    std::vector<LaurentPolynomial> masks = seq.symbols();

    DataSequence x0{pts.x, 0};
    RefinementRun xrun = run_scheme(masks, x0, levels);
    RefinementRun yrun;
    if (pts.has_y) yrun = run_scheme(masks, DataSequence{pts.y, 0}, levels);

    std::string csv = "level,index,t,x";
    if (pts.has_y) csv += ",y";
    if (valid_column) csv += ",valid";
    csv += '\n';
    long span = static_cast<long>(pts.x.size()) - 1;
    for (int k = 0; k <= levels; ++k) {
        long hull_hi = span << k;  // dyadic refinement of the initial span [0, len-1]
        append_csv_rows(csv, xrun, k, pts.has_y ? &yrun : nullptr, valid_column, 0, hull_hi);
    }
    write_file(out_path, csv);
    return kExitOk;
}

int cmd_verify(const SchemeConfig& config, int levels, std::optional<double> tol_override,
               const std::string& report_path) {
    Tolerances tol = config.tolerances;
    if (tol_override) {
        tol.interpolation = *tol_override;
        tol.reproduction = *tol_override;
    }
    SolverChoice solver = effective_solver(config);
    SpectrumSpec spectrum = resolve_spectrum(config);

    InterpolatorySequence seq =
        run_appint(config.program, config.selections, levels, solver, tol.coprimality);

    Json report;
    report["levels"] = levels;
    report["solver"] = solver_name(solver);
    Json tol_json;
    tol_json["interpolation"] = tol.interpolation;
    tol_json["reproduction"] = tol.reproduction;
    tol_json["bezout"] = tol.bezout;
    tol_json["coprimality"] = tol.coprimality;
    report["tolerances"] = std::move(tol_json);
    report["spectrum"] = spectrum_to_json(spectrum);

    bool ok = true;
    double worst = 0.0;
    Json per_level = Json::array();
    for (const LevelRecord& rec : seq.levels) {
        ConditionReport cond = check_reproduction_conditions(rec.m, spectrum, rec.k,
                                                             ConditionMode::Reproduction);
        Json j;
        j["k"] = rec.k;
        j["margin"] = rec.margin;
        j["equation_residual"] = rec.equation_residual;
        j["interpolation_residual"] = rec.interpolation_residual;
        Json cj;
        cj["value"] = cond.value_residual;
        cj["zero"] = cond.zero_residual;
        cj["derivative"] = cond.derivative_residual;
        cj["max"] = cond.max_residual;
        j["condzeros"] = std::move(cj);
        per_level.push_back(std::move(j));
        ok = ok && rec.interpolation_residual <= tol.interpolation &&
             rec.equation_residual <= tol.bezout && cond.passed(tol.reproduction);
        worst = std::max({worst, rec.interpolation_residual, rec.equation_residual,
                          cond.max_residual});
    }
    report["per_level"] = std::move(per_level);

    Json repro = Json::array();
    auto labels = basis_labels_real(spectrum);
    // Stepwise insertion error amplifies with exp(window); tolerance is for
    // the canonical window of 8.
    for (std::size_t b = 0; b < labels.size(); ++b) {
        double res = reproduction_residual(config.program, config.selections, spectrum,
                                           static_cast<int>(b), levels, 8, solver);
        Json j;
        j["basis"] = static_cast<int>(b);
        j["name"] = labels[b];
        j["residual"] = res;
        repro.push_back(std::move(j));
        ok = ok && res <= std::max(tol.reproduction, 1e-8);
        worst = std::max(worst, res);
    }
    report["reproduction"] = std::move(repro);
    report["max_residual"] = worst;
    report["passed"] = ok;
    write_file(report_path, dump_deterministic(report));
    return ok ? kExitOk : kExitTolerance;
}

int cmd_plot(const std::string& csv_path, const std::string& svg_path, int width, int height) {
    CsvData csv = read_refinement_csv(csv_path);
    int deepest = 0;
    for (const auto& r : csv.rows) deepest = std::max(deepest, r.level);

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : csv.rows)
        if (r.level == deepest) pts.emplace_back(csv.has_y ? r.x : r.t, csv.has_y ? r.y : r.x);
    if (pts.empty()) throw ValidationError("plot: no rows at the deepest level");

    double xmin = pts[0].first, xmax = pts[0].first, ymin = pts[0].second, ymax = pts[0].second;
    for (const auto& [x, y] : pts) {
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
    double xspan = std::max(xmax - xmin, 1e-12), yspan = std::max(ymax - ymin, 1e-12);
    double margin = 0.05;
    auto map_x = [&](double x) {
        return (margin + (1 - 2 * margin) * (x - xmin) / xspan) * width;
    };
    auto map_y = [&](double y) {  // SVG y axis points down
        return (margin + (1 - 2 * margin) * (ymax - y) / yspan) * height;
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg += ' ';
        svg += format_shortest(map_x(pts[i].first)) + "," + format_shortest(map_y(pts[i].second));
    }
    svg += "\"/>\n</svg>\n";
    write_file(svg_path, svg);
    return kExitOk;
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"approximating-to-interpolatory subdivision toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, points_path, report_path, in_path;
    int levels = -1, width = 800, height = 600;
    bool valid_column = false;
    double tol = -1.0;

    auto* convert = app.add_subcommand("convert", "derive interpolatory symbols");
    convert->add_option("--config", config_path)->required();
    convert->add_option("--out", out_path);

    auto* subdivide = app.add_subcommand("subdivide", "refine a polyline");
    subdivide->add_option("--config", config_path)->required();
    subdivide->add_option("--points", points_path)->required();
    subdivide->add_option("--levels", levels);
    subdivide->add_option("--out", out_path);
    subdivide->add_flag("--valid-col", valid_column, "append a valid-region flag column");

    auto* verify = app.add_subcommand("verify", "run the verification report");
    verify->add_option("--config", config_path)->required();
    verify->add_option("--levels", levels);
    verify->add_option("--tol", tol);
    verify->add_option("--report", report_path);

    auto* plot = app.add_subcommand("plot", "render a refinement CSV as SVG");
    plot->add_option("--in", in_path)->required();
    plot->add_option("--out", out_path)->required();
    plot->add_option("--width", width);
    plot->add_option("--height", height);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (app.got_subcommand(plot)) return cmd_plot(in_path, out_path, width, height);

        SchemeConfig config = load_config(config_path);
        auto pick_path = [&](const std::string& cli_value, const char* key) {
            if (!cli_value.empty()) return cli_value;
            auto it = config.output.find(key);
            if (it != config.output.end()) return it->second;
            throw ValidationError(std::string("no output path given for ") + key);
        };
        if (app.got_subcommand(convert))
            return cmd_convert(config, pick_path(out_path, "sequence"));
        if (app.got_subcommand(subdivide))
            return cmd_subdivide(config, points_path, levels > 0 ? levels : config.levels,
                                 pick_path(out_path, "csv"), valid_column);
        if (app.got_subcommand(verify))
            return cmd_verify(config, levels > 0 ? levels : config.levels,
                              tol > 0 ? std::optional<double>(tol) : std::nullopt,
                              pick_path(report_path, "report"));
        return kExitValidation;
    } catch (const CoprimalityFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCoprimality;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
}

} // namespace appint::cli
