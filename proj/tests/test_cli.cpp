#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "appint/cli.hpp"
#include "appint/json_io.hpp"
#include "support/oracles.hpp"

using namespace appint;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("appint_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    fs::path file(const std::string& name) const { return path / name; }
    static inline int counter = 0;
};

void write(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kCubicConfig = R"({
  "program": {
    "family": "exp_bspline",
    "spectrum": {"entries": [{"theta": [0, 0], "tau": 2},
                             {"theta": [1, 0], "tau": 1},
                             {"theta": [-1, 0], "tau": 1}]}
  },
  "selections": {"i": 2, "star": "-"},
  "levels": 3
})";

const char* kPresetConfig = R"({
  "program": {"family": "five_term", "case": 1, "v_init": 1.1276259652063807},
  "levels": 4
})";

} // namespace

TEST_CASE("json round trips") {
    LaurentPolynomial p(-2, std::vector<Complex>{{0.5, 0}, {1, -0.25}, {0.5, 0}});
    CHECK(max_coeff_distance(laurent_from_json(laurent_to_json(p)), p) == 0.0);

    SpectrumSpec s({{Complex{0, 0}, 2}, {Complex{0, 1.5}, 1}, {Complex{0, -1.5}, 1}});
    SpectrumSpec back = spectrum_from_json(spectrum_to_json(s));
    CHECK(back.entries().size() == 3);
    CHECK(back.total_order() == 4);

    InterpolatorySelection sel{3, Star::Plus};
    InterpolatorySelection sel_back = selection_from_json(selection_to_json(sel));
    CHECK(sel_back.i == 3);
    CHECK(sel_back.star == Star::Plus);

    CHECK_THROWS_AS(laurent_from_json(Json{{"low", 0}}), ValidationError);
    CHECK_THROWS_AS(selection_from_json(Json{{"i", 1}, {"star", "x"}}), ValidationError);
}

TEST_CASE("deterministic dump is byte-stable and round-trip exact") {
    Json j;
    j["a"] = 0.1;
    j["b"] = 1.0 / 3.0;
    j["c"] = Json::array({1e-300, 2.5e17, -0.0, 42});
    j["nested"] = Json{{"x", "text \"quoted\""}};
    std::string once = dump_deterministic(j);
    std::string twice = dump_deterministic(j);
    CHECK(once == twice);
    Json parsed = Json::parse(once);
    CHECK(parsed["a"].get<double>() == 0.1);
    CHECK(parsed["b"].get<double>() == 1.0 / 3.0);
    CHECK(parsed["c"][0].get<double>() == 1e-300);
    CHECK(parsed["nested"]["x"].get<std::string>() == "text \"quoted\"");

    CHECK(format_shortest(0.5) == "0.5");
    CHECK(format_shortest(1e100) == "1e+100");
}

TEST_CASE("sequence provenance replays exactly") {
    SymbolProgram program = SymbolProgram::five_term_preset_program(1, std::cosh(0.5));
    InterpolatorySequence seq = run_appint(program, {}, 3, SolverChoice::Both);
    Json j = sequence_to_json(seq);
    InterpolatorySequence replay = sequence_from_json(j);
    REQUIRE(replay.levels.size() == seq.levels.size());
    for (std::size_t k = 0; k < seq.levels.size(); ++k) {
        const LevelRecord& rec = replay.levels[k];
        LaurentPolynomial rebuilt = construct_interpolatory(rec.a_hat, rec.cofactor, rec.selection);
        CHECK(max_coeff_distance(rebuilt, rec.m) <= 1e-14);
        CHECK(max_coeff_distance(rec.m, seq.levels[k].m) == 0.0);
    }
}

TEST_CASE("load_config validates strictly") {
    TempDir dir;
    write(dir.file("ok.json"), kCubicConfig);
    cli::SchemeConfig config = cli::load_config(dir.file("ok.json").string());
    CHECK(config.levels == 3);
    CHECK(config.selections.size() == 1);
    CHECK(config.program.family() == SymbolProgram::Family::ExpBspline);
    CHECK(cli::resolve_spectrum(config).total_order() == 4);

    write(dir.file("unknown_family.json"), R"({"program": {"family": "foo"}})");
    CHECK_THROWS_AS(cli::load_config(dir.file("unknown_family.json").string()), ValidationError);

    write(dir.file("unknown_field.json"),
          R"({"program": {"family": "five_term", "case": 1, "v_init": 1.0}, "bogus": 1})");
    CHECK_THROWS_AS(cli::load_config(dir.file("unknown_field.json").string()), ValidationError);

    write(dir.file("bad_v.json"),
          R"({"program": {"family": "five_term", "case": 1, "v_init": -1.5}})");
    CHECK_THROWS_AS(cli::load_config(dir.file("bad_v.json").string()), ValidationError);

    write(dir.file("broken.json"), "{ not json");
    CHECK_THROWS_AS(cli::load_config(dir.file("broken.json").string()), ParseError);

    CHECK_THROWS_AS(cli::load_config((dir.path / "missing.json").string()), ValidationError);
}

TEST_CASE("convert writes deterministic provenance") {
    TempDir dir;
    write(dir.file("config.json"), kPresetConfig);
    cli::SchemeConfig config = cli::load_config(dir.file("config.json").string());
    CHECK(cli::cmd_convert(config, dir.file("a.json").string()) == cli::kExitOk);
    CHECK(cli::cmd_convert(config, dir.file("b.json").string()) == cli::kExitOk);
    CHECK(slurp(dir.file("a.json")) == slurp(dir.file("b.json")));

    InterpolatorySequence seq = sequence_from_json(Json::parse(slurp(dir.file("a.json"))));
    CHECK(seq.levels.size() == 4);
    for (const LevelRecord& rec : seq.levels) CHECK(rec.interpolation_residual <= 1e-9);
}

TEST_CASE("cli end-to-end flows and exit codes") {
    TempDir dir;
    write(dir.file("config.json"), kPresetConfig);
    write(dir.file("cubic.json"), kCubicConfig);

    // convert
    CHECK(cli::run_cli({"convert", "--config", dir.file("config.json").string(), "--out",
                        dir.file("seq.json").string()}) == 0);
    CHECK(fs::exists(dir.file("seq.json")));

    // subdivide a 5-point polyline for 5 levels: the hull of the deepest
    // level carries (5-1)*2^5 + 1 = 129 rows.
    write(dir.file("points.csv"), "x,y\n0,0\n1,1\n2,0\n3,1\n4,0\n");
    CHECK(cli::run_cli({"subdivide", "--config", dir.file("cubic.json").string(), "--points",
                        dir.file("points.csv").string(), "--levels", "5", "--out",
                        dir.file("refined.csv").string()}) == 0);
    std::istringstream csv(slurp(dir.file("refined.csv")));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "level,index,t,x,y");
    int level5_rows = 0;
    while (std::getline(csv, line))
        if (line.rfind("5,", 0) == 0) ++level5_rows;
    CHECK(level5_rows == 129);

    // plot from the refined polyline
    CHECK(cli::run_cli({"plot", "--in", dir.file("refined.csv").string(), "--out",
                        dir.file("curve.svg").string(), "--width", "640", "--height", "480"}) == 0);
    std::string svg = slurp(dir.file("curve.svg"));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);

    // verify: report written, passes at default tolerances
    CHECK(cli::run_cli({"verify", "--config", dir.file("cubic.json").string(), "--levels", "4",
                        "--report", dir.file("report.json").string()}) == 0);
    Json report = Json::parse(slurp(dir.file("report.json")));
    CHECK(report["passed"].get<bool>());
    CHECK(report["per_level"].size() == 4);
    CHECK(report["reproduction"].size() == 4);

    // verify with an absurd tolerance: exit 4, report still written
    CHECK(cli::run_cli({"verify", "--config", dir.file("cubic.json").string(), "--levels", "2",
                        "--tol", "1e-18", "--report", dir.file("report2.json").string()}) == 4);
    CHECK_FALSE(Json::parse(slurp(dir.file("report2.json")))["passed"].get<bool>());

    // six-level verification of the first preset: all spectrum-node
    // residuals within tolerance, exit 0
    CHECK(cli::run_cli({"verify", "--config", dir.file("config.json").string(), "--levels", "6",
                        "--report", dir.file("report6.json").string()}) == 0);
    Json report6 = Json::parse(slurp(dir.file("report6.json")));
    CHECK(report6["passed"].get<bool>());
    for (const Json& level : report6["per_level"])
        CHECK(level["condzeros"]["max"].get<double>() <= 1e-9);

    // validation failures exit 2
    CHECK(cli::run_cli({"convert", "--config", (dir.path / "nope.json").string(), "--out",
                        dir.file("x.json").string()}) == 2);
    write(dir.file("excluded.json"),
          R"({"program": {"family": "five_term", "case": 4, "v_init": -0.5}})");
    CHECK(cli::run_cli({"convert", "--config", dir.file("excluded.json").string(), "--out",
                        dir.file("x.json").string()}) == 2);
}

TEST_CASE("coprimality failure exits 3 and preserves partial output") {
    TempDir dir;
    // 1 - z^2 equals its own reflection.
    write(dir.file("config.json"), R"({
      "program": {"family": "explicit",
                  "symbols": [{"low": 0, "coeffs": [[1,0],[0,0],[-1,0]]}]},
      "levels": 1
    })");
    CHECK(cli::run_cli({"convert", "--config", dir.file("config.json").string(), "--out",
                        dir.file("seq.json").string()}) == 3);
    Json j = Json::parse(slurp(dir.file("seq.json")));
    CHECK(j["failure"].get<std::string>() == "coprimality");
    CHECK(j["level"].get<int>() == 0);
    CHECK(j["levels"].empty());
}

TEST_CASE("solver environment override") {
    TempDir dir;
    write(dir.file("config.json"), kPresetConfig);
    ::setenv("APPINT_SOLVER", "matrix", 1);
    CHECK(cli::run_cli({"convert", "--config", dir.file("config.json").string(), "--out",
                        dir.file("seq.json").string()}) == 0);
    InterpolatorySequence seq = sequence_from_json(Json::parse(slurp(dir.file("seq.json"))));
    for (const LevelRecord& rec : seq.levels) CHECK(rec.solver == "matrix");

    ::setenv("APPINT_SOLVER", "nonsense", 1);
    CHECK(cli::run_cli({"convert", "--config", dir.file("config.json").string(), "--out",
                        dir.file("seq2.json").string()}) == 2);
    ::unsetenv("APPINT_SOLVER");
}

TEST_CASE("points files accept single-column and headerless input") {
    TempDir dir;
    write(dir.file("config.json"), kCubicConfig);
    write(dir.file("points.csv"), "0.0\n2.0\n1.0\n3.0\n");
    CHECK(cli::run_cli({"subdivide", "--config", dir.file("config.json").string(), "--points",
                        dir.file("points.csv").string(), "--levels", "2", "--out",
                        dir.file("out.csv").string(), "--valid-col"}) == 0);
    std::istringstream csv(slurp(dir.file("out.csv")));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "level,index,t,x,valid");
}
