#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "anm/bench.hpp"
#include "anm/errors.hpp"

using namespace anm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("anm_bench_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

SweepSpec small_spec()
{
    return parse_sweep_spec(parse_key_values("axis=n\naxis_values=60,120\nrepetitions=3\ncompare_modes=true\n"
                                             "seed=40\ntau0=0\n"));
}

} // namespace

TEST_CASE("sweep spec parsing")
{
    const auto s = small_spec();
    CHECK(s.axis.kind == SweepAxis::Kind::SampleSize);
    CHECK(s.axis.points() == std::vector<double>{60, 120});
    CHECK(s.repetitions == 3);
    CHECK(s.compare_modes);
    CHECK(s.infer_config.seed == 40);
    CHECK(s.infer_config.tau0 == 0.0);

    const auto bw = parse_sweep_spec(parse_key_values("axis=bandwidth\nh0=0.01\nfactor=2\nsteps=3\n"));
    const auto pts = bw.axis.points();
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == doctest::Approx(0.01));
    CHECK(pts[2] == doctest::Approx(0.04));

    CHECK_THROWS_AS(parse_sweep_spec(parse_key_values("axis=colour\n")), ConfigError);
    CHECK_THROWS_AS(parse_sweep_spec(parse_key_values("axis=bandwidth\naxis_values=1,2\n")), ConfigError);
    CHECK_THROWS_AS(parse_sweep_spec(parse_key_values("noise=laplace:1\n")), ConfigError);
    CHECK_THROWS_AS(parse_sweep_spec(parse_key_values("widgets=3\n")), ConfigError);
    CHECK_NOTHROW(parse_sweep_spec(parse_key_values("axis=n\naxis_values=50\ngenerator=custom\nx_dist=gaussian:1\nf=linear:2\n")));
}

TEST_CASE("single replicate aggregation")
{
    SweepRow row;
    row.axis_value = 1.0;
    row.gap = 0.25;
    row.decision = Direction::XtoY;
    const auto agg = aggregate({row});
    REQUIRE(agg.size() == 1);
    CHECK(agg[0].mean_gap == 0.25);
    CHECK(agg[0].sd_gap == 0.0);
    CHECK(agg[0].frac_xtoy == 1.0);
    CHECK(agg[0].n_rows == 1);

    auto spec = parse_sweep_spec(parse_key_values("axis=n\naxis_values=80\nrepetitions=1\n"));
    const auto r = run_sweep(spec, 1);
    REQUIRE(r.rows.size() == 1);
    REQUIRE(r.aggregates.size() == 1);
    CHECK(r.aggregates[0].mean_gap == r.rows[0].gap);
    CHECK(r.aggregates[0].sd_gap == 0.0);
}

TEST_CASE("failed rows do not enter aggregates")
{
    SweepRow ok, bad;
    ok.gap = 1.0;
    ok.decision = Direction::YtoX;
    bad.gap = std::nan("");
    bad.error = "boom";
    const auto agg = aggregate({ok, bad, ok});
    REQUIRE(agg.size() == 1);
    CHECK(agg[0].n_rows == 2);
    CHECK(agg[0].frac_xtoy == 0.0);
}

TEST_CASE("sweep layout and determinism")
{
    const auto spec = small_spec();
    const auto a = run_sweep(spec, 1);
    const auto b = run_sweep(spec, 4);
    REQUIRE(a.rows.size() == 2 * 2 * 3);
    CHECK(format_rows_csv(a.rows) == format_rows_csv(b.rows));
    CHECK(format_aggregates_csv(a.aggregates) == format_aggregates_csv(b.aggregates));
    CHECK(a.rows[0].axis_value == 60);
    CHECK(a.rows[0].mode == EstimationMode::Coupled);
    CHECK(a.rows[3].mode == EstimationMode::Decoupled);
    CHECK(a.rows[2].seed == 42);
    CHECK(a.rows[6].axis_value == 120);
    CHECK(a.aggregates.size() == 4);
}

TEST_CASE("results round-trip through csv")
{
    const auto r = run_sweep(small_spec(), 2);
    const auto dir = scratch("roundtrip");
    const auto [rows_path, agg_path] = emit_results(r, dir.string());
    const auto rows_text = slurp(rows_path);
    CHECK(rows_text.rfind("axis_value,mode,repetition,seed,c_xy,c_yx,gap,decision\n", 0) == 0);
    CHECK(slurp(agg_path).rfind("axis_value,mode,mean_gap,sd_gap,frac_xtoy,n_rows\n", 0) == 0);

    const auto rows = parse_rows_csv(rows_text);
    CHECK(format_aggregates_csv(aggregate(rows)) == slurp(agg_path));
    CHECK(format_rows_csv(rows) == rows_text);

    const auto empty = scratch("empty");
    const auto [er, ea] = emit_results(SweepResult{}, empty.string());
    CHECK(slurp(er) == "axis_value,mode,repetition,seed,c_xy,c_yx,gap,decision\n");
    CHECK(slurp(ea) == "axis_value,mode,mean_gap,sd_gap,frac_xtoy,n_rows\n");
}

TEST_CASE("sample csv ingestion")
{
    CHECK(parse_sample_csv("x,y\n0,1\n1,2\n").size() == 2);
    CHECK(parse_sample_csv("0,1\n1,2\n").size() == 2);
    try {
        parse_sample_csv("0,abc\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    try {
        parse_sample_csv("x,y\n0,1\n2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_sample_csv("x,y\n"), EmptySample);

    const PairedSample s({0.1, -2.5e-7, 3}, {1.0 / 3.0, 4, 5});
    const auto back = parse_sample_csv(format_sample_csv(s));
    CHECK(back.xs() == s.xs());
    CHECK(back.ys() == s.ys());

    const auto dir = scratch("ingest");
    std::ofstream(dir / "s.csv") << "x,y\n0,1\n1,2\n";
    CHECK(ingest_csv((dir / "s.csv").string()).size() == 2);
}
