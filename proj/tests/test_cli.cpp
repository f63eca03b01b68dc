#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "anm/cli.hpp"

using namespace anm;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "anm");
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("anm_cli_" + name);
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

} // namespace

TEST_CASE("exit codes cover every direction")
{
    CHECK(exit_code_for(Direction::XtoY) == 0);
    CHECK(exit_code_for(Direction::YtoX) == 1);
    CHECK(exit_code_for(Direction::Abstain) == 2);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == exit_code::usage);
    CHECK(run({"dance"}).code == exit_code::usage);
    const auto r = run({"sweep", "--spec", "/nonexistent/spec.cfg", "--out", "/tmp"});
    CHECK(r.code == exit_code::usage);
    CHECK_FALSE(r.err.empty());
    CHECK(run({"simulate", "--generator", "quartic", "--n", "10", "--seed", "1", "--out", "x.csv"}).code ==
          exit_code::usage);
    CHECK(run({"simulate", "--generator", "custom", "--n", "10", "--seed", "1", "--out", "x.csv"}).code ==
          exit_code::usage);
    CHECK(run({"infer", "--data", "/nonexistent.csv"}).code == exit_code::usage);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("simulate then infer recovers the causal direction")
{
    const auto dir = scratch("infer");
    const auto data = (dir / "cubic.csv").string();
    REQUIRE(run({"simulate", "--generator", "cubic", "--n", "2000", "--seed", "1000", "--out", data}).code == 0);
    CHECK(slurp(data).rfind("x,y\n", 0) == 0);

    const auto r = run({"infer", "--data", data});
    CHECK(r.code == exit_code::x_to_y);
    CHECK(r.out.find("decision=XtoY\n") != std::string::npos);
    CHECK(r.out.find("gap=") != std::string::npos);

    std::ofstream(dir / "swap.cfg") << "tau0=0\nseed=1\n";
    const auto c = run({"infer", "--data", data, "--config", (dir / "swap.cfg").string()});
    CHECK(c.out.find("tau=0\n") != std::string::npos);

    std::ofstream(dir / "bad.cfg") << "flavour=mint\n";
    CHECK(run({"infer", "--data", data, "--config", (dir / "bad.cfg").string()}).code == exit_code::failure);

    std::ofstream(dir / "broken.csv") << "x,y\n1,2\n3,oops\n";
    const auto b = run({"infer", "--data", (dir / "broken.csv").string()});
    CHECK(b.code == exit_code::failure);
    CHECK(b.err.find("line 3") != std::string::npos);
}

TEST_CASE("simulate is reproducible")
{
    const auto dir = scratch("simulate");
    const auto a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
    run({"simulate", "--generator", "linear-gaussian", "--n", "50", "--seed", "3", "--a", "2", "--out", a});
    run({"simulate", "--generator", "linear-gaussian", "--n", "50", "--seed", "3", "--a", "2", "--out", b});
    CHECK(slurp(a) == slurp(b));

    std::ofstream(dir / "gen.cfg") << "x_dist=uniform:0,1\nf=linear:1\nnoise=laplace:0.1\n";
    CHECK(run({"simulate", "--generator", "custom", "--spec", (dir / "gen.cfg").string(), "--n", "20", "--seed",
               "1", "--out", (dir / "c.csv").string()})
              .code == 0);
}

TEST_CASE("sweep writes both tables")
{
    const auto dir = scratch("sweep");
    std::ofstream(dir / "spec.cfg") << "axis=n\naxis_values=40\nrepetitions=2\n";
    const auto r = run({"sweep", "--spec", (dir / "spec.cfg").string(), "--out", (dir / "out").string(), "--jobs",
                        "2"});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "out" / "rows.csv"));
    CHECK(fs::exists(dir / "out" / "aggregates.csv"));
    std::ofstream(dir / "nodir.cfg") << "axis=n\naxis_values=40\n";
    CHECK(run({"sweep", "--spec", (dir / "nodir.cfg").string()}).code == exit_code::usage);
}

TEST_CASE("verify reports each check")
{
    const auto r = run({"verify", "--lemma1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS numeric cubic") != std::string::npos);
}
