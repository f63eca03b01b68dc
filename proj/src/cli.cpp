#include "anm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <thread>

#include "anm/bench.hpp"
#include "anm/errors.hpp"
#include "anm/infer.hpp"
#include "anm/synth.hpp"
#include "anm/text.hpp"
#include "anm/verify.hpp"

namespace anm {

int exit_code_for(Direction d)
{
    switch (d) {
    case Direction::XtoY: return exit_code::x_to_y;
    case Direction::YtoX: return exit_code::y_to_x;
    case Direction::Abstain: return exit_code::abstain;
    }
    return exit_code::failure;
}

namespace {

void print_score(std::ostream& out, const DirectionScore& s)
{
    using text::format_real;
    out << "decision=" << direction_name(s.decision) << '\n'
        << "n=" << s.n << '\n'
        << "c_xy=" << format_real(s.c_xy) << '\n'
        << "c_yx=" << format_real(s.c_yx) << '\n'
        << "gap=" << format_real(s.gap) << '\n'
        << "tau=" << format_real(s.tau) << '\n'
        << "h_x=" << format_real(s.h_x) << '\n'
        << "h_y=" << format_real(s.h_y) << '\n'
        << "h_res_fwd=" << format_real(s.h_res_fwd) << '\n'
        << "h_res_bwd=" << format_real(s.h_res_bwd) << '\n'
        << "bandwidth_fwd=" << format_real(s.h_fwd) << '\n'
        << "bandwidth_bwd=" << format_real(s.h_bwd) << '\n'
        << "sigma_x=" << format_real(s.sigma_x) << '\n'
        << "sigma_y=" << format_real(s.sigma_y) << '\n'
        << "sigma_res_fwd=" << format_real(s.sigma_res_fwd) << '\n'
        << "sigma_res_bwd=" << format_real(s.sigma_res_bwd) << '\n';
    for (const auto& w : s.warnings)
        out << "warning=" << w << '\n';
}

int run_verify(std::ostream& out, bool lemma1, bool entropy, std::uint64_t seed)
{
    std::vector<VerifyCheck> checks;
    if (lemma1) {
        auto c = verify_identity(seed);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (entropy) {
        auto c = verify_entropy(seed);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.passed;
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": observed=" << text::format_real(c.observed)
            << " expected=" << text::format_real(c.expected) << " tolerance=" << text::format_real(c.tolerance)
            << '\n';
    }
    return all ? 0 : 1;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Causal direction inference under additive noise models", "anm"};
    app.require_subcommand(1);

    std::string data_path, config_path;
    auto* infer = app.add_subcommand("infer", "Score both directions of a two-column CSV");
    infer->add_option("--data", data_path, "CSV with columns x,y")->required()->check(CLI::ExistingFile);
    infer->add_option("--config", config_path, "key=value inference config")->check(CLI::ExistingFile);

    std::string generator, out_path, spec_path;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double b = 1.0, q = 1.0, a = 1.0, s = 1.0;
    auto* simulate = app.add_subcommand("simulate", "Draw a sample from a named generator");
    simulate->add_option("--generator", generator, "cubic, linear-gaussian or custom")
        ->required()
        ->check(CLI::IsMember({"cubic", "linear-gaussian", "custom"}));
    simulate->add_option("--n", n, "sample size")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "random seed")->required();
    simulate->add_option("--out", out_path, "output CSV")->required();
    simulate->add_option("--b", b, "cubic coefficient");
    simulate->add_option("--q", q, "noise power");
    simulate->add_option("--a", a, "linear slope");
    simulate->add_option("--s", s, "noise standard deviation");
    auto* spec_opt = simulate->add_option("--spec", spec_path, "custom generator file")->check(CLI::ExistingFile);

    std::string sweep_spec, sweep_out;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand("sweep", "Run a simulation sweep");
    sweep->add_option("--spec", sweep_spec, "sweep description")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_out, "output directory (overrides out_dir)");
    sweep->add_option("--jobs", jobs, "concurrent replicates")->check(CLI::PositiveNumber);

    bool lemma1 = false, entropy = false, all = false;
    std::uint64_t verify_seed = 1;
    auto* verify = app.add_subcommand("verify", "Run oracle checks");
    verify->add_flag("--lemma1", lemma1, "entropy identity checks");
    verify->add_flag("--entropy", entropy, "entropy estimator checks");
    verify->add_flag("--all", all, "both groups");
    verify->add_option("--seed", verify_seed, "Monte Carlo seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
        reversed.pop_back();
    try {
        app.parse(reversed);
        if (*simulate && generator == "custom" && !*spec_opt)
            throw CLI::ValidationError("--spec", "the custom generator needs --spec");
        if (*sweep && sweep_out.empty() && read_sweep_spec(sweep_spec).out_dir.empty())
            throw CLI::ValidationError("--out", "no output directory given");
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return exit_code::usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }

    try {
        if (*infer) {
            const auto config =
                config_path.empty() ? cli_default_config() : read_config_file(config_path, cli_default_config());
            const auto score = score_direction(ingest_csv(data_path), config);
            print_score(out, score);
            return exit_code_for(score.decision);
        }
        if (*simulate) {
            AnmSpec spec;
            if (generator == "cubic")
                spec = cubic_generator(b, q);
            else if (generator == "linear-gaussian")
                spec = linear_gaussian_generator(a, s);
            else
                spec = parse_generator(read_key_values_file(spec_path));
            const auto sample = sample_anm(spec, n, seed);
            std::ofstream f(out_path);
            if (!f)
                throw Error("cannot write " + out_path);
            f << format_sample_csv(sample);
            if (!f)
                throw Error("cannot write " + out_path);
            return 0;
        }
        if (*sweep) {
            auto spec = read_sweep_spec(sweep_spec);
            if (!sweep_out.empty())
                spec.out_dir = sweep_out;
            const auto result = run_sweep(spec, jobs);
            const auto [rows, aggregates] = emit_results(result, spec.out_dir);
            std::size_t failed = 0;
            for (const auto& r : result.rows)
                failed += r.ok() ? 0 : 1;
            out << "rows=" << rows << '\n' << "aggregates=" << aggregates << '\n' << "failed=" << failed << '\n';
            return 0;
        }
        if (!lemma1 && !entropy)
            all = true;
        return run_verify(out, lemma1 || all, entropy || all, verify_seed);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

} // namespace anm
