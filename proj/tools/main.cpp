#include "experiments.hpp"
#include "selftest.hpp"

#include "spinor_qi/errors.hpp"
#include "spinor_qi/parallel.hpp"

#include <CLI11.hpp>

#include <cstdio>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-spinor relativistic quantum information experiments"};
    app.require_subcommand(1);

    std::optional<std::string> out;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    app.add_option("--out", out, "output directory (overrides the config)");
    app.add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed (overrides the config)");
    app.add_option("--threads", threads, "worker threads, 0 = hardware concurrency");

    std::string config;
    CLI::App* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config, "TOML experiment config")->required();
    run->fallthrough();
    CLI::App* self = app.add_subcommand("selftest", "run the invariant suite");
    self->fallthrough();
    CLI::App* list = app.add_subcommand("list-experiments", "list experiment kinds");
    list->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }
    if (threads != 0) spinor_qi::set_default_threads(threads);

    if (*list) {
        for (const auto& e : spinor_qi::cli::experiments()) std::printf("%-8s %s\n", e.kind.c_str(), e.summary.c_str());
        return exit_ok;
    }
    if (*self) return spinor_qi::cli::selftest(seed.value_or(1), tol) ? exit_ok : exit_failed;

    try {
        for (const std::string& f : spinor_qi::cli::run_config(config, {out, tol, seed})) std::printf("%s\n", f.c_str());
    } catch (const spinor_qi::cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const spinor_qi::error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return exit_numerical;
    }
    return exit_ok;
}
