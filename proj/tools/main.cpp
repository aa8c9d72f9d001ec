#include "commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    using spinlab::cli::RunSpec;
    CLI::App app{"spinlab: spinor and special holonomy verification runs"};
    app.require_subcommand(1);
    RunSpec rs;
    std::string spec, out;
    std::uint64_t seed = 0;
    double tol = 0;
    int order = 0, p = 0;
    for (const auto& name : spinlab::cli::command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--spec", spec, "JSON spec file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "seed for sampled data and probe points");
        sub->add_option("--out", out, "write the JSON report here instead of stdout");
        sub->add_option("--tol", tol, "override the main tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--order", order, "truncation order N (cauchy-solve)");
        sub->add_option("--p", p, "block size p (cauchy-solve)");
        sub->callback([&, sub, name] {
            rs.command = name;
            if (sub->count("--spec")) rs.spec_path = spec;
            if (sub->count("--seed")) rs.seed = seed;
            if (sub->count("--out")) rs.out = out;
            if (sub->count("--tol")) rs.tol = tol;
            if (sub->count("--order")) rs.order = order;
            if (sub->count("--p")) rs.p = p;
        });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return spinlab::cli::run_command(rs);
}
