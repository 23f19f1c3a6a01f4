// discordlab: two-qubit dephasing laboratory.
//
//   discordlab <command> [--config cfg.json] [--out out.csv] [overrides...]
//
// Commands: evolve, scan-basis, detect, classify, survey. Flag overrides win
// over config-file values. Exit status: 0 success, 2 validation failure,
// 3 I/O failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "discordlab/run.hpp"

namespace {

struct Overrides {
    double a = 0, tau = 0, nu_max = 0, epsilon = 0, c1 = 0, c2 = 0, c3 = 0,
           tol = 0;
    long long steps = 0, n = 0, theta_steps = 0;
    std::uint64_t seed = 0;
    int max_depth = 0;
    std::vector<double> nu_values;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit colored-noise dephasing laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    Overrides ov;
    bool full_phi_scan = false;

    std::vector<CLI::App*> subs;
    for (const char* name :
         {"evolve", "scan-basis", "detect", "classify", "survey"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_path, "output CSV path");
        sub->add_option("--a", ov.a, "noise amplitude");
        sub->add_option("--tau", ov.tau, "noise correlation time");
        sub->add_option("--nu-max", ov.nu_max, "trajectory end, nu = t/2tau");
        sub->add_option("--steps", ov.steps, "grid size / detect step count");
        sub->add_option("--n", ov.n, "survey sample count");
        sub->add_option("--seed", ov.seed, "survey RNG seed");
        sub->add_option("--epsilon", ov.epsilon, "perturbation strength");
        sub->add_option("--c1", ov.c1, "correlation coefficient c1");
        sub->add_option("--c2", ov.c2, "correlation coefficient c2");
        sub->add_option("--c3", ov.c3, "correlation coefficient c3");
        sub->add_option("--tol", ov.tol, "sudden-capability tolerance");
        sub->add_option("--max-depth", ov.max_depth, "detect refinement cap");
        sub->add_option("--theta-steps", ov.theta_steps,
                        "scan-basis theta grid size");
        sub->add_option("--nu", ov.nu_values, "scan-basis time blocks");
        sub->add_flag("--full-phi-scan", full_phi_scan,
                      "force the full phi grid in the optimizer");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        discordlab::cli::RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "{\"error\":\"cannot read config file\"}\n";
                return 3;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            cfg = discordlab::cli::parse_config(buf.str());
        }
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed())
                cfg.command =
                    discordlab::cli::parse_command(subs[i]->get_name());

        const CLI::App* sub = app.get_subcommands().front();
        auto passed = [&](const char* flag) { return sub->count(flag) > 0; };
        if (passed("--out")) cfg.out = out_path;
        if (passed("--a")) cfg.a = ov.a;
        if (passed("--tau")) cfg.tau = ov.tau;
        if (passed("--nu-max")) cfg.nu_max = ov.nu_max;
        if (passed("--steps")) cfg.steps = ov.steps;
        if (passed("--n")) cfg.n = ov.n;
        if (passed("--seed")) cfg.seed = ov.seed;
        if (passed("--tol")) cfg.tol = ov.tol;
        if (passed("--max-depth")) cfg.max_depth = ov.max_depth;
        if (passed("--theta-steps")) cfg.theta_steps = ov.theta_steps;
        if (passed("--nu")) cfg.nu_values = ov.nu_values;
        if (passed("--full-phi-scan")) cfg.full_phi_scan = full_phi_scan;
        if (passed("--c1")) {
            cfg.state.bds.c1 = ov.c1;
            cfg.state.perturbed.c1 = ov.c1;
        }
        if (passed("--c2")) {
            cfg.state.bds.c2 = ov.c2;
            cfg.state.perturbed.c2 = ov.c2;
        }
        if (passed("--c3")) {
            cfg.state.bds.c3 = ov.c3;
            cfg.state.perturbed.c3 = ov.c3;
        }
        if (passed("--epsilon")) {
            cfg.state.perturbed.epsilon = ov.epsilon;
            cfg.state.type = discordlab::cli::StateSpec::Type::Perturbed;
        }

        return discordlab::cli::run(cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 2;
    }
}
