#include "discordlab/run.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "discordlab/channel.hpp"
#include "discordlab/correlations.hpp"
#include "discordlab/transitions.hpp"

namespace discordlab::cli {

using nlohmann::json;

Command parse_command(const std::string& name) {
    if (name == "evolve") return Command::Evolve;
    if (name == "scan-basis") return Command::ScanBasis;
    if (name == "detect") return Command::Detect;
    if (name == "classify") return Command::Classify;
    if (name == "survey") return Command::Survey;
    throw std::invalid_argument("unknown command: " + name);
}

const char* to_string(Command c) {
    switch (c) {
        case Command::Evolve: return "evolve";
        case Command::ScanBasis: return "scan-basis";
        case Command::Detect: return "detect";
        case Command::Classify: return "classify";
        case Command::Survey: return "survey";
    }
    return "?";
}

std::string format17(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

DensityMatrix4 build_state(const StateSpec& spec) {
    switch (spec.type) {
        case StateSpec::Type::Bds: return bds_to_density(spec.bds);
        case StateSpec::Type::Perturbed:
            return perturbed_bds_to_density(spec.perturbed);
        case StateSpec::Type::X: return xstate_to_density(spec.x);
    }
    throw std::invalid_argument("state descriptor: bad type");
}

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw std::invalid_argument("config: unknown key \"" + it.key() +
                                        "\" in " + where);
    }
}

StateSpec parse_state(const json& j) {
    StateSpec spec;
    const std::string type = j.at("type").get<std::string>();
    if (type == "bds") {
        reject_unknown_keys(j, {"type", "c1", "c2", "c3"}, "state");
        spec.type = StateSpec::Type::Bds;
        spec.bds = {j.at("c1").get<double>(), j.at("c2").get<double>(),
                    j.at("c3").get<double>()};
    } else if (type == "perturbed") {
        reject_unknown_keys(j, {"type", "c1", "c2", "c3", "epsilon"}, "state");
        spec.type = StateSpec::Type::Perturbed;
        spec.perturbed = {j.at("c1").get<double>(), j.at("c2").get<double>(),
                          j.at("c3").get<double>(),
                          j.at("epsilon").get<double>()};
    } else if (type == "x") {
        reject_unknown_keys(
            j, {"type", "p00", "p11", "p22", "p33", "r12", "r03"}, "state");
        spec.type = StateSpec::Type::X;
        spec.x = {j.at("p00").get<double>(), j.at("p11").get<double>(),
                  j.at("p22").get<double>(), j.at("p33").get<double>(),
                  j.at("r12").get<double>(), j.at("r03").get<double>()};
    } else {
        throw std::invalid_argument("state descriptor: unknown type \"" + type +
                                    "\"");
    }
    return spec;
}

// Every numeric field is checked against the owning module's preconditions
// here, before any computation starts.
void validate_config(const RunConfig& cfg) {
    DephasingChannel probe(cfg.a, cfg.tau);  // throws on bad a / tau
    (void)probe;
    if (!(cfg.nu_max > 0.0))
        throw std::invalid_argument("config: nu_max must be > 0");
    if (cfg.steps < 1) throw std::invalid_argument("config: steps must be >= 1");
    if (cfg.command == Command::Survey && cfg.n < 1)
        throw std::invalid_argument("config: n must be >= 1");
    if (cfg.max_depth < 1)
        throw std::invalid_argument("config: max_depth must be >= 1");
    if (!(cfg.tol >= 0.0)) throw std::invalid_argument("config: tol must be >= 0");
    if (cfg.command == Command::ScanBasis) {
        if (cfg.nu_values.empty())
            throw std::invalid_argument("config: scan-basis needs nu_values");
        for (double nu : cfg.nu_values)
            if (!(nu >= 0.0))
                throw std::invalid_argument("config: nu_values must be >= 0");
        if (cfg.theta_steps < 2)
            throw std::invalid_argument("config: theta_steps must be >= 2");
    }
    if (cfg.out.empty())
        throw std::invalid_argument("config: output path is empty");
}

std::vector<double> linspace(double hi, long long count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 1) {
        v[0] = 0.0;
        return v;
    }
    for (long long i = 0; i < count; ++i)
        v[static_cast<std::size_t>(i)] =
            hi * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
}

void write_point_rows(std::ofstream& f,
                      const std::vector<TrajectoryPoint>& pts) {
    f << "nu,discord,classical,mutual_info,theta_star,basis_label\n";
    for (const auto& p : pts)
        f << format17(p.nu) << ',' << format17(p.discord) << ','
          << format17(p.classical) << ',' << format17(p.mutual_info) << ','
          << format17(p.theta_star) << ',' << to_string(p.basis_label) << '\n';
}

int finish_file(std::ofstream& f, std::ostream& diag,
                const std::string& path) {
    f.flush();
    if (!f) {
        diag << json{{"error", "failed writing output file"}, {"path", path}}
             << '\n';
        return 3;
    }
    return 0;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    const json j = json::parse(json_text);
    reject_unknown_keys(j,
                        {"command", "state", "a", "tau", "nu_max", "steps", "n",
                         "seed", "stream", "tol", "max_depth", "nu_values",
                         "theta_steps", "full_phi_scan", "out"},
                        "config");
    RunConfig cfg;
    if (j.contains("command"))
        cfg.command = parse_command(j.at("command").get<std::string>());
    if (j.contains("state")) cfg.state = parse_state(j.at("state"));
    if (j.contains("a")) cfg.a = j.at("a").get<double>();
    if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
    if (j.contains("nu_max")) cfg.nu_max = j.at("nu_max").get<double>();
    if (j.contains("steps")) cfg.steps = j.at("steps").get<long long>();
    if (j.contains("n")) cfg.n = j.at("n").get<long long>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("stream")) cfg.stream = j.at("stream").get<std::uint64_t>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("max_depth")) cfg.max_depth = j.at("max_depth").get<int>();
    if (j.contains("nu_values"))
        cfg.nu_values = j.at("nu_values").get<std::vector<double>>();
    if (j.contains("theta_steps"))
        cfg.theta_steps = j.at("theta_steps").get<long long>();
    if (j.contains("full_phi_scan"))
        cfg.full_phi_scan = j.at("full_phi_scan").get<bool>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out_stream, std::ostream& diag) {
    try {
        validate_config(cfg);

        const DephasingChannel ch(cfg.a, cfg.tau);
        const OptimizerOptions opts{cfg.full_phi_scan};

        std::ofstream f(cfg.out);
        if (!f) {
            diag << json{{"error", "cannot open output file"},
                         {"path", cfg.out}}
                 << '\n';
            return 3;
        }

        switch (cfg.command) {
            case Command::Evolve: {
                const DensityMatrix4 state = build_state(cfg.state);
                const auto pts = evolve_trajectory(
                    state, ch, linspace(cfg.nu_max, cfg.steps), opts);
                write_point_rows(f, pts);
                break;
            }
            case Command::Detect: {
                const DensityMatrix4 state = build_state(cfg.state);
                const double step =
                    cfg.nu_max / static_cast<double>(cfg.steps);
                const TransitionReport rep = detect_transitions(
                    state, ch, cfg.nu_max, step, cfg.max_depth, opts);
                write_point_rows(f, rep.points);

                json events = json::array();
                for (const auto& ev : rep.events)
                    events.push_back({{"nu_left", ev.nu_left},
                                      {"nu_right", ev.nu_right},
                                      {"kind", to_string(ev.kind)},
                                      {"theta_jump", ev.theta_jump},
                                      {"refinement_depth", ev.refinement_depth},
                                      {"left_slope", ev.left_slope},
                                      {"right_slope", ev.right_slope}});
                out_stream << json{{"events", events},
                                   {"derivative_gap", rep.derivative_gap}}
                           << '\n';
                break;
            }
            case Command::ScanBasis: {
                const DensityMatrix4 state = build_state(cfg.state);
                std::vector<double> thetas(
                    static_cast<std::size_t>(cfg.theta_steps));
                for (long long i = 0; i < cfg.theta_steps; ++i)
                    thetas[static_cast<std::size_t>(i)] =
                        0.5 * std::numbers::pi * static_cast<double>(i) /
                        static_cast<double>(cfg.theta_steps - 1);
                f << "nu,theta,objective\n";
                for (double nu : cfg.nu_values) {
                    const DensityMatrix4 evolved =
                        apply_two_qubit(ch, state, DimensionlessTime(nu));
                    for (const auto& pt : scan_basis(evolved, thetas))
                        f << format17(nu) << ',' << format17(pt.theta) << ','
                          << format17(pt.value) << '\n';
                }
                break;
            }
            case Command::Classify: {
                const XStateParams xp =
                    density_to_xparams(build_state(cfg.state));
                const ChenClass c = chen_classify(xp);
                const bool capable = sudden_capable(xp, cfg.tol);
                f << "label,sigma_z_lhs,sigma_z_rhs,sigma_x_lhs,sigma_x_rhs,"
                     "sudden_capable,r03_flipped\n";
                f << to_string(c.label) << ',' << format17(c.sigma_z_lhs) << ','
                  << format17(c.sigma_z_rhs) << ',' << format17(c.sigma_x_lhs)
                  << ',' << format17(c.sigma_x_rhs) << ','
                  << (capable ? "true" : "false") << ','
                  << (c.r03_flipped ? "true" : "false") << '\n';
                break;
            }
            case Command::Survey: {
                const SurveyReport rep =
                    random_survey(cfg.n, {cfg.seed, cfg.stream}, cfg.tol);
                f << "seed,n,n_sudden_capable,n_sigma_z,n_sigma_x,n_both,"
                     "n_neither\n";
                f << rep.seed.seed << ',' << rep.n << ','
                  << rep.n_sudden_capable << ',' << rep.n_sigma_z << ','
                  << rep.n_sigma_x << ',' << rep.n_both << ','
                  << rep.n_neither << '\n';
                break;
            }
        }
        return finish_file(f, diag, cfg.out);
    } catch (const json::exception& e) {
        diag << json{{"error", e.what()}} << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        diag << json{{"error", e.what()}} << '\n';
        return 2;
    } catch (const InvalidStateError& e) {
        diag << json{{"error", e.what()}} << '\n';
        return 2;
    } catch (const NotXShapedError& e) {
        diag << json{{"error", e.what()}} << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        diag << json{{"error", e.what()}} << '\n';
        return 3;
    }
}

}  // namespace discordlab::cli
