// Experiment orchestration behind the command-line front end: config
// parsing, state descriptors, CSV emission.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "discordlab/states.hpp"

namespace discordlab::cli {

enum class Command { Evolve, ScanBasis, Detect, Classify, Survey };

Command parse_command(const std::string& name);  // throws on unknown name
const char* to_string(Command c);

// JSON state descriptor: {"type": "bds"|"perturbed"|"x", ...} with fields
// c1,c2,c3 (bds), +epsilon (perturbed), or p00,p11,p22,p33,r12,r03 (x).
struct StateSpec {
    enum class Type { Bds, Perturbed, X };
    Type type = Type::Bds;
    BellDiagonalParams bds{1.0, -0.6, 0.6};
    PerturbedBDSParams perturbed{1.0, -0.6, 0.6, 0.02};
    XStateParams x;
};

DensityMatrix4 build_state(const StateSpec& spec);

struct RunConfig {
    Command command = Command::Evolve;
    StateSpec state;
    double a = 1.0;
    double tau = 5.0;
    double nu_max = 3.0;
    long long steps = 3000;           // evolve grid size / detect step count
    long long n = 100000;             // survey sample count
    std::uint64_t seed = 42;
    std::uint64_t stream = 0;
    double tol = 1e-9;                // sudden-capability tolerance
    int max_depth = 40;               // detect refinement depth cap
    std::vector<double> nu_values;    // scan-basis block times
    long long theta_steps = 361;      // scan-basis grid on [0, pi/2]
    bool full_phi_scan = false;       // optimizer debug switch
    std::string out;                  // output CSV path
};

// Parses a config document; unknown keys are rejected so typos fail loudly.
RunConfig parse_config(const std::string& json_text);

// Executes the configured command. Returns the process exit status: 0 on
// success, 2 on validation failure (a JSON error object is written to diag),
// 3 on I/O failure. detect additionally writes its event summary as JSON to
// `out_stream`. Output is byte-stable for identical configs.
int run(const RunConfig& cfg, std::ostream& out_stream, std::ostream& diag);

// Locale-independent decimal formatting at 17 significant digits.
std::string format17(double v);

}  // namespace discordlab::cli
