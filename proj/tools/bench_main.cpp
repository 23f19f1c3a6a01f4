// Compares the OpenMP kernels against their serial references and reports
// wall times. Also double-checks that both paths produce identical output.

#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "discordlab/channel.hpp"
#include "discordlab/states.hpp"
#include "discordlab/transitions.hpp"

using namespace discordlab;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return 0.0;
#endif
}

std::vector<double> linspace(double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = hi * i / double(n - 1);
    return v;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("compiled without OpenMP: both columns run serially\n");
#endif

    const DensityMatrix4 bds = bds_to_density({1.0, -0.6, 0.6});
    const DephasingChannel ch(1.0, 5.0);

    {
        const auto grid = linspace(3.0, 1000);
        const double t0 = now();
        const auto serial = evolve_trajectory_serial(bds, ch, grid);
        const double t1 = now();
        const auto parallel = evolve_trajectory(bds, ch, grid);
        const double t2 = now();

        double max_diff = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            max_diff = std::max(max_diff, std::abs(serial[i].discord -
                                                   parallel[i].discord));
        std::printf("evolve_trajectory  (%zu points) serial %.3fs  omp %.3fs  "
                    "speedup %.2fx  max |diff| %.3g\n",
                    grid.size(), t1 - t0, t2 - t1,
                    (t2 - t1) > 0 ? (t1 - t0) / (t2 - t1) : 0.0, max_diff);
    }

    {
        const long long n = 1000000;
        const SampleSeed seed{42, 0};
        const double t0 = now();
        const auto serial = random_survey_serial(n, seed, 1e-9);
        const double t1 = now();
        const auto parallel = random_survey(n, seed, 1e-9);
        const double t2 = now();

        const bool same = serial.n_sudden_capable == parallel.n_sudden_capable &&
                          serial.n_sigma_z == parallel.n_sigma_z &&
                          serial.n_sigma_x == parallel.n_sigma_x &&
                          serial.n_both == parallel.n_both &&
                          serial.n_neither == parallel.n_neither;
        std::printf("random_survey      (%lld samples) serial %.3fs  omp %.3fs  "
                    "speedup %.2fx  tallies %s\n",
                    n, t1 - t0, t2 - t1,
                    (t2 - t1) > 0 ? (t1 - t0) / (t2 - t1) : 0.0,
                    same ? "identical" : "DIFFER");
        if (!same) return 1;
    }
    return 0;
}
