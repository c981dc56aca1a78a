// Timing comparison of the parallel kernels against their serial reference
// implementations. Also asserts that both paths agree (bitwise for the
// simulator, exactly for the sweep) before reporting speedups.

#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rzchart/chart.hpp"
#include "rzchart/simulate.hpp"
#include "rzchart/sweep.hpp"

using namespace rzchart;
using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled, both paths run serial\n");
#endif

    // Run-length simulation benchmark.
    const Mat2 phi = Mat2::diagonal(0.4, 0.4);
    const Var1Model model = model_from_ratios(0.01, 0.01, -0.4, phi, 1.0);
    const ChartDesign design = design_chart(model, 5, 0.005);
    SimConfig cfg;
    cfg.model = model;
    cfg.n = 5;
    cfg.seed = 20240901;
    cfg.replications = 40000;

    auto t0 = clock_type::now();
    const RunLengthReport serial = empirical_run_length_serial(design, cfg);
    const double t_serial = seconds_since(t0);
    t0 = clock_type::now();
    const RunLengthReport parallel = empirical_run_length(design, cfg, true);
    const double t_parallel = seconds_since(t0);

    const bool sim_match = std::memcmp(&serial.arl, &parallel.arl, sizeof(double)) == 0 &&
                           serial.censored == parallel.censored &&
                           std::memcmp(&serial.stderr_, &parallel.stderr_, sizeof(double)) == 0;
    std::printf("run-length sim (%lld reps): serial %.3fs, parallel %.3fs, "
                "speedup %.2fx, results %s\n",
                cfg.replications, t_serial, t_parallel, t_serial / t_parallel,
                sim_match ? "bitwise identical" : "MISMATCH");

    // Table sweep benchmark.
    SweepGrid grid;
    grid.n = {2, 5, 7, 10, 15};
    grid.gamma_x = {0.01, 0.05, 0.1, 0.2};
    grid.gamma_y = {0.01, 0.05, 0.1, 0.2};
    grid.rho0 = {-0.8, -0.4, 0.0, 0.4, 0.8};
    grid.rho1 = {-0.8, -0.4, 0.0, 0.4, 0.8};
    grid.phi11 = {0.1, 0.3, 0.5, 0.7, 0.9};
    grid.phi22 = {0.1, 0.3, 0.5, 0.7, 0.9};
    grid.tau = {0.9, 0.95, 0.99, 1.01, 1.05, 1.1};

    t0 = clock_type::now();
    const auto rows_serial = run_sweep_serial(grid);
    const double s_serial = seconds_since(t0);
    t0 = clock_type::now();
    const auto rows_parallel = run_sweep(grid, true);
    const double s_parallel = seconds_since(t0);

    bool sweep_match = rows_serial.size() == rows_parallel.size();
    for (std::size_t i = 0; sweep_match && i < rows_serial.size(); ++i) {
        const SweepRow& a = rows_serial[i];
        const SweepRow& b = rows_parallel[i];
        sweep_match = a.n == b.n && a.tau == b.tau && a.lcl == b.lcl &&
                      a.ucl == b.ucl && a.beta == b.beta && a.arl == b.arl;
    }
    std::printf("table sweep (%zu cells): serial %.3fs, parallel %.3fs, "
                "speedup %.2fx, results %s\n",
                rows_serial.size(), s_serial, s_parallel, s_serial / s_parallel,
                sweep_match ? "bitwise identical" : "MISMATCH");

    return (sim_match && sweep_match) ? 0 : 1;
}
