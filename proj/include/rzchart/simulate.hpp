#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rzchart/chart.hpp"
#include "rzchart/var1.hpp"

namespace rzchart {

struct SimConfig {
    Var1Model model;
    int n = 1;
    std::uint64_t seed = 0;
    long long replications = 10000;
    long long max_run_length = 1000000;  // censoring cap per run
};

/// One subgroup of n consecutive process observations. The first observation
/// is drawn from the stationary law, the rest follow the recursion; each
/// subgroup restarts from a fresh stationary draw (rational subgrouping).
std::vector<Vec2> draw_subgroup(const Var1Model& model, const StationaryCov& cov,
                                int n, std::mt19937_64& gen);

/// Subgroup-mean ratio Xbar/Ybar for one simulated subgroup.
double draw_subgroup_ratio(const Var1Model& model, const StationaryCov& cov, int n,
                           std::mt19937_64& gen);

/// Monte Carlo run length of the chart under the model in cfg. Replications
/// use per-index sub-seeds, so the result is bitwise identical whether the
/// loop runs serial or parallel.
RunLengthReport empirical_run_length(const ChartDesign& design, const SimConfig& cfg,
                                     bool parallel = true);

/// Serial reference implementation kept for testing the parallel kernel.
RunLengthReport empirical_run_length_serial(const ChartDesign& design,
                                            const SimConfig& cfg);

/// Simulated Phase I series of t_len observations started from the
/// stationary law (used to exercise the estimation round trip).
std::vector<Vec2> simulate_series(const Var1Model& model, long long t_len,
                                  std::mt19937_64& gen);

}  // namespace rzchart
