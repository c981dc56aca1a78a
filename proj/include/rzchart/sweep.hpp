#pragma once

#include <vector>

#include "rzchart/chart.hpp"

namespace rzchart {

/// Cross-product grid of table inputs. Phi is diagonal diag(phi11, phi22)
/// with the two axes swept jointly (paired) when phi_paired is true, or as a
/// full cross product otherwise.
struct SweepGrid {
    std::vector<int> n;
    std::vector<double> gamma_x;
    std::vector<double> gamma_y;
    std::vector<double> rho0;
    std::vector<double> rho1;
    std::vector<double> phi11;
    std::vector<double> phi22;
    std::vector<double> tau;
    double z0 = 1.0;
    double alpha = 0.005;
    bool phi_paired = true;

    void validate() const;
    std::size_t cell_count() const;
};

struct SweepRow {
    int n;
    double gamma_x, gamma_y, rho0, rho1, phi11, phi22, tau;
    double lcl, ucl, beta, arl;
};

/// Evaluates every grid cell. Row order is lexicographic in the declared
/// field order above, independent of how the evaluation is scheduled.
std::vector<SweepRow> run_sweep(const SweepGrid& grid, bool parallel = true);

/// Serial reference implementation kept for testing the parallel kernel.
std::vector<SweepRow> run_sweep_serial(const SweepGrid& grid);

}  // namespace rzchart
