#include "rzchart/sweep.hpp"

#include "rzchart/errors.hpp"

namespace rzchart {

namespace {

struct CellIndex {
    std::size_t n, gx, gy, r0, r1, phi, tau;
};

// Decodes a flat cell index into per-axis indices, lexicographic in the
// declared order (n slowest, tau fastest).
CellIndex decode(const SweepGrid& g, std::size_t flat) {
    const std::size_t n_phi = g.phi_paired ? g.phi11.size()
                                           : g.phi11.size() * g.phi22.size();
    CellIndex c;
    c.tau = flat % g.tau.size();
    flat /= g.tau.size();
    c.phi = flat % n_phi;
    flat /= n_phi;
    c.r1 = flat % g.rho1.size();
    flat /= g.rho1.size();
    c.r0 = flat % g.rho0.size();
    flat /= g.rho0.size();
    c.gy = flat % g.gamma_y.size();
    flat /= g.gamma_y.size();
    c.gx = flat % g.gamma_x.size();
    flat /= g.gamma_x.size();
    c.n = flat;
    return c;
}

SweepRow evaluate(const SweepGrid& g, std::size_t flat) {
    const CellIndex c = decode(g, flat);
    SweepRow row;
    row.n = g.n[c.n];
    row.gamma_x = g.gamma_x[c.gx];
    row.gamma_y = g.gamma_y[c.gy];
    row.rho0 = g.rho0[c.r0];
    row.rho1 = g.rho1[c.r1];
    if (g.phi_paired) {
        row.phi11 = g.phi11[c.phi];
        row.phi22 = g.phi22[c.phi];
    } else {
        row.phi11 = g.phi11[c.phi / g.phi22.size()];
        row.phi22 = g.phi22[c.phi % g.phi22.size()];
    }
    row.tau = g.tau[c.tau];
    const ChartDesign d = design_chart_from_ratios(
        row.gamma_x, row.gamma_y, row.rho0, Mat2::diagonal(row.phi11, row.phi22),
        g.z0, row.n, g.alpha);
    row.lcl = d.lcl;
    row.ucl = d.ucl;
    const RunLengthReport r = arl(d, {row.tau, row.rho1});
    row.beta = r.beta;
    row.arl = r.arl;
    return row;
}

}  // namespace

void SweepGrid::validate() const {
    if (n.empty() || gamma_x.empty() || gamma_y.empty() || rho0.empty() ||
        rho1.empty() || phi11.empty() || phi22.empty() || tau.empty())
        throw validation_error("SweepGrid: every axis needs at least one value");
    if (phi_paired && phi11.size() != phi22.size())
        throw validation_error("SweepGrid: paired phi axes must have equal length");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw validation_error("SweepGrid: alpha must be in (0,1)");
}

std::size_t SweepGrid::cell_count() const {
    const std::size_t n_phi =
        phi_paired ? phi11.size() : phi11.size() * phi22.size();
    return n.size() * gamma_x.size() * gamma_y.size() * rho0.size() * rho1.size() *
           n_phi * tau.size();
}

std::vector<SweepRow> run_sweep_serial(const SweepGrid& grid) {
    grid.validate();
    const std::size_t total = grid.cell_count();
    std::vector<SweepRow> rows(total);
    for (std::size_t i = 0; i < total; ++i) rows[i] = evaluate(grid, i);
    return rows;
}

std::vector<SweepRow> run_sweep(const SweepGrid& grid, bool parallel) {
    if (!parallel) return run_sweep_serial(grid);
    grid.validate();
    const std::size_t total = grid.cell_count();
    std::vector<SweepRow> rows(total);
    // Cells write to disjoint slots indexed by their lexicographic position,
    // so the output order does not depend on the schedule.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long long i = 0; i < static_cast<long long>(total); ++i)
        rows[static_cast<std::size_t>(i)] = evaluate(grid, static_cast<std::size_t>(i));
    return rows;
}

}  // namespace rzchart
