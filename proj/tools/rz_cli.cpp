// Command-line front end for the ratio control chart library.
//
// Subcommands: design, arl, earl, table, estimate, simulate, monitor.
// Options may come from flags or from a config file (key=value lines under
// [subcommand] section headers, see --config); flags override file values.
// Exit codes: 0 success, 2 validation error, 3 numerical-domain error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rzchart/chart.hpp"
#include "rzchart/csv.hpp"
#include "rzchart/errors.hpp"
#include "rzchart/estimation.hpp"
#include "rzchart/monitor.hpp"
#include "rzchart/rng.hpp"
#include "rzchart/simulate.hpp"
#include "rzchart/sweep.hpp"

namespace {

using namespace rzchart;

constexpr int kPrecision = 9;  // significant digits in all emitted numbers

// Model inputs shared by design/arl/earl/simulate/monitor. Either the
// ratio-level parameterization (gamma-x, gamma-y, rho0, z0) or the full
// process law (mu, sigma entries) may be given, not both.
struct ModelOpts {
    double gamma_x = 0.0, gamma_y = 0.0, rho0 = 0.0, z0 = 1.0;
    double mu_x = 0.0, mu_y = 0.0;
    double sig_xx = 0.0, sig_xy = 0.0, sig_yy = 0.0;
    double phi11 = 0.0, phi12 = 0.0, phi21 = 0.0, phi22 = 0.0;
    CLI::Option* opt_gamma_x = nullptr;
    CLI::Option* opt_mu_x = nullptr;

    void add_to(CLI::App& cmd) {
        opt_gamma_x = cmd.add_option("--gamma-x", gamma_x,
                                     "Coefficient of variation of the numerator");
        cmd.add_option("--gamma-y", gamma_y,
                       "Coefficient of variation of the denominator");
        cmd.add_option("--rho0", rho0, "In-control correlation of (X, Y)");
        cmd.add_option("--z0", z0, "In-control ratio mu_X / mu_Y")
            ->capture_default_str();
        opt_mu_x = cmd.add_option("--mu-x", mu_x, "Process mean of X");
        cmd.add_option("--mu-y", mu_y, "Process mean of Y");
        cmd.add_option("--sig-xx", sig_xx, "Innovation covariance entry (X, X)");
        cmd.add_option("--sig-xy", sig_xy, "Innovation covariance entry (X, Y)");
        cmd.add_option("--sig-yy", sig_yy, "Innovation covariance entry (Y, Y)");
        cmd.add_option("--phi11", phi11, "Transition matrix entry (1,1)")
            ->capture_default_str();
        cmd.add_option("--phi12", phi12, "Transition matrix entry (1,2)")
            ->capture_default_str();
        cmd.add_option("--phi21", phi21, "Transition matrix entry (2,1)")
            ->capture_default_str();
        cmd.add_option("--phi22", phi22, "Transition matrix entry (2,2)")
            ->capture_default_str();
    }

    bool ratio_form() const { return opt_gamma_x->count() > 0; }

    Mat2 phi() const { return {phi11, phi12, phi21, phi22}; }

    Var1Model model() const {
        const bool full_form = opt_mu_x->count() > 0;
        if (ratio_form() && full_form)
            throw validation_error(
                "give either the ratio parameterization (--gamma-x ...) or the "
                "full model (--mu-x ...), not both");
        if (ratio_form())
            return model_from_ratios(gamma_x, gamma_y, rho0, phi(), z0);
        if (full_form) {
            Var1Model m;
            m.mu = {mu_x, mu_y};
            m.phi = phi();
            m.sigma_eps = {sig_xx, sig_xy, sig_xy, sig_yy};
            m.validate();
            return m;
        }
        throw validation_error(
            "model not specified: give --gamma-x/--gamma-y/--rho0 or "
            "--mu-x/--mu-y/--sig-xx/--sig-xy/--sig-yy");
    }

    void echo(std::ostream& out) const {
        const Var1Model m = model();
        out << "mu_x = " << m.mu.x << "\nmu_y = " << m.mu.y << "\nphi11 = "
            << m.phi.a11 << "\nphi12 = " << m.phi.a12 << "\nphi21 = " << m.phi.a21
            << "\nphi22 = " << m.phi.a22 << "\nsig_xx = " << m.sigma_eps.a11
            << "\nsig_xy = " << m.sigma_eps.a12 << "\nsig_yy = " << m.sigma_eps.a22
            << "\n";
    }
};

struct AlphaOpts {
    double alpha = 0.0;
    double arl0 = 0.0;
    CLI::Option* opt_alpha = nullptr;
    CLI::Option* opt_arl0 = nullptr;

    void add_to(CLI::App& cmd) {
        opt_alpha = cmd.add_option("--alpha", alpha, "False-alarm probability");
        opt_arl0 = cmd.add_option("--arl0", arl0, "In-control ARL (alpha = 1/ARL0)");
        opt_alpha->excludes(opt_arl0);
    }

    double resolve() const {
        if (opt_alpha->count() > 0) return alpha;
        if (opt_arl0->count() > 0) {
            if (arl0 <= 1.0) throw validation_error("--arl0 must be > 1");
            return alpha_from_arl0(arl0);
        }
        throw validation_error("give exactly one of --alpha or --arl0");
    }
};

// Every record starts with the fully resolved configuration so the output
// alone reproduces the run.
void write_record(const std::string& out_path, const std::string& text) {
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw validation_error("cannot write output file '" + out_path + "'");
        f << text;
    }
}

std::ostringstream make_record(const std::string& command) {
    std::ostringstream os;
    os.precision(kPrecision);
    os << "command = " << command << "\n";
    return os;
}

void echo_design(std::ostream& os, const ModelOpts& model, int n, double alpha) {
    model.echo(os);
    os << "n = " << n << "\nalpha = " << alpha << "\n";
}

ChartDesign build_design(const ModelOpts& model, int n, double alpha) {
    return design_chart(model.model(), n, alpha);
}

void append_design(std::ostream& os, const ChartDesign& d) {
    os << "z0 = " << d.z0 << "\nrho0 = " << d.rho0 << "\ngamma_xbar = "
       << d.in_control_stats.gamma_xbar << "\ngamma_ybar = "
       << d.in_control_stats.gamma_ybar << "\nrho_bar = "
       << d.in_control_stats.rho_bar << "\nomega_bar = "
       << d.in_control_stats.omega_bar << "\nlcl = " << d.lcl << "\nucl = "
       << d.ucl << "\n";
    const RatioParams p = d.in_control_params();
    if (p.outside_validity_range())
        os << "warning = coefficient of variation above 0.2, quantile "
              "approximation degrades\n";
}

// The shifted process keeps the in-control coefficients of variation, moves
// the ratio to tau * z0 and the raw correlation to rho1. Used to drive the
// simulator consistently with the analytic out-of-control computation.
Var1Model shifted_model(const Var1Model& in_control, double tau, double rho1) {
    const StationaryCov cov = stationary_covariance(in_control);
    const double gx = cov.sigma_x() / in_control.mu.x;
    const double gy = cov.sigma_y() / in_control.mu.y;
    Var1Model m = model_from_ratios(gx, gy, rho1, in_control.phi,
                                    tau * in_control.ratio());
    // Rescale so the denominator mean matches the original process.
    const double s = in_control.mu.y;
    m.mu = m.mu * s;
    m.sigma_eps = m.sigma_eps * (s * s);
    return m;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw validation_error(std::string("bad number '") + tok + "' in " +
                                   what);
        }
    }
    if (out.empty())
        throw validation_error(std::string(what) + " must be a non-empty list");
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Shewhart control chart for the ratio of two autocorrelated "
                 "normal variables"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Config file: key=value lines under [subcommand] sections; "
                   "command-line flags override file values");

    // design ---------------------------------------------------------------
    auto* design_cmd = app.add_subcommand("design", "Compute probability limits");
    ModelOpts design_model;
    AlphaOpts design_alpha;
    int design_n = 1;
    std::string design_out;
    design_model.add_to(*design_cmd);
    design_alpha.add_to(*design_cmd);
    design_cmd->add_option("-n,--n", design_n, "Subgroup size")->required();
    design_cmd->add_option("--out", design_out, "Also write the record here");
    design_cmd->callback([&] {
        const double alpha = design_alpha.resolve();
        const ChartDesign d = build_design(design_model, design_n, alpha);
        auto os = make_record("design");
        echo_design(os, design_model, design_n, alpha);
        append_design(os, d);
        write_record(design_out, os.str());
    });

    // arl ------------------------------------------------------------------
    auto* arl_cmd = app.add_subcommand("arl", "Analytic out-of-control ARL");
    ModelOpts arl_model;
    AlphaOpts arl_alpha;
    int arl_n = 1;
    double arl_tau = 1.0, arl_rho1 = 0.0;
    std::string arl_out;
    arl_model.add_to(*arl_cmd);
    arl_alpha.add_to(*arl_cmd);
    arl_cmd->add_option("-n,--n", arl_n, "Subgroup size")->required();
    arl_cmd->add_option("--tau", arl_tau, "Ratio shift z1 = tau * z0")
        ->capture_default_str();
    arl_cmd->add_option("--rho1", arl_rho1, "Out-of-control correlation")
        ->capture_default_str();
    arl_cmd->add_option("--out", arl_out, "Also write the record here");
    arl_cmd->callback([&] {
        const double alpha = arl_alpha.resolve();
        const ChartDesign d = build_design(arl_model, arl_n, alpha);
        const RunLengthReport r = arl(d, {arl_tau, arl_rho1});
        auto os = make_record("arl");
        echo_design(os, arl_model, arl_n, alpha);
        os << "tau = " << arl_tau << "\nrho1 = " << arl_rho1 << "\n";
        append_design(os, d);
        os << "beta = " << r.beta << "\narl = " << r.arl << "\n";
        write_record(arl_out, os.str());
    });

    // earl -----------------------------------------------------------------
    auto* earl_cmd =
        app.add_subcommand("earl", "Expected ARL over a range of shifts");
    ModelOpts earl_model;
    AlphaOpts earl_alpha;
    int earl_n = 1;
    double earl_a = 0.9, earl_b = 1.0, earl_rho1 = 0.0, earl_step = 0.01;
    int earl_order = 64;
    std::string earl_method = "grid", earl_out;
    earl_model.add_to(*earl_cmd);
    earl_alpha.add_to(*earl_cmd);
    earl_cmd->add_option("-n,--n", earl_n, "Subgroup size")->required();
    earl_cmd->add_option("--tau-min", earl_a, "Lower end of the shift range")
        ->capture_default_str();
    earl_cmd->add_option("--tau-max", earl_b, "Upper end of the shift range")
        ->capture_default_str();
    earl_cmd->add_option("--rho1", earl_rho1, "Out-of-control correlation")
        ->capture_default_str();
    earl_cmd
        ->add_option("--method", earl_method,
                     "grid: mean over a discrete tau grid excluding tau=1; "
                     "quadrature: continuous uniform average")
        ->check(CLI::IsMember({"grid", "quadrature"}))
        ->capture_default_str();
    earl_cmd->add_option("--step", earl_step, "Grid step (grid method)")
        ->capture_default_str();
    earl_cmd->add_option("--order", earl_order, "Quadrature order")
        ->capture_default_str();
    earl_cmd->add_option("--out", earl_out, "Also write the record here");
    earl_cmd->callback([&] {
        const double alpha = earl_alpha.resolve();
        const ChartDesign d = build_design(earl_model, earl_n, alpha);
        const double value =
            earl_method == "grid"
                ? earl_grid(d, earl_a, earl_b, earl_rho1, earl_step)
                : earl(d, earl_a, earl_b, earl_rho1, earl_order);
        auto os = make_record("earl");
        echo_design(os, earl_model, earl_n, alpha);
        os << "tau_min = " << earl_a << "\ntau_max = " << earl_b << "\nrho1 = "
           << earl_rho1 << "\nmethod = " << earl_method << "\n";
        if (earl_method == "grid")
            os << "step = " << earl_step << "\n";
        else
            os << "order = " << earl_order << "\n";
        append_design(os, d);
        os << "earl = " << value << "\n";
        write_record(earl_out, os.str());
    });

    // table ----------------------------------------------------------------
    auto* table_cmd =
        app.add_subcommand("table", "Sweep a parameter grid, one CSV row per cell");
    AlphaOpts table_alpha;
    std::string t_n = "5", t_gx = "0.01", t_gy = "0.01", t_r0 = "0", t_r1 = "0";
    std::string t_phi11 = "0", t_phi22 = "0", t_tau = "1", table_out;
    double table_z0 = 1.0;
    bool table_phi_cross = false, table_serial = false;
    table_alpha.add_to(*table_cmd);
    table_cmd->add_option("--n-list", t_n, "Subgroup sizes")->capture_default_str();
    table_cmd->add_option("--gamma-x-list", t_gx, "Numerator CVs")
        ->capture_default_str();
    table_cmd->add_option("--gamma-y-list", t_gy, "Denominator CVs")
        ->capture_default_str();
    table_cmd->add_option("--rho0-list", t_r0, "In-control correlations")
        ->capture_default_str();
    table_cmd->add_option("--rho1-list", t_r1, "Out-of-control correlations")
        ->capture_default_str();
    table_cmd->add_option("--phi11-list", t_phi11, "Transition diagonal (1,1)")
        ->capture_default_str();
    table_cmd->add_option("--phi22-list", t_phi22, "Transition diagonal (2,2)")
        ->capture_default_str();
    table_cmd->add_option("--tau-list", t_tau, "Ratio shifts")->capture_default_str();
    table_cmd->add_option("--z0", table_z0, "In-control ratio")->capture_default_str();
    table_cmd->add_flag("--phi-cross", table_phi_cross,
                        "Cross the phi lists instead of pairing them");
    table_cmd->add_flag("--serial", table_serial, "Disable the parallel sweep");
    table_cmd->add_option("--out", table_out, "Write the CSV here (default stdout)");
    table_cmd->callback([&] {
        SweepGrid grid;
        for (double v : parse_list(t_n, "--n-list")) grid.n.push_back(static_cast<int>(v));
        grid.gamma_x = parse_list(t_gx, "--gamma-x-list");
        grid.gamma_y = parse_list(t_gy, "--gamma-y-list");
        grid.rho0 = parse_list(t_r0, "--rho0-list");
        grid.rho1 = parse_list(t_r1, "--rho1-list");
        grid.phi11 = parse_list(t_phi11, "--phi11-list");
        grid.phi22 = parse_list(t_phi22, "--phi22-list");
        grid.tau = parse_list(t_tau, "--tau-list");
        grid.z0 = table_z0;
        grid.alpha = table_alpha.resolve();
        grid.phi_paired = !table_phi_cross;
        const std::vector<SweepRow> rows = run_sweep(grid, !table_serial);
        std::ostringstream os;
        os.precision(kPrecision);
        os << "# command = table, alpha = " << grid.alpha << ", z0 = " << grid.z0
           << ", phi_paired = " << (grid.phi_paired ? 1 : 0) << "\n";
        os << "n,gamma_x,gamma_y,rho0,rho1,phi11,phi22,tau,lcl,ucl,beta,arl\n";
        for (const SweepRow& r : rows)
            os << r.n << ',' << r.gamma_x << ',' << r.gamma_y << ',' << r.rho0
               << ',' << r.rho1 << ',' << r.phi11 << ',' << r.phi22 << ','
               << r.tau << ',' << r.lcl << ',' << r.ucl << ',' << r.beta << ','
               << r.arl << '\n';
        write_record(table_out, os.str());
    });

    // estimate -------------------------------------------------------------
    auto* est_cmd =
        app.add_subcommand("estimate", "Least-squares VAR(1) fit from subgroup CSV");
    std::string est_in, est_out;
    int est_min_len = 10, est_lags = 4;
    est_cmd->add_option("--input", est_in, "Subgroup CSV (sample,obs_index,x,y)")
        ->required();
    est_cmd->add_option("--min-length", est_min_len, "Minimum series length")
        ->capture_default_str();
    est_cmd->add_option("--lags", est_lags, "Residual diagnostic lags")
        ->capture_default_str();
    est_cmd->add_option("--out", est_out, "Also write the record here");
    est_cmd->callback([&] {
        const SubgroupData data = read_subgroup_csv_file(est_in);
        const Var1Fit fit = estimate_var1(data.as_series(), est_min_len, est_lags);
        auto os = make_record("estimate");
        os << "input = " << est_in << "\nmin_length = " << est_min_len
           << "\nlags = " << est_lags << "\nobservations = "
           << data.as_series().length() << "\n";
        os << "mu_x = " << fit.model.mu.x << "\nmu_y = " << fit.model.mu.y
           << "\nphi11 = " << fit.model.phi.a11 << "\nphi12 = " << fit.model.phi.a12
           << "\nphi21 = " << fit.model.phi.a21 << "\nphi22 = " << fit.model.phi.a22
           << "\nsig_xx = " << fit.model.sigma_eps.a11 << "\nsig_xy = "
           << fit.model.sigma_eps.a12 << "\nsig_yy = " << fit.model.sigma_eps.a22
           << "\nstationary = " << (fit.stationary ? 1 : 0) << "\n";
        for (std::size_t k = 0; k < fit.residual_autocorr.size(); ++k) {
            const Mat2& r = fit.residual_autocorr[k];
            os << "resid_corr_lag" << (k + 1) << " = " << r.a11 << ' ' << r.a12
               << ' ' << r.a21 << ' ' << r.a22 << "\n";
        }
        if (fit.stationary) {
            const StationaryCov cov = stationary_covariance(fit.model);
            os << "sigma_x = " << cov.sigma_x() << "\nsigma_y = " << cov.sigma_y()
               << "\nrho = " << cov.rho << "\n";
        }
        write_record(est_out, os.str());
    });

    // simulate -------------------------------------------------------------
    auto* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo run length of the chart");
    ModelOpts sim_model;
    AlphaOpts sim_alpha;
    int sim_n = 1;
    double sim_tau = 1.0, sim_rho1_val = 0.0;
    std::uint64_t sim_seed = 0;
    long long sim_reps = 10000, sim_cap = 1000000;
    bool sim_serial = false;
    std::string sim_out, sim_emit;
    long long sim_emit_samples = 0;
    sim_model.add_to(*sim_cmd);
    sim_alpha.add_to(*sim_cmd);
    sim_cmd->add_option("-n,--n", sim_n, "Subgroup size")->required();
    sim_cmd->add_option("--tau", sim_tau, "Ratio shift applied to the process")
        ->capture_default_str();
    auto* sim_rho1_opt =
        sim_cmd->add_option("--rho1", sim_rho1_val, "Shifted correlation");
    sim_cmd->add_option("--seed", sim_seed, "Master RNG seed")->capture_default_str();
    sim_cmd->add_option("--replications", sim_reps, "Monte Carlo replications")
        ->capture_default_str();
    sim_cmd->add_option("--max-run-length", sim_cap, "Censoring cap per run")
        ->capture_default_str();
    sim_cmd->add_flag("--serial", sim_serial, "Disable the parallel kernel");
    sim_cmd->add_option("--emit-subgroups", sim_emit,
                        "Write simulated subgroup data to this CSV instead of "
                        "running the run-length study");
    sim_cmd->add_option("--samples", sim_emit_samples,
                        "Number of subgroups for --emit-subgroups");
    sim_cmd->add_option("--out", sim_out, "Also write the record here");
    sim_cmd->callback([&] {
        const double alpha = sim_alpha.resolve();
        const Var1Model in_control = sim_model.model();
        const ChartDesign d = design_chart(in_control, sim_n, alpha);
        const double rho1 =
            sim_rho1_opt->count() > 0 ? sim_rho1_val : d.rho0;
        const Var1Model process = (sim_tau == 1.0 && rho1 == d.rho0)
                                      ? in_control
                                      : shifted_model(in_control, sim_tau, rho1);
        if (!sim_emit.empty()) {
            if (sim_emit_samples < 1)
                throw validation_error("--emit-subgroups needs --samples >= 1");
            const StationaryCov cov = stationary_covariance(process);
            std::mt19937_64 gen(subseed(sim_seed, 0));
            SubgroupData data;
            for (long long i = 0; i < sim_emit_samples; ++i)
                data.samples.push_back(draw_subgroup(process, cov, sim_n, gen));
            write_subgroup_csv_file(sim_emit, data);
            auto os = make_record("simulate");
            echo_design(os, sim_model, sim_n, alpha);
            os << "tau = " << sim_tau << "\nrho1 = " << rho1 << "\nseed = "
               << sim_seed << "\nsamples = " << sim_emit_samples
               << "\nemitted = " << sim_emit << "\n";
            write_record(sim_out, os.str());
            return;
        }
        SimConfig cfg;
        cfg.model = process;
        cfg.n = sim_n;
        cfg.seed = sim_seed;
        cfg.replications = sim_reps;
        cfg.max_run_length = sim_cap;
        const RunLengthReport r = empirical_run_length(d, cfg, !sim_serial);
        auto os = make_record("simulate");
        echo_design(os, sim_model, sim_n, alpha);
        os << "tau = " << sim_tau << "\nrho1 = " << rho1 << "\nseed = " << sim_seed
           << "\nreplications = " << sim_reps << "\nmax_run_length = " << sim_cap
           << "\nserial = " << (sim_serial ? 1 : 0) << "\n";
        append_design(os, d);
        os << "arl_empirical = " << r.arl << "\nstderr = " << r.stderr_
           << "\ncensored = " << r.censored << "\n";
        write_record(sim_out, os.str());
    });

    // monitor --------------------------------------------------------------
    auto* mon_cmd = app.add_subcommand(
        "monitor", "Plot subgroup-mean ratios from a CSV against the limits");
    ModelOpts mon_model;
    AlphaOpts mon_alpha;
    int mon_n = 0;
    std::string mon_in, mon_out;
    mon_model.add_to(*mon_cmd);
    mon_alpha.add_to(*mon_cmd);
    mon_cmd->add_option("-n,--n", mon_n,
                        "Subgroup size (default: inferred from the data)");
    mon_cmd->add_option("--input", mon_in, "Subgroup CSV (sample,obs_index,x,y)")
        ->required();
    mon_cmd->add_option("--out", mon_out, "Write the verdict CSV here");
    mon_cmd->callback([&] {
        const SubgroupData data = read_subgroup_csv_file(mon_in);
        const int n = mon_n > 0 ? mon_n : data.subgroup_size();
        if (n != data.subgroup_size())
            throw validation_error("--n does not match the subgroup size in '" +
                                   mon_in + "'");
        const double alpha = mon_alpha.resolve();
        const ChartDesign d = build_design(mon_model, n, alpha);
        std::ostringstream os;
        os.precision(kPrecision);
        os << "# command = monitor, input = " << mon_in << ", n = " << n
           << ", alpha = " << alpha << ", lcl = " << d.lcl << ", ucl = " << d.ucl
           << "\n";
        os << "sample,xbar,ybar,zbar,verdict\n";
        for (const MonitorRow& row : monitor_samples(d, data))
            os << row.sample << ',' << row.xbar << ',' << row.ybar << ','
               << row.zbar << ','
               << (row.verdict == Verdict::out_of_control ? "out_of_control"
                                                          : "in_control")
               << '\n';
        write_record(mon_out, os.str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rzchart::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rzchart::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
