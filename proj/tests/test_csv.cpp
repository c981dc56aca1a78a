#include <random>
#include <sstream>

#include "doctest.h"
#include "rzchart/csv.hpp"
#include "rzchart/errors.hpp"
#include "rzchart/monitor.hpp"
#include "rzchart/simulate.hpp"
#include "rzchart/sweep.hpp"

using namespace rzchart;

TEST_CASE("subgroup csv round trips bit-losslessly") {
    Var1Model m;
    m.mu = {25.0, 25.0};
    m.phi = Mat2::diagonal(0.5, 0.5);
    m.sigma_eps = {0.0625, 0.01, 0.01, 0.0625};
    const StationaryCov cov = stationary_covariance(m);
    std::mt19937_64 gen(31337);
    SubgroupData data;
    for (int i = 0; i < 12; ++i)
        data.samples.push_back(draw_subgroup(m, cov, 5, gen));

    std::stringstream buf;
    write_subgroup_csv(buf, data);
    const SubgroupData back = read_subgroup_csv(buf);
    REQUIRE(back.samples.size() == data.samples.size());
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        REQUIRE(back.samples[i].size() == data.samples[i].size());
        for (std::size_t j = 0; j < data.samples[i].size(); ++j) {
            CHECK(back.samples[i][j].x == data.samples[i][j].x);
            CHECK(back.samples[i][j].y == data.samples[i][j].y);
        }
    }
}

TEST_CASE("csv reader validates structure") {
    auto parse = [](const std::string& text) {
        std::stringstream ss(text);
        return read_subgroup_csv(ss);
    };
    CHECK_THROWS_AS(parse(""), validation_error);
    CHECK_THROWS_AS(parse("a,b,c,d\n1,1,1,1\n"), validation_error);
    CHECK_THROWS_AS(parse("sample,obs_index,x,y\n"), validation_error);
    CHECK_THROWS_AS(parse("sample,obs_index,x,y\n1,1,1.0\n"), validation_error);
    CHECK_THROWS_AS(parse("sample,obs_index,x,y\n1,1,abc,1.0\n"), validation_error);
    CHECK_THROWS_AS(parse("sample,obs_index,x,y\n2,1,1.0,1.0\n"), validation_error);
    CHECK_THROWS_AS(parse("sample,obs_index,x,y\n1,2,1.0,1.0\n"), validation_error);
    // Varying subgroup size.
    CHECK_THROWS_AS(
        parse("sample,obs_index,x,y\n1,1,1.0,1.0\n1,2,1.0,1.0\n2,1,1.0,1.0\n"),
        validation_error);
    // Well-formed input parses.
    const SubgroupData ok =
        parse("sample,obs_index,x,y\n1,1,1.5,2.5\n1,2,1.0,2.0\n2,1,3.0,4.0\n2,2,5.0,6.0\n");
    CHECK(ok.samples.size() == 2);
    CHECK(ok.subgroup_size() == 2);
    CHECK(ok.as_series().length() == 4);
}

TEST_CASE("monitor flags samples outside the limits") {
    ChartDesign d;
    d.lcl = 0.97;
    d.ucl = 1.03;
    SubgroupData data;
    data.samples = {{{1.0, 1.0}, {1.0, 1.0}},    // zbar = 1
                    {{1.2, 1.0}, {1.2, 1.0}},    // zbar = 1.2
                    {{0.9, 1.0}, {0.9, 1.0}}};   // zbar = 0.9
    const auto rows = monitor_samples(d, data);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].verdict == Verdict::in_control);
    CHECK(rows[1].verdict == Verdict::out_of_control);
    CHECK(rows[2].verdict == Verdict::out_of_control);
    CHECK(rows[1].zbar == doctest::Approx(1.2));
}

TEST_CASE("sweep rows come out in lexicographic grid order") {
    SweepGrid grid;
    grid.n = {2, 5};
    grid.gamma_x = {0.01};
    grid.gamma_y = {0.01};
    grid.rho0 = {-0.4, 0.4};
    grid.rho1 = {-0.4, 0.4};
    grid.phi11 = {0.1, 0.7};
    grid.phi22 = {0.1, 0.7};
    grid.tau = {0.95, 1.05};
    const auto rows = run_sweep(grid);
    REQUIRE(rows.size() == grid.cell_count());
    CHECK(rows.front().n == 2);
    CHECK(rows.back().n == 5);
    CHECK(rows[0].tau == 0.95);
    CHECK(rows[1].tau == 1.05);  // tau is the fastest axis
    CHECK(rows[0].phi11 == 0.1);
    CHECK(rows[2].phi11 == 0.7);  // paired phi axis next
}

TEST_CASE("parallel and serial sweeps agree exactly") {
    SweepGrid grid;
    grid.n = {2, 5, 7};
    grid.gamma_x = {0.01, 0.2};
    grid.gamma_y = {0.01, 0.2};
    grid.rho0 = {-0.8, 0.0, 0.8};
    grid.rho1 = {-0.8, 0.0, 0.8};
    grid.phi11 = {0.1, 0.7};
    grid.phi22 = {0.1, 0.7};
    grid.tau = {0.9, 0.99, 1.1};
    const auto par = run_sweep(grid, true);
    const auto ser = run_sweep_serial(grid);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].lcl == ser[i].lcl);
        CHECK(par[i].ucl == ser[i].ucl);
        CHECK(par[i].arl == ser[i].arl);
    }
}

TEST_CASE("phi cross mode expands the full product") {
    SweepGrid grid;
    grid.n = {5};
    grid.gamma_x = {0.01};
    grid.gamma_y = {0.01};
    grid.rho0 = {0.0};
    grid.rho1 = {0.0};
    grid.phi11 = {0.1, 0.5};
    grid.phi22 = {0.1, 0.5, 0.7};
    grid.tau = {1.0};
    grid.phi_paired = false;
    CHECK(run_sweep(grid).size() == 6);
    grid.phi_paired = true;
    CHECK_THROWS_AS(run_sweep(grid), validation_error);
}
