#pragma once

#include <vector>

#include "rzchart/chart.hpp"
#include "rzchart/csv.hpp"

namespace rzchart {

struct MonitorRow {
    int sample = 0;
    double xbar = 0.0;
    double ybar = 0.0;
    double zbar = 0.0;
    Verdict verdict = Verdict::in_control;
};

/// Plots each subgroup-mean ratio against the chart limits.
inline std::vector<MonitorRow> monitor_samples(const ChartDesign& design,
                                               const SubgroupData& data) {
    std::vector<MonitorRow> rows;
    rows.reserve(data.samples.size());
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        MonitorRow row;
        row.sample = static_cast<int>(i) + 1;
        Vec2 sum{0.0, 0.0};
        for (const Vec2& obs : data.samples[i]) sum = sum + obs;
        const double n = static_cast<double>(data.samples[i].size());
        row.xbar = sum.x / n;
        row.ybar = sum.y / n;
        row.zbar = row.xbar / row.ybar;
        row.verdict = classify(design, row.zbar);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rzchart
