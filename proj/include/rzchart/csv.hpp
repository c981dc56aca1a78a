#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rzchart/estimation.hpp"
#include "rzchart/var1.hpp"

namespace rzchart {

/// Subgroup data as read from or written to CSV. Samples are 1-based in the
/// file; subgroup size must be constant across samples.
struct SubgroupData {
    std::vector<std::vector<Vec2>> samples;

    int subgroup_size() const {
        return samples.empty() ? 0 : static_cast<int>(samples.front().size());
    }

    /// Flattened, in sample-then-observation order, for time-series fitting.
    PhaseISeries as_series() const;
};

/// Reads the `sample,obs_index,x,y` schema. Throws validation_error on a bad
/// header, non-numeric fields, gaps in sample/obs numbering, or a varying
/// subgroup size.
SubgroupData read_subgroup_csv(std::istream& in);
SubgroupData read_subgroup_csv_file(const std::string& path);

void write_subgroup_csv(std::ostream& out, const SubgroupData& data);
void write_subgroup_csv_file(const std::string& path, const SubgroupData& data);

}  // namespace rzchart
