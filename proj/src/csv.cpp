#include "rzchart/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "rzchart/errors.hpp"

namespace rzchart {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_double(const std::string& s, int line_no, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw validation_error("csv line " + std::to_string(line_no) +
                               ": non-numeric " + what + " field '" + s + "'");
    return v;
}

long parse_long(const std::string& s, int line_no, const char* what) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw validation_error("csv line " + std::to_string(line_no) +
                               ": non-integer " + what + " field '" + s + "'");
    return v;
}

std::string trim_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

PhaseISeries SubgroupData::as_series() const {
    PhaseISeries series;
    for (const auto& sample : samples)
        series.observations.insert(series.observations.end(), sample.begin(),
                                   sample.end());
    return series;
}

SubgroupData read_subgroup_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw validation_error("csv: empty input");
    if (trim_cr(line) != "sample,obs_index,x,y")
        throw validation_error("csv: expected header 'sample,obs_index,x,y', got '" +
                               trim_cr(line) + "'");
    SubgroupData data;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw validation_error("csv line " + std::to_string(line_no) +
                                   ": expected 4 fields, got " +
                                   std::to_string(fields.size()));
        const long sample = parse_long(fields[0], line_no, "sample");
        const long obs = parse_long(fields[1], line_no, "obs_index");
        const double x = parse_double(fields[2], line_no, "x");
        const double y = parse_double(fields[3], line_no, "y");
        if (sample == static_cast<long>(data.samples.size()) + 1 && obs == 1) {
            data.samples.emplace_back();
        } else if (sample != static_cast<long>(data.samples.size()) ||
                   obs != static_cast<long>(data.samples.back().size()) + 1) {
            throw validation_error(
                "csv line " + std::to_string(line_no) +
                ": sample/obs_index must run 1..m / 1..n without gaps");
        }
        data.samples.back().push_back({x, y});
    }
    if (data.samples.empty())
        throw validation_error("csv: no observation rows");
    const std::size_t n = data.samples.front().size();
    for (std::size_t i = 0; i < data.samples.size(); ++i)
        if (data.samples[i].size() != n)
            throw validation_error("csv: subgroup size varies (sample " +
                                   std::to_string(i + 1) + " has " +
                                   std::to_string(data.samples[i].size()) +
                                   " observations, expected " + std::to_string(n) +
                                   ")");
    return data;
}

SubgroupData read_subgroup_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open csv file '" + path + "'");
    return read_subgroup_csv(in);
}

void write_subgroup_csv(std::ostream& out, const SubgroupData& data) {
    out << "sample,obs_index,x,y\n";
    out.precision(std::numeric_limits<double>::max_digits10);  // lossless round trip
    for (std::size_t s = 0; s < data.samples.size(); ++s)
        for (std::size_t k = 0; k < data.samples[s].size(); ++k)
            out << (s + 1) << ',' << (k + 1) << ',' << data.samples[s][k].x << ','
                << data.samples[s][k].y << '\n';
}

void write_subgroup_csv_file(const std::string& path, const SubgroupData& data) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write csv file '" + path + "'");
    write_subgroup_csv(out, data);
}

}  // namespace rzchart
