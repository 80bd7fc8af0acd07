#include "measurements.hpp"

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "biraman/errors.hpp"
#include "biraman/format.hpp"

namespace biraman::cli {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

MeasurementSet read_measurements(std::istream& is, double carrier_rad_s) {
    MeasurementSet set;
    std::set<double> seen;
    std::string line;
    int lineno = 0;
    std::size_t width = 0;

    while (std::getline(is, line)) {
        ++lineno;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto cells = split(text);
        const auto where = "line " + std::to_string(lineno);

        if (width == 0) {
            if (cells.size() == 4 && cells[0] == "delta_pump_hz" && cells[1] == "slope_rad_inv_s" &&
                cells[2] == "fit_bandwidth_hz" && cells[3] == "stderr") {
                set.has_slopes = true;
            } else if (!(cells.size() == 2 && cells[0] == "delta_pump_hz" && cells[1] == "n_g")) {
                throw Error(ErrorCode::invalid_data,
                            where + ": expected header 'delta_pump_hz,n_g' or "
                                    "'delta_pump_hz,slope_rad_inv_s,fit_bandwidth_hz,stderr'");
            }
            width = cells.size();
            continue;
        }

        if (cells.size() != width) {
            throw Error(ErrorCode::invalid_data, where + ": expected " + std::to_string(width) + " fields");
        }
        std::vector<double> v;
        for (const auto c : cells) {
            const auto d = parse_finite(c);
            if (!d) throw Error(ErrorCode::invalid_data, where + ": not a finite number: '" + std::string(c) + "'");
            v.push_back(*d);
        }
        if (!seen.insert(v[0]).second) {
            throw Error(ErrorCode::non_monotone_data, where + ": repeated delta_pump_hz");
        }
        if (set.has_slopes) {
            if (!(v[2] > 0.0) || v[3] < 0.0) {
                throw Error(ErrorCode::invalid_data, where + ": need fit_bandwidth_hz > 0 and stderr >= 0");
            }
            set.slopes.push_back({v[0], v[1], v[2], v[3]});
            set.points.push_back({v[0], cad::ng_from_slope(v[1], carrier_rad_s)});
        } else {
            set.points.push_back({v[0], v[1]});
        }
    }
    if (width == 0) throw Error(ErrorCode::invalid_data, "measurement file has no header row");
    return set;
}

MeasurementSet read_measurements(const std::filesystem::path& path, double carrier_rad_s) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::invalid_data, "cannot open data file " + path.string());
    return read_measurements(in, carrier_rad_s);
}

}  // namespace biraman::cli
