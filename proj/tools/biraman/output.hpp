#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace biraman::cli {

inline constexpr const char* tool_version = "0.1.0";

// Comment lines written at the top of every output file.
struct Provenance {
    std::uint64_t config_hash = 0;
    std::vector<std::string> methods;  // "key: value" tags

    std::string header() const;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<double> values);
};

// Writes header + CSV to dir/name. Throws InvalidConfig if the file cannot be
// created.
std::filesystem::path write_csv(const std::filesystem::path& dir, const std::string& name,
                                const Provenance& prov, const Table& table);
std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name,
                                 const Provenance& prov, const std::string& body);

// Polyline plot of y against x for each series, with axes and min/max labels.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};
std::filesystem::path write_svg(const std::filesystem::path& dir, const std::string& name,
                                const Provenance& prov, const std::string& title,
                                const std::string& x_label, const std::string& y_label,
                                const std::vector<SvgSeries>& series);

}  // namespace biraman::cli
