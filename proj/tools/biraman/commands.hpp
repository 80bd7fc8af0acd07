#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "biraman/errors.hpp"
#include "config.hpp"

namespace biraman::cli {

struct CommandOptions {
    std::optional<std::filesystem::path> data;
    bool svg = false;
};

// Each command validates the config, writes its files under
// cfg.output_dir and prints a short summary to `log`.
void cmd_gain(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);
void cmd_dispersion(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);
void cmd_null(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);
void cmd_spectrum(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);
void cmd_sweep_enhancement(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);

// 0 ok, 2 config, 3 numeric domain, 4 data.
int exit_code_for(const Error& e) noexcept;

}  // namespace biraman::cli
