#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ici::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;

struct Preset {
  std::string_view name;
  std::string_view subcommand;
  std::vector<std::string> flags;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

/// Resolves --preset and --config into plain flags. The result is
/// subcommand, preset flags, config flags, then the caller's own flags, so
/// later (explicit) values win. Throws std::invalid_argument naming the flag.
std::vector<std::string> expand_arguments(const std::vector<std::string>& args);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ici::cli
