#pragma once

#include <string>
#include <vector>

namespace triple_couple::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

// Entry point of the triple-couple tool; returns the process exit code.
int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args);

// Turns a JSON config object into flag tokens for `subcommand`. Top-level keys
// apply to every subcommand; an object stored under the subcommand's name
// overrides them. Throws std::runtime_error on malformed input.
std::vector<std::string> config_to_args(const std::string& json_text,
                                        const std::string& subcommand);

// Writes to path.tmp and renames over path.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace triple_couple::cli
