#pragma once

#include <CLI11.hpp>

namespace shssa::cli {

/// Adds every subcommand to the app. Handlers run from CLI11 callbacks and
/// report failures by throwing shssa::Error.
void register_commands(CLI::App& app);

}  // namespace shssa::cli
