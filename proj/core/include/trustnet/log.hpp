#pragma once

#include <string_view>

namespace trustnet {

/// Diagnostics go to stderr only, gated by TRUSTNET_LOG={error|info|debug}
/// (default error), so stdout stays machine-readable.
enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level();

void log_error(std::string_view message);
void log_info(std::string_view message);
void log_debug(std::string_view message);

}  // namespace trustnet
