#include "trustnet/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace trustnet {

namespace {

LogLevel parse_level() {
    const char* raw = std::getenv("TRUSTNET_LOG");
    if (raw == nullptr) {
        return LogLevel::error;
    }
    const std::string value(raw);
    if (value == "debug") {
        return LogLevel::debug;
    }
    if (value == "info") {
        return LogLevel::info;
    }
    return LogLevel::error;
}

void emit(LogLevel level, const char* tag, std::string_view message) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) {
        return;
    }
    std::fprintf(stderr, "[%s] %.*s\n", tag, static_cast<int>(message.size()), message.data());
}

}  // namespace

LogLevel log_level() {
    static const LogLevel level = parse_level();
    return level;
}

void log_error(std::string_view message) { emit(LogLevel::error, "error", message); }
void log_info(std::string_view message) { emit(LogLevel::info, "info", message); }
void log_debug(std::string_view message) { emit(LogLevel::debug, "debug", message); }

}  // namespace trustnet
