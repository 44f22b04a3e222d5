#pragma once

#include <fmt/format.h>

#include <optional>
#include <string_view>

namespace jointmix::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

void set_level(Level level) noexcept;
Level level() noexcept;
std::optional<Level> parse_level(std::string_view s) noexcept;

// Writes one line to stderr if `lvl` is enabled. Serialised across threads.
void write(Level lvl, std::string_view msg);

template <typename... Args>
void warn(fmt::format_string<Args...> f, Args&&... args) {
    if (level() >= Level::warn) write(Level::warn, fmt::format(f, std::forward<Args>(args)...));
}

template <typename... Args>
void info(fmt::format_string<Args...> f, Args&&... args) {
    if (level() >= Level::info) write(Level::info, fmt::format(f, std::forward<Args>(args)...));
}

template <typename... Args>
void debug(fmt::format_string<Args...> f, Args&&... args) {
    if (level() >= Level::debug) write(Level::debug, fmt::format(f, std::forward<Args>(args)...));
}

}  // namespace jointmix::log
