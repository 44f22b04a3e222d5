#include "jointmix/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>

namespace jointmix::log {
namespace {

std::atomic<Level> g_level{Level::warn};
std::mutex g_mutex;

const char* tag(Level lvl) {
    switch (lvl) {
        case Level::error: return "error";
        case Level::warn: return "warning";
        case Level::info: return "info";
        case Level::debug: return "debug";
    }
    return "?";
}

}  // namespace

void set_level(Level lvl) noexcept { g_level.store(lvl); }
Level level() noexcept { return g_level.load(); }

std::optional<Level> parse_level(std::string_view s) noexcept {
    if (s == "error") return Level::error;
    if (s == "warn" || s == "warning") return Level::warn;
    if (s == "info") return Level::info;
    if (s == "debug") return Level::debug;
    return std::nullopt;
}

void write(Level lvl, std::string_view msg) {
    std::lock_guard lock(g_mutex);
    std::fprintf(stderr, "[%s] %.*s\n", tag(lvl), static_cast<int>(msg.size()), msg.data());
}

}  // namespace jointmix::log
