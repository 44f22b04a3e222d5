#include "kernels_internal.hpp"

#include <atomic>
#include <cstdlib>

namespace jointmix::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(JOINTMIX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* best_available() noexcept {
    if (const auto* t = avx2_table()) return t;
    if (const auto* t = neon_table()) return t;
    return &scalar_table();
}

const KernelTable* initial_table() noexcept {
    if (const char* env = std::getenv("JOINTMIX_KERNELS")) {
        if (auto b = parse_backend(env)) {
            if (const auto* t = table_for(*b)) return t;
        }
    }
    return best_available();
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable* avx2_table() noexcept {
#if defined(JOINTMIX_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? detail::avx2_kernels() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(JOINTMIX_HAVE_NEON)
    return detail::neon_kernels();
#else
    return nullptr;
#endif
}

const KernelTable* table_for(Backend b) noexcept {
    switch (b) {
        case Backend::scalar: return &scalar_table();
        case Backend::avx2: return avx2_table();
        case Backend::neon: return neon_table();
    }
    return nullptr;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool select(Backend b) noexcept {
    const KernelTable* t = table_for(b);
    if (t == nullptr) return false;
    current().store(t, std::memory_order_relaxed);
    return true;
}

std::string_view name(Backend b) noexcept {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

std::optional<Backend> parse_backend(std::string_view s) noexcept {
    if (s == "scalar") return Backend::scalar;
    if (s == "avx2") return Backend::avx2;
    if (s == "neon") return Backend::neon;
    return std::nullopt;
}

}  // namespace jointmix::kernels
