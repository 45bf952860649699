#include "swiptsim/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace swiptsim::kernels {
namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* resolve_default() {
    if (const char* env = std::getenv("SWIPTSIM_KERNELS")) {
        const std::string_view want(env);
        if (want == "scalar") return &scalar_kernels();
        if (want == "avx2") {
            if (const KernelTable* t = avx2_kernels()) return t;
            // Requested but unavailable: fall through to the best we have
            // rather than crash at startup; select_kernels() is the strict
            // path.
        }
    }
    if (const KernelTable* t = avx2_kernels()) return t;
    return &scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = resolve_default();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void select_kernels(std::string_view name) {
    if (name == "scalar") {
        g_active.store(&scalar_kernels(), std::memory_order_release);
        return;
    }
    if (name == "avx2") {
        const KernelTable* t = avx2_kernels();
        if (!t) throw std::runtime_error("avx2 kernels not available on this CPU/build");
        g_active.store(t, std::memory_order_release);
        return;
    }
    if (name == "auto" || name.empty()) {
        g_active.store(resolve_default(), std::memory_order_release);
        return;
    }
    throw std::invalid_argument("unknown kernel set: " + std::string(name));
}

}  // namespace swiptsim::kernels
