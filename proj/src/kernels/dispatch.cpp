#include "aqc/kernels/kernels.hpp"

namespace aqc::kern {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    static const bool ok = __builtin_cpu_supports("avx2") &&
                           __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

const Impl& active_impl() {
    static const Impl* chosen = [] {
        if (const Impl* v = avx2_impl()) return v;
        return &scalar_impl();
    }();
    return *chosen;
}

} // namespace aqc::kern
