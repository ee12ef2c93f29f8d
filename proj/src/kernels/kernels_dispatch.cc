#include "lambdip/kernels.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#include "lambdip/errors.hpp"

// Runtime kernel selection.  The default is the widest variant the CPU
// supports; LAMBDIP_KERNEL=scalar|avx2|neon overrides it (useful for
// debugging and for the cross-variant equivalence tests).

namespace lambdip::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_kernel(); // defined in kernels_avx2.cc

namespace {
bool host_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
} // namespace
#endif

#if defined(__aarch64__)
const KernelTable& neon_kernel(); // defined in kernels_neon.cc
#endif

std::vector<std::string> available_kernels() {
    std::vector<std::string> names{"scalar"};
#if defined(__x86_64__) || defined(_M_X64)
    if (host_has_avx2()) {
        names.push_back("avx2");
    }
#endif
#if defined(__aarch64__)
    names.push_back("neon");
#endif
    return names;
}

const KernelTable& select_kernel(const std::string& name) {
    if (name == "scalar") {
        return scalar_kernel();
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (!host_has_avx2()) {
            throw InvalidParameterError("kernel 'avx2' is not supported by this CPU");
        }
        return avx2_kernel();
    }
#endif
#if defined(__aarch64__)
    if (name == "neon") {
        return neon_kernel();
    }
#endif
    throw InvalidParameterError("unknown kernel '" + name
                                + "' (available: scalar"
#if defined(__x86_64__) || defined(_M_X64)
                                  ", avx2"
#endif
#if defined(__aarch64__)
                                  ", neon"
#endif
                                  ")");
}

const KernelTable& active_kernel() {
    static const KernelTable& chosen = []() -> const KernelTable& {
        if (const char* env = std::getenv("LAMBDIP_KERNEL")) {
            return select_kernel(env);
        }
#if defined(__x86_64__) || defined(_M_X64)
        if (host_has_avx2()) {
            return avx2_kernel();
        }
#endif
#if defined(__aarch64__)
        return neon_kernel();
#else
        return scalar_kernel();
#endif
    }();
    return chosen;
}

} // namespace lambdip::kernels
