#include "lambdip/kernels.hpp"

#include <complex>

#include "lambdip/detail/chi_core.hpp"

// Reference kernel: plain loops over the shared scalar core.  This file is
// compiled without ISA-specific flags, so its results define the baseline the
// SIMD variants are tested against.

namespace lambdip::kernels {

namespace {

void chi_batch_scalar(const double* kv, std::size_t n,
                      double Delta, double delta,
                      double G, double T1, double T2, double C,
                      double* out_re, double* out_im) {
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> v =
            detail::chi_core(Delta + kv[i], delta - 2.0 * kv[i], G, T1, T2, C);
        out_re[i] = v.real();
        out_im[i] = v.imag();
    }
}

void dchi_batch_scalar(const double* kv, std::size_t n,
                       double Delta, double delta,
                       double G, double T1, double T2, double C,
                       double* out_re, double* out_im) {
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> v =
            detail::dchi_core(Delta + kv[i], delta - 2.0 * kv[i], G, T1, T2, C);
        out_re[i] = v.real();
        out_im[i] = v.imag();
    }
}

} // namespace

const KernelTable& scalar_kernel() {
    static const KernelTable table{"scalar", &chi_batch_scalar, &dchi_batch_scalar};
    return table;
}

} // namespace lambdip::kernels
