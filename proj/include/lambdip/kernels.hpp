#pragma once

// Batch evaluation kernels for the velocity-class susceptibility.  The hot
// loop of every Doppler integral is "evaluate chi (or dchi/ddelta) for an
// array of Doppler shifts kv at fixed pump/probe settings"; these kernels do
// that in structure-of-arrays form.  A scalar reference implementation is
// always available; AVX2 (x86-64) and NEON (aarch64) variants are selected at
// runtime when the host supports them.
//
// The environment variable LAMBDIP_KERNEL=scalar|avx2|neon forces a variant.

#include <cstddef>
#include <string>
#include <vector>

namespace lambdip::kernels {

// Evaluates n velocity classes: for each kv[i] the pump detuning becomes
// Delta + kv[i] and the probe detuning delta - 2 kv[i] (counter-propagating
// geometry), then chi (or its delta-derivative) is written to re/im.
// Inputs are assumed pre-validated; kernels do no range checking.
using BatchFn = void (*)(const double* kv, std::size_t n,
                         double detuning_Delta, double detuning_delta,
                         double rabi_G, double T1, double T2, double prefactor_C,
                         double* out_re, double* out_im);

struct KernelTable {
    const char* name;
    BatchFn chi_batch;
    BatchFn dchi_batch;
};

// The scalar reference kernel (always available, bit-identical to the
// single-point chi_mollow / dchi_ddelta API).
const KernelTable& scalar_kernel();

// Kernel selected for this process: LAMBDIP_KERNEL override if set, else the
// widest variant the CPU supports.  Resolved once, on first use.
const KernelTable& active_kernel();

// Kernel by name; throws InvalidParameterError if the name is unknown or the
// variant is not available on this host.
const KernelTable& select_kernel(const std::string& name);

// Names of the variants usable on this host (always contains "scalar").
std::vector<std::string> available_kernels();

} // namespace lambdip::kernels
