// NEON kernel for aarch64: two velocity classes per iteration.  Same split
// real/imaginary layout and operation order as the AVX2 variant; double-
// precision NEON is baseline on aarch64 so no extra compile flags are needed.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <complex>
#include <cstddef>

#include "lambdip/detail/chi_core.hpp"
#include "lambdip/kernels.hpp"

namespace lambdip::kernels {

namespace {

struct CVec {
    float64x2_t re;
    float64x2_t im;
};

inline CVec cmul(CVec a, CVec b) {
    return CVec{vfmsq_f64(vmulq_f64(a.re, b.re), a.im, b.im),
                vfmaq_f64(vmulq_f64(a.im, b.re), a.re, b.im)};
}

inline CVec cdiv(CVec a, CVec b) {
    const float64x2_t mag2 = vfmaq_f64(vmulq_f64(b.im, b.im), b.re, b.re);
    return CVec{vdivq_f64(vfmaq_f64(vmulq_f64(a.im, b.im), a.re, b.re), mag2),
                vdivq_f64(vsubq_f64(vmulq_f64(a.im, b.re), vmulq_f64(a.re, b.im)), mag2)};
}

inline CVec csub(CVec a, CVec b) {
    return CVec{vsubq_f64(a.re, b.re), vsubq_f64(a.im, b.im)};
}

inline CVec cadd(CVec a, CVec b) {
    return CVec{vaddq_f64(a.re, b.re), vaddq_f64(a.im, b.im)};
}

inline CVec cscale(float64x2_t s, CVec a) {
    return CVec{vmulq_f64(s, a.re), vmulq_f64(s, a.im)};
}

struct Consts {
    float64x2_t g1, g2, two_g2, neg_g2, one, zero, T2sq, sat, two_G2, four_G2, C;
};

inline Consts make_consts(double G, double T1, double T2, double C) {
    Consts k;
    k.g1 = vdupq_n_f64(1.0 / T1);
    k.g2 = vdupq_n_f64(1.0 / T2);
    k.two_g2 = vdupq_n_f64(2.0 / T2);
    k.neg_g2 = vdupq_n_f64(-1.0 / T2);
    k.one = vdupq_n_f64(1.0);
    k.zero = vdupq_n_f64(0.0);
    k.T2sq = vdupq_n_f64(T2 * T2);
    k.sat = vdupq_n_f64(4.0 * G * G * T1 * T2);
    k.two_G2 = vdupq_n_f64(2.0 * G * G);
    k.four_G2 = vdupq_n_f64(4.0 * G * G);
    k.C = vdupq_n_f64(C);
    return k;
}

struct Factors {
    float64x2_t A;
    CVec z_probe, n1, n2, d1, d2, pump_pole;
};

inline Factors make_factors(float64x2_t kv, float64x2_t Delta0, float64x2_t delta0,
                            const Consts& k) {
    Factors f;
    const float64x2_t Delta_v = vaddq_f64(Delta0, kv);
    const float64x2_t delta_v = vfmsq_f64(delta0, vdupq_n_f64(2.0), kv);
    f.A = vfmaq_f64(k.one, vmulq_f64(Delta_v, Delta_v), k.T2sq);
    f.z_probe = CVec{vaddq_f64(Delta_v, delta_v), k.g2};
    f.n1 = CVec{delta_v, k.two_g2};
    f.n2 = CVec{vsubq_f64(delta_v, Delta_v), k.g2};
    f.d1 = CVec{delta_v, k.g1};
    f.d2 = CVec{vaddq_f64(delta_v, Delta_v), k.g2};
    f.pump_pole = CVec{Delta_v, k.neg_g2};
    return f;
}

void chi_batch_neon(const double* kv, std::size_t n,
                    double Delta, double delta,
                    double G, double T1, double T2, double C,
                    double* out_re, double* out_im) {
    const Consts k = make_consts(G, T1, T2, C);
    const float64x2_t Delta0 = vdupq_n_f64(Delta);
    const float64x2_t delta0 = vdupq_n_f64(delta);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const Factors f = make_factors(vld1q_f64(kv + i), Delta0, delta0, k);

        const CVec numerator = cdiv(cscale(k.two_G2, cmul(f.n1, f.n2)), f.pump_pole);
        const CVec denominator = csub(cmul(cmul(f.d1, f.d2), f.n2), cscale(k.four_G2, f.n1));
        const CVec ratio = cdiv(numerator, denominator);
        const CVec bracket{vsubq_f64(k.one, ratio.re), vnegq_f64(ratio.im)};

        const float64x2_t scale = vdivq_f64(f.A, vaddq_f64(f.A, k.sat));
        const CVec lorentz = cdiv(CVec{vnegq_f64(scale), k.zero}, f.z_probe);
        const CVec chi = cscale(k.C, cmul(lorentz, bracket));

        vst1q_f64(out_re + i, chi.re);
        vst1q_f64(out_im + i, chi.im);
    }
    for (; i < n; ++i) {
        const std::complex<double> v =
            detail::chi_core(Delta + kv[i], delta - 2.0 * kv[i], G, T1, T2, C);
        out_re[i] = v.real();
        out_im[i] = v.imag();
    }
}

void dchi_batch_neon(const double* kv, std::size_t n,
                     double Delta, double delta,
                     double G, double T1, double T2, double C,
                     double* out_re, double* out_im) {
    const Consts k = make_consts(G, T1, T2, C);
    const float64x2_t Delta0 = vdupq_n_f64(Delta);
    const float64x2_t delta0 = vdupq_n_f64(delta);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const Factors f = make_factors(vld1q_f64(kv + i), Delta0, delta0, k);

        const float64x2_t scale = vdivq_f64(f.A, vaddq_f64(f.A, k.sat));
        const CVec P = cdiv(CVec{vnegq_f64(scale), k.zero}, f.z_probe);
        const CVec dP = cdiv(CVec{vnegq_f64(P.re), vnegq_f64(P.im)}, f.z_probe);

        const CVec n1n2 = cmul(f.n1, f.n2);
        const CVec d1d2 = cmul(f.d1, f.d2);
        const CVec d2n2 = cmul(f.d2, f.n2);
        const CVec d1n2 = cmul(f.d1, f.n2);
        const CVec den = csub(cmul(d1d2, f.n2), cscale(k.four_G2, f.n1));
        const CVec Q = cdiv(cdiv(cscale(k.two_G2, n1n2), f.pump_pole), den);
        const CVec sum3 = cadd(d2n2, cadd(d1n2, d1d2));
        const CVec dden{vsubq_f64(sum3.re, k.four_G2), sum3.im};
        const CVec inner = csub(cmul(cadd(f.n1, f.n2), den), cmul(n1n2, dden));
        const CVec dQ = cmul(cdiv(cscale(k.two_G2, CVec{k.one, k.zero}), f.pump_pole),
                             cdiv(inner, cmul(den, den)));

        const CVec one_minus_Q{vsubq_f64(k.one, Q.re), vnegq_f64(Q.im)};
        const CVec result = cscale(k.C, csub(cmul(dP, one_minus_Q), cmul(P, dQ)));

        vst1q_f64(out_re + i, result.re);
        vst1q_f64(out_im + i, result.im);
    }
    for (; i < n; ++i) {
        const std::complex<double> v =
            detail::dchi_core(Delta + kv[i], delta - 2.0 * kv[i], G, T1, T2, C);
        out_re[i] = v.real();
        out_im[i] = v.imag();
    }
}

} // namespace

const KernelTable& neon_kernel() {
    static const KernelTable table{"neon", &chi_batch_neon, &dchi_batch_neon};
    return table;
}

} // namespace lambdip::kernels

#endif // aarch64
