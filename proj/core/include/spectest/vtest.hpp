#pragma once

#include <cstddef>

#include "spectest/bitseq.hpp"
#include "spectest/outcome.hpp"
#include "spectest/spectral.hpp"

namespace spectest {

/// Which formula produced a VStatistic.
///
/// CanonicalHalf is the shipped test statistic:
///
///     Vt = (1/sqrt(2 n^5)) * sum_{j=0}^{n/2-1} |S_j|^4  -  sqrt(n/2)
///
/// (counts the DC bin once, omits the Nyquist bin; even n only).
///
/// FullSpectrum is the validation form sqrt(n/8) * (V_n - c_n) over all n
/// bins, with centering c_n = 1 for even n and 1 - 1/(2n) for odd n.
/// The two agree to O(n^-1/2) on random input but are not identical:
/// a pure period-2 signal is invisible to the canonical form.
enum class VForm { CanonicalHalf, FullSpectrum };

struct VStatistic {
    double v_n = 0.0;     ///< raw variance of the power spectrum
    double v_tilde = 0.0; ///< scaled statistic
    std::size_t n = 0;
    VForm form = VForm::CanonicalHalf;
};

/// V_n = (1/n^3) * sum over the full spectrum of |S_j|^4, minus 1.
/// Compensated summation throughout. Requires n >= 2.
double v_n_full(const PmSequence& x);

/// Independent oracle for V_n: the quadruple-index delta sum
///
///   V_n = (1/n^2) sum_{a,b,c,d} x_a x_b x_c x_d [a-b+c-d in {0, +-n}] - 1
///
/// evaluated literally (the delta constraint pins d given a,b,c, so the
/// loop is O(n^3)). No DFT anywhere in this path. Guarded to n <= 64.
double v_n_delta_oracle(const PmSequence& x);

/// Centering constant used by the full-spectrum scaled form:
/// 1 for even n, 1 - 1/(2n) for odd n.
double expected_v_mean(std::size_t n);

/// The canonical (shipped) statistic. Even n >= 4.
VStatistic v_tilde_canonical(const PmSequence& x);

/// Canonical statistic from a precomputed half spectrum (shared-transform
/// path; v_n is not populated on this overload and is set to the value
/// implied by the half spectrum plus the Nyquist bin when provided).
double v_tilde_from_half_spectrum(const SpectrumResult& half_spectrum);

/// Scaled full-spectrum form sqrt(n/8) * (V_n - expected_v_mean(n)); any
/// n >= 2. This is the object whose moments converge to those of the
/// standard normal distribution.
VStatistic v_tilde_full(const PmSequence& x);

/// The proposed randomness test: statistic = canonical v_tilde,
/// p = erfc(|v_tilde| / sqrt(2)). Even n >= 4.
TestOutcome vtest_pvalue(const BitSequence& x);
TestOutcome vtest_pvalue(const SpectrumResult& half_spectrum);

/// Exhaustive-enumeration oracles over all 2^n equiprobable sequences.
/// Exact integer arithmetic internally (circular autocorrelation identity
/// sum_j |S_j|^4 = n * sum_tau c_tau^2); no DFT, no floating accumulation.
/// Guarded to n <= 22 to stay under a minute.
double enum_mean_v(unsigned n);                 ///< exact E[V_n]
double enum_var_v(unsigned n);                  ///< exact Var[V_n]
double moment_oracle(unsigned n, unsigned m);   ///< exact E[(v_tilde_full)^m], even n, m <= 4

} // namespace spectest
