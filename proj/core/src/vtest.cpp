#include "spectest/vtest.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "compensated.hpp"

namespace spectest {

namespace {

constexpr std::size_t kDeltaGuard = 64;
constexpr unsigned kEnumGuard = 22;

double sum_of_squares(const std::vector<double>& mag2) {
    detail::NeumaierSum acc;
    for (double m2 : mag2) acc.add(m2 * m2);
    return acc.value();
}

/// Nyquist coefficient S_{n/2} = sum_k x_k * (-1)^k; integer-exact.
long long nyquist_coefficient(const PmSequence& x) {
    long long s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += (k & 1) ? -static_cast<long long>(x[k]) : static_cast<long long>(x[k]);
    }
    return s;
}

} // namespace

double expected_v_mean(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("expected_v_mean: n must be at least 2");
    }
    if (n % 2 == 0) return 1.0;
    return 1.0 - 1.0 / (2.0 * static_cast<double>(n));
}

double v_n_full(const PmSequence& x) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("v_n_full: n must be at least 2");
    }
    const SpectrumResult spectrum = dft_power(x, /*half=*/false);
    const double nn = static_cast<double>(n);
    return sum_of_squares(spectrum.mag2) / (nn * nn * nn) - 1.0;
}

double v_n_delta_oracle(const PmSequence& x) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("v_n_delta_oracle: n must be at least 2");
    }
    if (n > kDeltaGuard) {
        throw std::invalid_argument("v_n_delta_oracle: n exceeds the quartic-cost guard");
    }
    // For fixed (a,b,c) exactly one d in [0,n) satisfies a-b+c-d in {0,+-n},
    // so the quadruple sum collapses to an O(n^3) scan. Integer-exact.
    const auto v = x.values();
    const long long ln = static_cast<long long>(n);
    long long sum = 0;
    for (long long a = 0; a < ln; ++a) {
        for (long long b = 0; b < ln; ++b) {
            const long long ab = a - b;
            const int xab = v[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
            for (long long c = 0; c < ln; ++c) {
                long long d = ab + c;
                if (d < 0) {
                    d += ln;
                } else if (d >= ln) {
                    d -= ln;
                }
                sum += xab * v[static_cast<std::size_t>(c)] * v[static_cast<std::size_t>(d)];
            }
        }
    }
    const double nn = static_cast<double>(n);
    return static_cast<double>(sum) / (nn * nn) - 1.0;
}

double v_tilde_from_half_spectrum(const SpectrumResult& half_spectrum) {
    if (!half_spectrum.half) {
        throw std::invalid_argument("v_tilde_from_half_spectrum: expected a half spectrum");
    }
    const std::size_t n = half_spectrum.n;
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("v_tilde_from_half_spectrum: requires even n >= 4");
    }
    const double nn = static_cast<double>(n);
    const double scale = std::sqrt(2.0 * nn * nn * nn * nn * nn);
    // Centering is applied after the scaled sum so the large near-equal
    // quantities cancel in one subtraction.
    return sum_of_squares(half_spectrum.mag2) / scale - std::sqrt(nn / 2.0);
}

VStatistic v_tilde_canonical(const PmSequence& x) {
    const std::size_t n = x.size();
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("v_tilde_canonical: requires even n >= 4");
    }
    const SpectrumResult half = dft_power(x, /*half=*/true);
    const double nn = static_cast<double>(n);

    // Full-spectrum quartic sum from the half spectrum:
    // sum_full = 2 * sum_half - |S_0|^4 + |S_{n/2}|^4 (conjugate symmetry).
    const double sum_half = sum_of_squares(half.mag2);
    const double dc4 = half.mag2[0] * half.mag2[0];
    const double snyq = static_cast<double>(nyquist_coefficient(x));
    const double nyq4 = (snyq * snyq) * (snyq * snyq);
    const double v_n = (2.0 * sum_half - dc4 + nyq4) / (nn * nn * nn) - 1.0;

    const double scale = std::sqrt(2.0 * nn * nn * nn * nn * nn);
    const double v_tilde = sum_half / scale - std::sqrt(nn / 2.0);
    return VStatistic{v_n, v_tilde, n, VForm::CanonicalHalf};
}

VStatistic v_tilde_full(const PmSequence& x) {
    const std::size_t n = x.size();
    const double v_n = v_n_full(x);
    const double nn = static_cast<double>(n);
    const double v_tilde = std::sqrt(nn / 8.0) * (v_n - expected_v_mean(n));
    return VStatistic{v_n, v_tilde, n, VForm::FullSpectrum};
}

TestOutcome vtest_pvalue(const SpectrumResult& half_spectrum) {
    const double vt = v_tilde_from_half_spectrum(half_spectrum);
    return TestOutcome{TestKind::Proposed, half_spectrum.n, vt, two_sided_normal_pvalue(vt)};
}

TestOutcome vtest_pvalue(const BitSequence& x) {
    if (x.size() < 4 || x.size() % 2 != 0) {
        throw std::invalid_argument("vtest_pvalue: requires even n >= 4");
    }
    return vtest_pvalue(dft_power(to_pm1(x), /*half=*/true));
}

namespace {

struct EnumAccumulator {
    unsigned n;
    // Exact integer sums over all 2^n sequences of powers of (K - 2n^2),
    // where K = sum_tau c_tau^2 and c_tau is the circular autocorrelation.
    // Via Parseval, sum_j |S_j|^4 = n * K, so V = K/n^2 - 1 and
    // K - 2n^2 = n^2 * (V - 1).
    __int128 sum_dev[5] = {0, 0, 0, 0, 0};

    explicit EnumAccumulator(unsigned n_) : n(n_) {
        if (n < 2 || n > kEnumGuard) {
            throw std::invalid_argument("enumeration oracle: n must be in [2, 22]");
        }
        const std::uint32_t mask_all = (n == 32) ? ~0u : ((1u << n) - 1u);
        const long long n2 = static_cast<long long>(n) * n;
        for (std::uint32_t bits = 0;; ++bits) {
            long long K = n2; // c_0 = n contributes n^2
            for (unsigned tau = 1; tau <= n / 2; ++tau) {
                const std::uint32_t rot = ((bits << tau) | (bits >> (n - tau))) & mask_all;
                const long long c =
                    static_cast<long long>(n) - 2 * std::popcount(bits ^ rot);
                // c_tau = c_{n-tau}; the middle lag of an even n is unpaired.
                K += (2 * tau == n) ? c * c : 2 * c * c;
            }
            long long p = 1;
            const long long dev = K - 2 * n2;
            for (int m = 1; m <= 4; ++m) {
                p *= dev;
                sum_dev[m] += p;
            }
            if (bits == mask_all) break;
        }
    }

    long double mean_dev(int m) const {
        return static_cast<long double>(sum_dev[m]) /
               static_cast<long double>(static_cast<std::uint64_t>(1) << n);
    }
};

} // namespace

double enum_mean_v(unsigned n) {
    const EnumAccumulator acc(n);
    const long double n2 = static_cast<long double>(n) * n;
    // E[V] = E[K]/n^2 - 1 = E[K - 2n^2]/n^2 + 1
    return static_cast<double>(acc.mean_dev(1) / n2 + 1.0L);
}

double enum_var_v(unsigned n) {
    const EnumAccumulator acc(n);
    const long double n2 = static_cast<long double>(n) * n;
    const long double m1 = acc.mean_dev(1) / n2;       // E[V] - 1
    const long double m2 = acc.mean_dev(2) / (n2 * n2); // E[(V-1)^2]
    return static_cast<double>(m2 - m1 * m1);
}

double moment_oracle(unsigned n, unsigned m) {
    if (n % 2 != 0) {
        throw std::invalid_argument("moment_oracle: n must be even");
    }
    if (m == 0 || m > 4) {
        throw std::invalid_argument("moment_oracle: m must be in [1, 4]");
    }
    const EnumAccumulator acc(n);
    // Even n: E[V] = 1 exactly, so v_tilde_full = sqrt(n/8) * (V - 1).
    const long double n2 = static_cast<long double>(n) * n;
    long double dev_scale = 1.0L;
    for (unsigned i = 0; i < m; ++i) dev_scale *= n2;
    const long double central = acc.mean_dev(static_cast<int>(m)) / dev_scale;
    const long double scaled =
        std::pow(static_cast<long double>(n) / 8.0L, static_cast<long double>(m) / 2.0L);
    return static_cast<double>(scaled * central);
}

} // namespace spectest
