#include "spectest/spectral.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace spectest {

namespace {

using cdouble = std::complex<double>;

constexpr std::size_t kDirectGuard = 1u << 14;

/// Immutable per-length transform plan. The power-of-two path uses the
/// tables directly; other lengths go through Bluestein's chirp-z embedding
/// in a power-of-two convolution of size m >= 2n - 1.
struct Plan {
    std::size_t n = 0;
    std::size_t m = 0;
    bool pow2 = false;
    std::vector<std::uint32_t> bitrev;  // size m
    std::vector<cdouble> twiddle;       // exp(-2*pi*i*k/m), k < m/2
    std::vector<cdouble> chirp;         // exp(-i*pi*(k^2 mod 2n)/n), k < n
    std::vector<cdouble> chirp_fft;     // forward FFT of the chirp filter
};

void fft_in_place(std::vector<cdouble>& a, const Plan& plan, bool inverse) {
    const std::size_t m = plan.m;
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t j = plan.bitrev[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = m / len;
        for (std::size_t blk = 0; blk < m; blk += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cdouble w = plan.twiddle[k * step];
                if (inverse) w = std::conj(w);
                const cdouble t = a[blk + k + half] * w;
                a[blk + k + half] = a[blk + k] - t;
                a[blk + k] += t;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(m);
        for (auto& v : a) v *= scale;
    }
}

std::shared_ptr<const Plan> build_plan(std::size_t n) {
    auto plan = std::make_shared<Plan>();
    plan->n = n;
    plan->pow2 = std::has_single_bit(n);
    plan->m = plan->pow2 ? n : std::bit_ceil(2 * n - 1);

    const std::size_t m = plan->m;
    const int bits = std::countr_zero(m);
    plan->bitrev.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t r = 0;
        for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
        plan->bitrev[i] = r;
    }
    plan->twiddle.resize(m / 2);
    for (std::size_t k = 0; k < m / 2; ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        plan->twiddle[k] = {std::cos(ang), std::sin(ang)};
    }

    if (!plan->pow2) {
        // chirp[k] = exp(-i*pi*k^2/n); k^2 reduced mod 2n exactly so the
        // angle never loses integer precision.
        plan->chirp.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t r = (static_cast<std::uint64_t>(k) * k) % (2 * n);
            const double ang = -std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
            plan->chirp[k] = {std::cos(ang), std::sin(ang)};
        }
        std::vector<cdouble> b(m, cdouble{0.0, 0.0});
        b[0] = std::conj(plan->chirp[0]);
        for (std::size_t k = 1; k < n; ++k) {
            b[k] = b[m - k] = std::conj(plan->chirp[k]);
        }
        fft_in_place(b, *plan, /*inverse=*/false);
        plan->chirp_fft = std::move(b);
    }
    return plan;
}

std::shared_ptr<const Plan> plan_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const Plan>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, build_plan(n)).first;
    }
    return it->second;
}

/// Length-preserving complex DFT of `input` (first `plan.n` entries).
std::vector<cdouble> dft_complex(const std::vector<cdouble>& input, const Plan& plan) {
    const std::size_t n = plan.n;
    std::vector<cdouble> a(plan.m, cdouble{0.0, 0.0});
    if (plan.pow2) {
        std::copy(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(n), a.begin());
        fft_in_place(a, plan, /*inverse=*/false);
        return a;
    }
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = input[k] * plan.chirp[k];
    }
    fft_in_place(a, plan, /*inverse=*/false);
    for (std::size_t j = 0; j < plan.m; ++j) a[j] *= plan.chirp_fft[j];
    fft_in_place(a, plan, /*inverse=*/true);

    std::vector<cdouble> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j] * plan.chirp[j];
    return out;
}

/// Half twiddles e^{-2*pi*i*j/n} for the even-length real-input reduction,
/// cached per n alongside the inner half-size plan.
struct RealPlan {
    std::shared_ptr<const Plan> inner; // complex plan of size n/2
    std::vector<cdouble> w;            // j < n/2
};

std::shared_ptr<const RealPlan> real_plan_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const RealPlan>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto plan = std::make_shared<RealPlan>();
    plan->inner = plan_for(n / 2);
    plan->w.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        plan->w[j] = {std::cos(ang), std::sin(ang)};
    }
    std::lock_guard lock(mutex);
    return cache.emplace(n, std::move(plan)).first->second;
}

/// Squared magnitudes of bins j = 0..n/2 (inclusive) for even n, via one
/// half-size complex transform of the packed sequence z_k = x_2k + i x_2k+1.
std::vector<double> mag2_real_even(const PmSequence& x) {
    const std::size_t n = x.size();
    const std::size_t h = n / 2;
    const auto plan = real_plan_for(n);

    std::vector<cdouble> z(h);
    for (std::size_t k = 0; k < h; ++k) {
        z[k] = {static_cast<double>(x[2 * k]), static_cast<double>(x[2 * k + 1])};
    }
    const std::vector<cdouble> Z = dft_complex(z, *plan->inner);

    std::vector<double> mag2(h + 1);
    for (std::size_t j = 0; j < h; ++j) {
        const cdouble zj = Z[j];
        const cdouble zc = std::conj(Z[j == 0 ? 0 : h - j]);
        const cdouble even = 0.5 * (zj + zc);
        const cdouble odd = cdouble{0.0, -0.5} * (zj - zc);
        mag2[j] = std::norm(even + plan->w[j] * odd);
    }
    const double nyquist = Z[0].real() - Z[0].imag();
    mag2[h] = nyquist * nyquist;
    return mag2;
}

/// Full complex spectrum of a +/-1 sequence (general-length path).
std::vector<cdouble> transform(const PmSequence& x) {
    const std::size_t n = x.size();
    std::vector<cdouble> input(n);
    for (std::size_t k = 0; k < n; ++k) input[k] = {static_cast<double>(x[k]), 0.0};
    return dft_complex(input, *plan_for(n));
}

} // namespace

SpectrumResult dft_power(const PmSequence& x, bool half) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("dft_power: n must be at least 2");
    }
    if (half && n % 2 != 0) {
        throw std::invalid_argument("dft_power: half spectrum requires even n");
    }
    SpectrumResult result;
    result.n = n;
    result.half = half;
    const std::size_t bins = half ? n / 2 : n;
    result.mag2.resize(bins);
    if (n % 2 == 0 && n >= 4) {
        const std::vector<double> lower = mag2_real_even(x); // bins 0..n/2
        for (std::size_t j = 0; j < n / 2; ++j) result.mag2[j] = lower[j];
        if (!half) {
            result.mag2[n / 2] = lower[n / 2];
            for (std::size_t j = n / 2 + 1; j < n; ++j) result.mag2[j] = lower[n - j];
        }
        return result;
    }
    const auto spectrum = transform(x);
    for (std::size_t j = 0; j < bins; ++j) {
        result.mag2[j] = std::norm(spectrum[j]);
    }
    return result;
}

SpectrumResult dft_power_direct(const PmSequence& x) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("dft_power_direct: n must be at least 2");
    }
    if (n > kDirectGuard) {
        throw std::invalid_argument("dft_power_direct: n exceeds the quadratic-cost guard");
    }
    SpectrumResult result;
    result.n = n;
    result.half = false;
    result.mag2.resize(n);
    const double two_pi_over_n = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t kj = (static_cast<std::uint64_t>(k) * j) % n;
            const double ang = two_pi_over_n * static_cast<double>(kj);
            re += static_cast<double>(x[k]) * std::cos(ang);
            im += static_cast<double>(x[k]) * std::sin(ang);
        }
        result.mag2[j] = re * re + im * im;
    }
    return result;
}

} // namespace spectest
