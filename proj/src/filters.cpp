#include "iterfilt/filters.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "iterfilt/error.hpp"
#include "iterfilt/fft.hpp"

namespace iterfilt {

namespace {

constexpr double kSymmetryTol = 1e-14;
constexpr double kNegativityTol = 1e-14;
constexpr double kMassTol = 1e-12;
constexpr double kImagTol = 1e-12;

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Averages mirrored taps so symmetry holds bit-exactly, then rescales to unit mass.
std::vector<double> symmetrize_and_normalize(std::vector<double> taps) {
    const std::size_t n = taps.size();
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double m = 0.5 * (taps[j] + taps[n - 1 - j]);
        taps[j] = m;
        taps[n - 1 - j] = m;
    }
    const double mass = std::accumulate(taps.begin(), taps.end(), 0.0);
    for (double& t : taps) t /= mass;
    return taps;
}

std::vector<double> rect(std::size_t span) {
    return std::vector<double>(span + 1, 1.0 / static_cast<double>(span + 1));
}

}  // namespace

Filter::Filter(std::vector<double> taps, bool doubly_convolved)
    : taps_(std::move(taps)), doubly_convolved_(doubly_convolved) {
    if (taps_.size() % 2 == 0) {
        throw Error(ErrorCode::invalid_length, "filter must have an odd number of taps");
    }
    const std::size_t n = taps_.size();
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(taps_[j])) throw Error(ErrorCode::invalid_argument, "filter taps must be finite");
        if (taps_[j] < -kNegativityTol) throw Error(ErrorCode::negativity_violation, "filter tap is negative");
        if (std::abs(taps_[j] - taps_[n - 1 - j]) > kSymmetryTol) {
            throw Error(ErrorCode::invalid_argument, "filter taps are not symmetric");
        }
        mass += taps_[j];
    }
    if (std::abs(mass - 1.0) > kMassTol) {
        throw Error(ErrorCode::invalid_argument, "filter taps must sum to 1");
    }
}

Filter build_base_filter(FilterShape shape, std::size_t half_length) {
    if (half_length < 1) {
        throw Error(ErrorCode::invalid_length, "filter half-length must be at least 1");
    }
    const std::size_t L = half_length;
    switch (shape) {
        case FilterShape::triangular: {
            const auto r = rect(L);
            return Filter(symmetrize_and_normalize(convolve(r, r)), true);
        }
        case FilterShape::bspline3: {
            // Four rectangles whose spans sum to 2L, paired so the result is
            // h * h with h a two-rectangle convolution.
            const std::size_t wide = (L + 1) / 2;
            const std::size_t narrow = L / 2;
            const auto h = convolve(rect(wide), rect(narrow));
            return Filter(symmetrize_and_normalize(convolve(h, h)), true);
        }
    }
    throw Error(ErrorCode::invalid_argument, "unknown filter shape");
}

Filter double_convolve(const Filter& h) {
    return Filter(symmetrize_and_normalize(convolve(h.taps(), h.taps())), true);
}

Filter scale_filter(const Filter& base, std::size_t target_half_length) {
    if (target_half_length < 1) {
        throw Error(ErrorCode::invalid_length, "target half-length must be at least 1");
    }
    // The base is a piecewise-linear function through its taps with zeros
    // one sample beyond each end, so tap i sits at (i - L) / (L + 1) on [-1, 1].
    const auto b = base.taps();
    const double L = static_cast<double>(base.half_length());
    const std::size_t Lt = target_half_length;
    std::vector<double> taps(2 * Lt + 1);
    for (std::size_t j = 0; j <= Lt; ++j) {
        const double x = (static_cast<double>(j) - static_cast<double>(Lt)) / static_cast<double>(Lt + 1);
        const double u = x * (L + 1.0) + L;  // fractional base index in [-1, L]
        const double lower = std::floor(u);
        const double frac = u - lower;
        const auto at = [&](double idx) { return idx < 0.0 ? 0.0 : b[static_cast<std::size_t>(idx)]; };
        const double v = frac == 0.0 ? at(lower) : (1.0 - frac) * at(lower) + frac * at(lower + 1.0);
        taps[j] = v;
        taps[2 * Lt - j] = v;
    }
    return Filter(symmetrize_and_normalize(std::move(taps)), base.doubly_convolved());
}

std::vector<double> circulant_row(const Filter& w, std::size_t period) {
    const std::size_t L = w.half_length();
    if (2 * L + 1 > period) {
        throw Error(ErrorCode::filter_too_long, "filter length " + std::to_string(2 * L + 1) +
                                                    " exceeds period " + std::to_string(period));
    }
    const auto t = w.taps();
    std::vector<double> row(period, 0.0);
    row[0] = t[L];
    for (std::size_t q = 1; q <= L; ++q) {
        row[q] = t[L + q];
        row[period - q] = t[L - q];
    }
    return row;
}

FilterSpectrum filter_spectrum(const Filter& w, std::size_t period) {
    const auto row = circulant_row(w, period);
    const auto X = fft::forward(row);
    FilterSpectrum spectrum;
    spectrum.period = period;
    spectrum.eigenvalues.resize(period);
    for (std::size_t j = 0; j < period; ++j) {
        if (std::abs(X[j].imag()) > kImagTol) {
            throw Error(ErrorCode::complex_spectrum, "filter spectrum has an imaginary part at bin " + std::to_string(j));
        }
        spectrum.eigenvalues[j] = X[j].real();
    }
    return spectrum;
}

std::size_t first_spectral_minimum(const FilterSpectrum& spectrum) {
    const auto& lam = spectrum.eigenvalues;
    const std::size_t p = lam.size();
    const std::size_t last = (p + 1) / 2;  // exclusive: bins strictly below p/2
    for (std::size_t j = 1; j < last && j + 1 < p; ++j) {
        if (lam[j] < lam[j - 1] && lam[j] <= lam[j + 1]) return j;
    }
    return 0;
}

Filter enforce_spectral_zero_at(const Filter& h, std::size_t period, std::size_t bin) {
    if (bin < 1 || bin > period / 2) {
        throw Error(ErrorCode::invalid_argument, "zero bin must lie in 1 .. p/2");
    }
    if (4 * h.half_length() + 1 > period) {
        throw Error(ErrorCode::filter_too_long, "zero-enforced filter would exceed the period");
    }
    const double eps = filter_spectrum(h, period).eigenvalues[bin];
    if (!(eps < h.center())) {
        throw Error(ErrorCode::negativity_violation, "eigenvalue " + std::to_string(eps) + " at bin " +
                                                         std::to_string(bin) + " is not below the central tap " +
                                                         std::to_string(h.center()));
    }
    std::vector<double> g(h.taps().begin(), h.taps().end());
    g[h.half_length()] -= eps;
    auto w = convolve(g, g);
    const double scale = (1.0 - eps) * (1.0 - eps);
    for (double& t : w) t /= scale;
    return Filter(symmetrize_and_normalize(std::move(w)), true);
}

std::pair<Filter, std::size_t> enforce_spectral_zero(const Filter& h, std::size_t period) {
    const auto spectrum = filter_spectrum(h, period);
    const std::size_t bin = first_spectral_minimum(spectrum);
    if (bin == 0) {
        throw Error(ErrorCode::no_spectral_minimum, "filter spectrum is monotone over positive bins");
    }
    return {enforce_spectral_zero_at(h, period, bin), bin};
}

}  // namespace iterfilt
