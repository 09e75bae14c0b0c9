#include "iterfilt/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "iterfilt/error.hpp"

namespace iterfilt {

namespace {

constexpr double kZeroBinTol = 1e-12;

// Bin of the first local minimum of a symmetric filter's length-p spectrum,
// evaluated directly from the cosine series and only as far as needed.
std::size_t first_minimum_bin(const Filter& w, std::size_t period, const std::vector<double>& cos_table) {
    const auto t = w.taps();
    const std::size_t L = w.half_length();
    const auto eval = [&](std::size_t j) {
        double acc = t[L];
        std::size_t idx = 0;
        for (std::size_t q = 1; q <= L; ++q) {
            idx += j;
            if (idx >= period) idx -= period;
            acc += 2.0 * t[L + q] * cos_table[idx];
        }
        return acc;
    };
    const std::size_t last = (period + 1) / 2;
    double prev = eval(0);
    double cur = eval(1);
    for (std::size_t j = 1; j < last && j + 1 < period; ++j) {
        const double next = eval(j + 1);
        if (cur < prev && cur <= next) return j;
        prev = cur;
        cur = next;
    }
    return 0;
}

}  // namespace

void MaskStrategy::validate() const {
    if (!(nu > 0.0)) throw Error(ErrorCode::invalid_argument, "nu must be positive");
    if (kind == MaskKind::ideal && !(target_frequency > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "ideal mask needs a positive target frequency");
    }
    if (kind == MaskKind::derivative && derivative_order < 0) {
        throw Error(ErrorCode::invalid_argument, "derivative order must be nonnegative");
    }
}

MaskLength mask_length_from_extrema(std::span<const double> samples, double nu) {
    if (!(nu > 0.0)) throw Error(ErrorCode::invalid_argument, "nu must be positive");
    const std::size_t n = count_extrema(samples);
    if (n < 2) {
        throw Error(ErrorCode::too_few_extrema, "mask selection needs at least 2 extrema, found " + std::to_string(n));
    }
    const std::size_t p = samples.size();
    const double upper = static_cast<double>((p - 1) / 2);
    double frac = nu * static_cast<double>(p) / static_cast<double>(n);
    frac = std::clamp(frac, 1.0, std::max(1.0, upper));
    MaskLength out;
    out.fractional = frac;
    out.half_length = static_cast<std::size_t>(std::llround(frac));
    out.extrema = n;
    return out;
}

std::size_t mask_from_extrema(const Signal& s, double nu) {
    return mask_length_from_extrema(s.samples(), nu).half_length;
}

MaskLength mask_length_from_derivative(const Signal& s, int order, double nu) {
    if (order < 0) throw Error(ErrorCode::invalid_argument, "derivative order must be nonnegative");
    if (order == 0) return mask_length_from_extrema(s.samples(), nu);
    const Signal derivative = finite_difference(s, order);
    return mask_length_from_extrema(derivative.samples(), nu);
}

std::size_t mask_from_derivative(const Signal& s, int order, double nu) {
    return mask_length_from_derivative(s, order, nu).half_length;
}

std::size_t smallest_zero_bin(const FilterSpectrum& spectrum, double tolerance) {
    const auto& lam = spectrum.eigenvalues;
    for (std::size_t j = 1; j <= lam.size() / 2; ++j) {
        if (std::abs(lam[j]) <= tolerance) return j;
    }
    return 0;
}

IdealMask mask_for_bin(std::size_t period, const Filter& base, std::size_t target_bin) {
    if (target_bin < 1 || target_bin > period / 2) {
        throw Error(ErrorCode::unattainable_zero, "target bin " + std::to_string(target_bin) +
                                                      " outside 1 .. " + std::to_string(period / 2));
    }
    std::vector<double> cos_table(period);
    for (std::size_t k = 0; k < period; ++k) {
        cos_table[k] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(period));
    }

    // The zero-enforced filter doubles the half-length, so it must fit in 4L + 1 <= p.
    const std::size_t max_half = (period - 1) / 4;
    std::size_t best_length = 0;
    std::size_t best_distance = period;
    std::size_t above_length = 0;  // longest mask whose first minimum is still right of the target
    for (std::size_t L = 1; L <= max_half; ++L) {
        const std::size_t bin = first_minimum_bin(scale_filter(base, L), period, cos_table);
        if (bin == 0) continue;
        const std::size_t distance = bin > target_bin ? bin - target_bin : target_bin - bin;
        if (distance < best_distance) {
            best_distance = distance;
            best_length = L;
        }
        if (bin > target_bin) above_length = L;
        // First minima move toward DC as L grows; past half the target there
        // is nothing closer left to find.
        if (2 * bin < target_bin) break;
    }

    // The nearest minimum comes first. If none is close enough, or its zero is
    // not cleanly the first one (flat spectra put neighbours below the zero
    // tolerance too), shorter masks move the target down the decreasing side
    // of the first lobe, where the forced zero stays first. They run out once
    // the lobe value at the target exceeds the central tap.
    std::vector<std::size_t> candidates;
    if (best_length != 0 && best_distance <= 1) candidates.push_back(best_length);
    for (std::size_t L = above_length; L >= 1 && candidates.size() < 16; --L) {
        if (L != best_length) candidates.push_back(L);
    }
    for (std::size_t L : candidates) {
        try {
            Filter filter = enforce_spectral_zero_at(scale_filter(base, L), period, target_bin);
            if (smallest_zero_bin(filter_spectrum(filter, period), kZeroBinTol) == target_bin) {
                return IdealMask{std::move(filter), L, target_bin};
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::negativity_violation && e.code() != ErrorCode::filter_too_long) throw;
            if (e.code() == ErrorCode::negativity_violation && L < best_length) break;
        }
    }
    throw Error(ErrorCode::unattainable_zero, "no mask length places a first spectral zero exactly on bin " +
                                                  std::to_string(target_bin));
}

IdealMask mask_ideal(double sample_rate, std::size_t period, const Filter& base, double target_frequency) {
    if (!(sample_rate > 0.0) || !(target_frequency > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "sample rate and target frequency must be positive");
    }
    const double bin = std::round(target_frequency * static_cast<double>(period) / sample_rate);
    if (bin < 1.0 || bin > static_cast<double>(period / 2)) {
        throw Error(ErrorCode::unattainable_zero, "target frequency is not representable on the DFT grid");
    }
    return mask_for_bin(period, base, static_cast<std::size_t>(bin));
}

}  // namespace iterfilt
