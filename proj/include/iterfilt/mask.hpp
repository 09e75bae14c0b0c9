#pragma once

#include <cstddef>

#include "iterfilt/filters.hpp"
#include "iterfilt/signal.hpp"

namespace iterfilt {

enum class MaskKind { extrema, ideal, derivative };

struct MaskStrategy {
    MaskKind kind = MaskKind::extrema;
    double nu = 1.6;
    double target_frequency = 1.0;  // Hz, ideal only
    int derivative_order = 1;       // derivative only; 0 falls back to extrema

    void validate() const;
};

// Mask length before and after rounding. `fractional` is nu * p / n_extrema
// clamped to the admissible range; `half_length` is its rounded value.
struct MaskLength {
    std::size_t half_length = 0;
    double fractional = 0.0;
    std::size_t extrema = 0;
};

MaskLength mask_length_from_extrema(std::span<const double> samples, double nu);
std::size_t mask_from_extrema(const Signal& s, double nu);

MaskLength mask_length_from_derivative(const Signal& s, int order, double nu);
std::size_t mask_from_derivative(const Signal& s, int order, double nu);

struct IdealMask {
    Filter filter;
    std::size_t half_length = 0;  // half-length of the scaled base before zero enforcement
    std::size_t zero_bin = 0;
};

// Scales `base` so that its first spectral minimum over period p lands on
// `target_bin`, then makes the spectrum vanish there exactly.
IdealMask mask_for_bin(std::size_t period, const Filter& base, std::size_t target_bin);

IdealMask mask_ideal(double sample_rate, std::size_t period, const Filter& base, double target_frequency);

// Smallest bin j >= 1 with |lambda_j| <= tolerance, or 0 if none exists.
std::size_t smallest_zero_bin(const FilterSpectrum& spectrum, double tolerance);

}  // namespace iterfilt
