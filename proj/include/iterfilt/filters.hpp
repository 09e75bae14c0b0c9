#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace iterfilt {

enum class FilterShape { triangular, bspline3 };

// Symmetric, nonnegative, unit-mass tap vector of odd length 2L + 1.
class Filter {
public:
    Filter(std::vector<double> taps, bool doubly_convolved);

    std::span<const double> taps() const noexcept { return taps_; }
    std::size_t half_length() const noexcept { return taps_.size() / 2; }
    std::size_t size() const noexcept { return taps_.size(); }
    double center() const noexcept { return taps_[half_length()]; }
    bool doubly_convolved() const noexcept { return doubly_convolved_; }

private:
    std::vector<double> taps_;
    bool doubly_convolved_;
};

// Eigenvalues of the circulant convolution operator of period p.
struct FilterSpectrum {
    std::vector<double> eigenvalues;
    std::size_t period = 0;
};

Filter build_base_filter(FilterShape shape, std::size_t half_length);

// Self-convolution h * h renormalized to unit mass.
Filter double_convolve(const Filter& h);

// Linear scaling w_L(x) = w(x / L) / L realised on the integer grid.
Filter scale_filter(const Filter& base, std::size_t target_half_length);

FilterSpectrum filter_spectrum(const Filter& w, std::size_t period);

// First local minimum of the spectrum on bins 1 .. ceil(p/2) - 1, if any.
std::size_t first_spectral_minimum(const FilterSpectrum& spectrum);

// Self-correlation of (h - eps * delta), renormalized by (1 - eps)^2, so the
// length-p spectrum becomes ((lambda - eps) / (1 - eps))^2. The unqualified
// form takes eps at the first spectral minimum of h.
std::pair<Filter, std::size_t> enforce_spectral_zero(const Filter& h, std::size_t period);
Filter enforce_spectral_zero_at(const Filter& h, std::size_t period, std::size_t bin);

// Circulant row of length p with the taps centered at index 0.
std::vector<double> circulant_row(const Filter& w, std::size_t period);

}  // namespace iterfilt
