#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace iterfilt {

// Uniformly sampled real sequence. The sample count p, sample rate Fs and
// duration n satisfy |p - n * Fs| < 0.5.
class Signal {
public:
    // Duration is derived as p / Fs.
    Signal(std::vector<double> samples, double sample_rate);
    Signal(std::vector<double> samples, double sample_rate, double duration);

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& values() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t k) const { return samples_[k]; }
    double sample_rate() const noexcept { return sample_rate_; }
    double duration() const noexcept { return duration_; }

    // Same metadata, new samples (length must match).
    Signal with_samples(std::vector<double> samples) const;

private:
    std::vector<double> samples_;
    double sample_rate_;
    double duration_;
};

struct TwoToneParams {
    double a = 0.0;    // LF amplitude
    double f = 0.5;    // LF frequency in Hz, 0 < f < 1
    double phi = 0.0;  // LF phase in radians
};

enum class ExtensionMode { periodic, reflect_even, reflect_odd };

// cos(2 pi x_k) + a cos(2 pi f x_k + phi) with x_k = k / sample_rate.
Signal generate_two_tone(const TwoToneParams& params, double duration_seconds, double sample_rate);

// Indices of interior local extrema (1..p-2). A run of equal samples flanked
// by a rise and a fall counts once, at its midpoint.
std::vector<std::size_t> find_extrema(std::span<const double> samples);
std::size_t count_extrema(std::span<const double> samples);
inline std::size_t count_extrema(const Signal& sig) { return count_extrema(sig.samples()); }

// d-th derivative estimate, scaled by Fs^d, same length as the input.
Signal finite_difference(const Signal& sig, int order);

Signal extend_signal(const Signal& sig, std::size_t pad_length, ExtensionMode mode);

// Inverse of extend_signal: drops pad_length samples at each end.
Signal trim_signal(const Signal& sig, std::size_t pad_length);

double l2_norm(std::span<const double> x);

}  // namespace iterfilt
