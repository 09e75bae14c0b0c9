#include "iterfilt/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "iterfilt/error.hpp"

namespace iterfilt {

namespace {

void check_signal(const std::vector<double>& samples, double sample_rate, double duration) {
    if (samples.size() < 2) {
        throw Error(ErrorCode::invalid_size, "a signal needs at least 2 samples");
    }
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw Error(ErrorCode::invalid_argument, "sample rate must be positive");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw Error(ErrorCode::invalid_argument, "duration must be positive");
    }
    if (std::abs(static_cast<double>(samples.size()) - duration * sample_rate) >= 0.5) {
        throw Error(ErrorCode::invalid_size, "sample count " + std::to_string(samples.size()) +
                                                 " inconsistent with duration * sample rate");
    }
    for (double v : samples) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::invalid_argument, "signal samples must be finite");
        }
    }
}

// Mirror index into [0, p) with period 2(p - 1), endpoints not repeated.
std::size_t reflect_index(long long k, long long p) {
    if (p == 1) return 0;
    const long long period = 2 * (p - 1);
    long long m = k % period;
    if (m < 0) m += period;
    return static_cast<std::size_t>(m < p ? m : period - m);
}

std::size_t wrap_index(long long k, long long p) {
    long long m = k % p;
    if (m < 0) m += p;
    return static_cast<std::size_t>(m);
}

// Lagrange extrapolation of the polynomial through (0, y0), (1, y1), ... to
// abscissa x.
double extrapolate(std::span<const double> y, double x) {
    const std::size_t n = y.size();
    double result = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double basis = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            basis *= (x - static_cast<double>(j)) / (static_cast<double>(i) - static_cast<double>(j));
        }
        result += basis * y[i];
    }
    return result;
}

}  // namespace

Signal::Signal(std::vector<double> samples, double sample_rate)
    : Signal(std::move(samples), sample_rate, 0.0) {}

Signal::Signal(std::vector<double> samples, double sample_rate, double duration)
    : samples_(std::move(samples)), sample_rate_(sample_rate), duration_(duration) {
    if (duration_ == 0.0 && sample_rate_ > 0.0) {
        duration_ = static_cast<double>(samples_.size()) / sample_rate_;
    }
    check_signal(samples_, sample_rate_, duration_);
}

Signal Signal::with_samples(std::vector<double> samples) const {
    if (samples.size() != samples_.size()) {
        throw Error(ErrorCode::invalid_size, "replacement samples must keep the signal length");
    }
    return Signal(std::move(samples), sample_rate_, duration_);
}

Signal generate_two_tone(const TwoToneParams& params, double duration_seconds, double sample_rate) {
    if (!(params.f > 0.0 && params.f < 1.0)) {
        throw Error(ErrorCode::invalid_frequency, "LF frequency must lie in (0, 1)");
    }
    if (!(params.a >= 0.0)) {
        throw Error(ErrorCode::invalid_argument, "LF amplitude must be nonnegative");
    }
    const double count = std::round(duration_seconds * sample_rate);
    if (!(count >= 4.0)) {
        throw Error(ErrorCode::invalid_size, "two-tone signal needs at least 4 samples");
    }
    const auto p = static_cast<std::size_t>(count);
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> samples(p);
    for (std::size_t k = 0; k < p; ++k) {
        const double x = static_cast<double>(k) / sample_rate;
        samples[k] = std::cos(two_pi * x) + params.a * std::cos(two_pi * params.f * x + params.phi);
    }
    return Signal(std::move(samples), sample_rate, duration_seconds);
}

std::vector<std::size_t> find_extrema(std::span<const double> x) {
    std::vector<std::size_t> out;
    const std::size_t p = x.size();
    if (p < 3) return out;

    // Walk runs of equal samples; a run is an extremum when it is strictly
    // interior and its neighbours lie on the same side of it.
    std::size_t start = 0;
    std::size_t prev_start = 0;
    bool have_prev = false;
    while (start < p) {
        std::size_t end = start;
        while (end + 1 < p && x[end + 1] == x[start]) ++end;
        if (have_prev && end + 1 < p) {
            const double left = x[prev_start];
            const double right = x[end + 1];
            const double v = x[start];
            if ((v > left && v > right) || (v < left && v < right)) {
                out.push_back((start + end) / 2);
            }
        }
        have_prev = true;
        prev_start = start;
        start = end + 1;
    }
    return out;
}

std::size_t count_extrema(std::span<const double> samples) {
    return find_extrema(samples).size();
}

Signal finite_difference(const Signal& sig, int order) {
    if (order < 1) {
        throw Error(ErrorCode::invalid_argument, "derivative order must be at least 1");
    }
    const std::size_t p = sig.size();
    const auto d = static_cast<std::size_t>(order);
    if (p <= 2 * d) {
        throw Error(ErrorCode::order_too_large, "signal too short for derivative of order " + std::to_string(order));
    }

    // Ghost samples from a polynomial through the nearest boundary samples
    // make the d-fold central stencil one-sided at the ends.
    const std::size_t degree = std::min<std::size_t>(std::max<std::size_t>(2, d), p - 1);
    std::vector<double> ext(p + 2 * d);
    const auto in = sig.samples();
    for (std::size_t k = 0; k < p; ++k) ext[d + k] = in[k];

    const std::span<const double> head = in.first(degree + 1);
    std::vector<double> tail(in.end() - static_cast<std::ptrdiff_t>(degree + 1), in.end());
    std::reverse(tail.begin(), tail.end());
    for (std::size_t g = 1; g <= d; ++g) {
        ext[d - g] = extrapolate(head, -static_cast<double>(g));
        ext[d + p - 1 + g] = extrapolate(tail, -static_cast<double>(g));
    }

    const double half_rate = 0.5 * sig.sample_rate();
    std::vector<double> next(ext.size());
    std::size_t lo = 0;
    std::size_t hi = ext.size();  // valid range [lo, hi)
    for (std::size_t pass = 0; pass < d; ++pass) {
        for (std::size_t k = lo + 1; k + 1 < hi; ++k) {
            next[k] = (ext[k + 1] - ext[k - 1]) * half_rate;
        }
        ++lo;
        --hi;
        std::swap(ext, next);
    }
    return sig.with_samples(std::vector<double>(ext.begin() + static_cast<std::ptrdiff_t>(d),
                                                ext.begin() + static_cast<std::ptrdiff_t>(d + p)));
}

Signal extend_signal(const Signal& sig, std::size_t pad_length, ExtensionMode mode) {
    const std::size_t p = sig.size();
    if (pad_length > p) {
        throw Error(ErrorCode::pad_too_large, "pad length exceeds signal length");
    }
    const auto in = sig.samples();
    const auto pl = static_cast<long long>(p);
    std::vector<double> out(p + 2 * pad_length);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const long long k = static_cast<long long>(i) - static_cast<long long>(pad_length);
        if (k >= 0 && k < pl) {
            out[i] = in[static_cast<std::size_t>(k)];
            continue;
        }
        switch (mode) {
            case ExtensionMode::periodic:
                out[i] = in[wrap_index(k, pl)];
                break;
            case ExtensionMode::reflect_even:
                out[i] = in[reflect_index(k, pl)];
                break;
            case ExtensionMode::reflect_odd: {
                const double pivot = k < 0 ? in.front() : in.back();
                out[i] = 2.0 * pivot - in[reflect_index(k, pl)];
                break;
            }
        }
    }
    return Signal(std::move(out), sig.sample_rate());
}

Signal trim_signal(const Signal& sig, std::size_t pad_length) {
    if (2 * pad_length + 2 > sig.size()) {
        throw Error(ErrorCode::pad_too_large, "trim would leave fewer than 2 samples");
    }
    const auto in = sig.samples();
    std::vector<double> out(in.begin() + static_cast<std::ptrdiff_t>(pad_length),
                            in.end() - static_cast<std::ptrdiff_t>(pad_length));
    return Signal(std::move(out), sig.sample_rate());
}

double l2_norm(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return std::sqrt(sum);
}

}  // namespace iterfilt
