#include "iterfilt/dif.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "iterfilt/error.hpp"
#include "iterfilt/fft.hpp"

namespace iterfilt {

namespace {

using fft::Complex;

// Base shape that every mask length is scaled from.
constexpr std::size_t kBaseHalfLength = 64;

// Filter eigenvalues with roundoff-level values snapped to exactly zero.
struct SpectralOperator {
    std::vector<double> lambda;
    std::size_t zero_count = 0;
};

SpectralOperator make_operator(const Filter& w, std::size_t period, double zero_tolerance) {
    SpectralOperator op;
    op.lambda = filter_spectrum(w, period).eigenvalues;
    for (std::size_t j = 0; j < period; ++j) {
        double& l = op.lambda[j];
        if (l < -zero_tolerance || l > 2.0) {
            throw Error(ErrorCode::non_convergent, "eigenvalue " + std::to_string(l) + " at bin " +
                                                       std::to_string(j) + " violates |1 - lambda| <= 1");
        }
        if (std::abs(l) <= zero_tolerance) {
            l = 0.0;
            ++op.zero_count;
        }
    }
    return op;
}

double default_zero_tolerance(std::size_t period) {
    return 1e-13 * static_cast<double>(period);
}

// ||x||_2 of a signal from its unnormalized DFT coefficients.
double norm_from_spectrum(const std::vector<Complex>& X) {
    double sum = 0.0;
    for (const auto& c : X) sum += std::norm(c);
    return std::sqrt(sum / static_cast<double>(X.size()));
}

// ||s_m - s_{m-1}||_2 for the closed form s_m = (1 - lambda)^m s.
double increment_at(const SpectralOperator& op, const std::vector<Complex>& S, std::uint64_t m) {
    double sum = 0.0;
    const double e = static_cast<double>(m - 1);
    for (std::size_t j = 0; j < S.size(); ++j) {
        const double l = op.lambda[j];
        if (l == 0.0) continue;
        const double factor = l * std::pow(1.0 - l, e);
        sum += factor * factor * std::norm(S[j]);
    }
    return std::sqrt(sum / static_cast<double>(S.size()));
}

Signal apply_power(const Signal& s, const SpectralOperator& op, const std::vector<Complex>& S, std::uint64_t n) {
    std::vector<Complex> out(S.size());
    const double e = static_cast<double>(n);
    for (std::size_t j = 0; j < S.size(); ++j) out[j] = S[j] * std::pow(1.0 - op.lambda[j], e);
    return s.with_samples(fft::inverse_real(out));
}

struct LinearTrend {
    std::vector<double> trend;
    std::vector<double> detrended;
};

// Least-squares line; a sampled line is monotone so it has no extrema.
LinearTrend split_linear_trend(const std::vector<double>& r) {
    const std::size_t p = r.size();
    const double center = 0.5 * static_cast<double>(p - 1);
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(p);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        const double t = static_cast<double>(k) - center;
        num += t * r[k];
        den += t * t;
    }
    const double slope = den > 0.0 ? num / den : 0.0;
    LinearTrend out;
    out.trend.resize(p);
    out.detrended.resize(p);
    for (std::size_t k = 0; k < p; ++k) {
        out.trend[k] = mean + slope * (static_cast<double>(k) - center);
        out.detrended[k] = r[k] - out.trend[k];
    }
    return out;
}

ExtensionMode extension_mode(BoundaryMode mode) {
    switch (mode) {
        case BoundaryMode::periodic: return ExtensionMode::periodic;
        case BoundaryMode::reflect_odd: return ExtensionMode::reflect_odd;
        default: return ExtensionMode::reflect_even;
    }
}

}  // namespace

std::string_view to_string(InnerMode mode) {
    switch (mode) {
        case InnerMode::iterative: return "iterative";
        case InnerMode::direct_projection: return "projection";
        case InnerMode::direct_powered: return "powered";
    }
    return "unknown";
}

DecompositionConfig DecompositionConfig::standard() {
    DecompositionConfig cfg;
    cfg.mode = InnerMode::iterative;
    cfg.delta = 1e-3;
    cfg.max_iterations = 100000;
    return cfg;
}

DecompositionConfig DecompositionConfig::stress() {
    DecompositionConfig cfg;
    cfg.mode = InnerMode::direct_powered;
    cfg.delta = 1e-20;
    cfg.max_iterations = 10'000'000;
    return cfg;
}

double DecompositionConfig::zero_tolerance_for(std::size_t period) const {
    return zero_tolerance.value_or(default_zero_tolerance(period));
}

void DecompositionConfig::validate() const {
    if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "delta must be positive");
    if (max_iterations < 1) throw Error(ErrorCode::invalid_argument, "max_iterations must be at least 1");
    if (zero_tolerance && !(*zero_tolerance > 0.0 && *zero_tolerance <= 1e-6)) {
        throw Error(ErrorCode::invalid_argument, "zero_tolerance must lie in (0, 1e-6]");
    }
    if (max_imfs < 1 || max_imfs > kMaxImfs) {
        throw Error(ErrorCode::invalid_argument, "max_imfs must lie in 1 .. 64");
    }
    if (!(residual_tolerance >= 0.0)) throw Error(ErrorCode::invalid_argument, "residual_tolerance must be >= 0");
    mask.validate();
}

Signal moving_average_step(const Signal& s, const Filter& w) {
    const auto lambda = filter_spectrum(w, s.size()).eigenvalues;
    auto S = fft::forward(s.samples());
    for (std::size_t j = 0; j < S.size(); ++j) S[j] *= 1.0 - lambda[j];
    return s.with_samples(fft::inverse_real(S));
}

InnerLoopResult inner_loop_iterative(const Signal& s, const Filter& w, const DecompositionConfig& cfg,
                                     std::vector<double>* increments) {
    const std::size_t p = s.size();
    const auto op = make_operator(w, p, cfg.zero_tolerance_for(p));
    auto S = fft::forward(s.samples());
    std::vector<Complex> step(p);

    std::uint64_t m = 0;
    double inc = std::numeric_limits<double>::infinity();
    while (m < cfg.max_iterations) {
        for (std::size_t j = 0; j < p; ++j) {
            step[j] = op.lambda[j] * S[j];
            S[j] -= step[j];
        }
        ++m;
        inc = norm_from_spectrum(step);
        if (increments) increments->push_back(inc);
        if (inc < cfg.delta) break;
    }
    return InnerLoopResult{s.with_samples(fft::inverse_real(S)), m, inc};
}

Signal inner_loop_direct_projection(const Signal& s, const Filter& w, double zero_tolerance) {
    const std::size_t p = s.size();
    const auto op = make_operator(w, p, zero_tolerance);
    auto S = fft::forward(s.samples());
    for (std::size_t j = 0; j < p; ++j) {
        if (op.lambda[j] != 0.0) S[j] = 0.0;
    }
    return s.with_samples(fft::inverse_real(S));
}

Signal inner_loop_direct_powered(const Signal& s, const Filter& w, std::uint64_t iterations) {
    const std::size_t p = s.size();
    const auto op = make_operator(w, p, default_zero_tolerance(p));
    return apply_power(s, op, fft::forward(s.samples()), iterations);
}

InnerLoopResult inner_loop_powered_stopping(const Signal& s, const Filter& w, const DecompositionConfig& cfg) {
    const std::size_t p = s.size();
    const auto op = make_operator(w, p, cfg.zero_tolerance_for(p));
    const auto S = fft::forward(s.samples());

    // Increments are nonincreasing in m, so the first one below delta is
    // found by bisection.
    std::uint64_t n = cfg.max_iterations;
    if (increment_at(op, S, n) < cfg.delta) {
        std::uint64_t lo = 1;
        std::uint64_t hi = n;
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (increment_at(op, S, mid) < cfg.delta) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        n = lo;
    }
    return InnerLoopResult{apply_power(s, op, S, n), n, increment_at(op, S, n)};
}

std::uint64_t compute_n0_bound(double s_spectrum_inf_norm, std::size_t p, std::size_t k_zero_count, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "delta must be positive");
    if (!(s_spectrum_inf_norm >= 0.0)) throw Error(ErrorCode::invalid_argument, "spectrum norm must be nonnegative");
    // Nothing left to iterate on: every non-DC mode is annihilated.
    if (p < k_zero_count + 2 || s_spectrum_inf_norm == 0.0) return 1;

    const double rhs = delta / (s_spectrum_inf_norm * std::sqrt(static_cast<double>(p - 1 - k_zero_count)));
    // N^N / (N+1)^(N+1), strictly decreasing in N.
    const auto term = [](std::uint64_t n) {
        const double x = static_cast<double>(n);
        return std::exp(x * std::log1p(-1.0 / (x + 1.0))) / (x + 1.0);
    };
    if (term(1) < rhs) return 1;
    std::uint64_t hi = 2;
    constexpr std::uint64_t cap = std::uint64_t{1} << 62;
    while (!(term(hi) < rhs)) {
        if (hi >= cap) return cap;
        hi *= 2;
    }
    std::uint64_t lo = hi / 2 + 1;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (term(mid) < rhs) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

DecompositionResult decompose(const Signal& s, const DecompositionConfig& cfg) {
    cfg.validate();
    const std::size_t p = s.size();
    if (p < 4) throw Error(ErrorCode::invalid_size, "decomposition needs at least 4 samples");

    const Filter base = build_base_filter(cfg.filter_shape, kBaseHalfLength);
    const double input_norm = l2_norm(s.samples());
    std::vector<double> residual = s.values();

    DecompositionResult result{{}, s, {}, {}};
    bool absorb_into_last = false;

    while (true) {
        if (count_extrema(residual) < 2) {
            result.stop_reason = "trend";
            break;
        }
        if (result.imfs.size() >= cfg.max_imfs) {
            result.stop_reason = "imf-cap";
            absorb_into_last = true;
            break;
        }
        const double residual_norm = l2_norm(residual);
        if (residual_norm <= cfg.residual_tolerance * input_norm) {
            result.stop_reason = "negligible-residual";
            absorb_into_last = true;
            break;
        }

        const Signal current = s.with_samples(residual);
        const bool ideal_now = cfg.mask.kind == MaskKind::ideal && result.imfs.empty();

        // Mask length from the current residual; fixed for the whole inner loop.
        MaskLength mask;
        std::optional<IdealMask> ideal;
        try {
            if (ideal_now) {
                ideal = mask_ideal(s.sample_rate(), p, base, cfg.mask.target_frequency);
                mask.half_length = ideal->half_length;
                mask.fractional = static_cast<double>(ideal->half_length);
            } else if (cfg.mask.kind == MaskKind::derivative) {
                mask = mask_length_from_derivative(current, cfg.mask.derivative_order, cfg.mask.nu);
            } else {
                mask = mask_length_from_extrema(current.samples(), cfg.mask.nu);
            }
        } catch (const Error& e) {
            if (ideal_now) throw;
            result.stop_reason = std::string("mask-selection: ") + e.what();
            break;
        }
        if (mask.half_length < 1 || 2 * mask.half_length + 1 > p) {
            throw Error(ErrorCode::mask_selection_failed, "mask half-length " + std::to_string(mask.half_length) +
                                                              " does not fit a signal of " + std::to_string(p) +
                                                              " samples");
        }

        std::size_t pad = 0;
        if (cfg.boundary.mode != BoundaryMode::none) {
            pad = std::min(cfg.boundary.pad.value_or(2 * mask.half_length), p);
        }
        const Signal extended = pad > 0 ? extend_signal(current, pad, extension_mode(cfg.boundary.mode)) : current;
        const std::size_t period = extended.size();

        std::optional<Filter> filter;
        try {
            if (ideal_now) {
                filter = period == p ? ideal->filter
                                     : mask_ideal(s.sample_rate(), period, base, cfg.mask.target_frequency).filter;
            } else if (cfg.realization == MaskRealization::scaled) {
                filter = scale_filter(base, mask.half_length);
            } else {
                const double bin = std::round(cfg.mask.nu * static_cast<double>(period) / (2.0 * mask.fractional));
                filter = mask_for_bin(period, base, static_cast<std::size_t>(std::max(bin, 0.0))).filter;
            }
        } catch (const Error& e) {
            if (ideal_now) throw;
            result.stop_reason = std::string("mask-realization: ") + e.what();
            break;
        }
        if (filter->size() > period) {
            throw Error(ErrorCode::mask_selection_failed, "filter longer than the signal period");
        }

        InnerLoopResult inner{extended, 0, 0.0};
        switch (cfg.mode) {
            case InnerMode::iterative:
                inner = inner_loop_iterative(extended, *filter, cfg);
                break;
            case InnerMode::direct_projection:
                inner.imf = inner_loop_direct_projection(extended, *filter, cfg.zero_tolerance_for(period));
                break;
            case InnerMode::direct_powered:
                inner = inner_loop_powered_stopping(extended, *filter, cfg);
                break;
        }

        std::vector<double> imf = pad > 0 ? trim_signal(inner.imf, pad).values() : inner.imf.values();
        if (l2_norm(imf) <= cfg.residual_tolerance * residual_norm) {
            result.stop_reason = "no-progress";
            break;
        }
        for (std::size_t k = 0; k < p; ++k) residual[k] -= imf[k];

        ImfDiagnostics diag;
        diag.mask_length = mask.half_length;
        diag.filter_half_length = filter->half_length();
        diag.iterations = inner.iterations;
        diag.mode = cfg.mode;
        diag.increment_norm = inner.increment_norm;
        result.imfs.push_back(s.with_samples(std::move(imf)));
        result.diagnostics.push_back(diag);
    }

    // The loop may end with oscillations left over (cap, no progress, or a
    // negligible roundoff residue). Keep the linear trend as the remainder
    // and move the rest into the IMFs so the remainder is extrema-free.
    if (count_extrema(residual) >= 2) {
        auto split = split_linear_trend(residual);
        if (absorb_into_last && !result.imfs.empty()) {
            auto merged = result.imfs.back().values();
            for (std::size_t k = 0; k < p; ++k) merged[k] += split.detrended[k];
            result.imfs.back() = s.with_samples(std::move(merged));
        } else {
            ImfDiagnostics diag;
            diag.mode = cfg.mode;
            diag.residual_split = true;
            result.imfs.push_back(s.with_samples(std::move(split.detrended)));
            result.diagnostics.push_back(diag);
        }
        residual = std::move(split.trend);
    }
    result.remainder = s.with_samples(std::move(residual));
    return result;
}

}  // namespace iterfilt
