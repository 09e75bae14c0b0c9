#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iterfilt/filters.hpp"
#include "iterfilt/mask.hpp"
#include "iterfilt/signal.hpp"

namespace iterfilt {

enum class InnerMode { iterative, direct_projection, direct_powered };

// How a selected mask length becomes a filter.
//   scaled:        the base shape linearly scaled to half-length L.
//   zero_aligned:  the base shape scaled and zero-enforced so its first
//                  spectral zero sits on the bin the (fractional) mask length
//                  resolves, nu * P / (2 L).
enum class MaskRealization { zero_aligned, scaled };

enum class BoundaryMode { none, periodic, reflect_even, reflect_odd };

struct BoundaryConfig {
    BoundaryMode mode = BoundaryMode::none;
    std::optional<std::size_t> pad;  // unset: twice the selected mask length
};

struct DecompositionConfig {
    double delta = 1e-3;
    std::uint64_t max_iterations = 100000;
    InnerMode mode = InnerMode::direct_projection;
    std::optional<double> zero_tolerance;  // unset: 1e-13 * p
    MaskStrategy mask;
    FilterShape filter_shape = FilterShape::triangular;
    MaskRealization realization = MaskRealization::zero_aligned;
    BoundaryConfig boundary;
    std::size_t max_imfs = 64;
    double residual_tolerance = 1e-12;

    static DecompositionConfig standard();
    static DecompositionConfig stress();

    double zero_tolerance_for(std::size_t period) const;
    void validate() const;
};

inline constexpr std::size_t kMaxImfs = 64;

struct ImfDiagnostics {
    std::size_t mask_length = 0;         // L chosen by the strategy (0 for a residual split)
    std::size_t filter_half_length = 0;  // half-length of the filter actually applied
    std::uint64_t iterations = 0;
    InnerMode mode = InnerMode::direct_projection;
    double increment_norm = 0.0;         // ||s_{N+1} - s_N||_2 at termination
    bool residual_split = false;
};

struct DecompositionResult {
    std::vector<Signal> imfs;
    Signal remainder;
    std::vector<ImfDiagnostics> diagnostics;
    std::string stop_reason;
};

struct InnerLoopResult {
    Signal imf;
    std::uint64_t iterations = 0;
    double increment_norm = 0.0;
};

// s - W s with W the circulant convolution by w.
Signal moving_average_step(const Signal& s, const Filter& w);

// Applies the fluctuation operator until ||s_{m+1} - s_m||_2 < delta or
// max_iterations steps. When `increments` is given, every increment norm is
// appended to it.
InnerLoopResult inner_loop_iterative(const Signal& s, const Filter& w, const DecompositionConfig& cfg,
                                     std::vector<double>* increments = nullptr);

// Limit of the iteration: keeps only the Fourier modes where the filter
// spectrum vanishes.
Signal inner_loop_direct_projection(const Signal& s, const Filter& w, double zero_tolerance);

// Closed form of `iterations` fluctuation steps, (1 - lambda_j)^N in the DFT domain.
Signal inner_loop_direct_powered(const Signal& s, const Filter& w, std::uint64_t iterations);

// Closed form with the stopping rule of the iterative loop: N is the first
// step whose increment drops below delta, capped at max_iterations.
InnerLoopResult inner_loop_powered_stopping(const Signal& s, const Filter& w, const DecompositionConfig& cfg);

// Least N0 >= 1 with N0^N0 / (N0+1)^(N0+1) < delta / (s_inf * sqrt(p - 1 - k)).
std::uint64_t compute_n0_bound(double s_spectrum_inf_norm, std::size_t p, std::size_t k_zero_count, double delta);

DecompositionResult decompose(const Signal& s, const DecompositionConfig& cfg);

std::string_view to_string(InnerMode mode);

}  // namespace iterfilt
