#include "iterfilt/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "iterfilt/error.hpp"

namespace iterfilt {

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string_view to_string(MaskKind kind) {
    switch (kind) {
        case MaskKind::extrema: return "extrema";
        case MaskKind::ideal: return "ideal";
        case MaskKind::derivative: return "derivative";
    }
    return "unknown";
}

}  // namespace

double c1_metric(const Signal& imf1, const TwoToneParams& params, double duration, double sample_rate) {
    if (!(params.a > 0.0)) throw Error(ErrorCode::zero_denominator, "c1 is undefined for a = 0");
    const auto p = static_cast<std::size_t>(std::llround(duration * sample_rate));
    if (p != imf1.size()) {
        throw Error(ErrorCode::invalid_size, "IMF length does not match the reference two-tone length");
    }
    const double two_pi = 2.0 * std::numbers::pi;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        const double x = static_cast<double>(k) / sample_rate;
        const double hf = std::cos(two_pi * x);
        const double lf = params.a * std::cos(two_pi * params.f * x + params.phi);
        num += (imf1[k] - hf) * (imf1[k] - hf);
        den += lf * lf;
    }
    if (den == 0.0) throw Error(ErrorCode::zero_denominator, "LF component vanishes on the sample grid");
    return std::sqrt(num / den);
}

double effective_frequency(double f, FrequencyMode mode, double duration) {
    if (mode == FrequencyMode::rational) {
        const double steps = std::round(f * duration);
        const double max_steps = std::round(duration) - 1.0;
        return std::clamp(steps, 1.0, max_steps) / duration;
    }
    const double shifted = f * (1.0 + (std::numbers::sqrt2 - 1.0) / 100.0);
    return std::min(shifted, std::nextafter(1.0, 0.0));
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return out;
}

std::vector<double> lin_space(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

std::vector<double> uniform_phases(std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
    }
    return out;
}

SweepSettings SweepSettings::defaults() {
    return grid(48, 48);
}

SweepSettings SweepSettings::grid(std::size_t n_a, std::size_t n_f) {
    SweepSettings s;
    s.a_values = log_space(1e-2, 1e2, n_a);
    s.f_values = lin_space(0.05, 0.95, n_f);
    s.phi_values = uniform_phases(16);
    return s;
}

std::size_t C1Grid::failed_cells() const {
    return static_cast<std::size_t>(std::count(c1.begin(), c1.end(), kFailedCell));
}

double evaluate_cell(const TwoToneParams& params, const SweepSettings& settings, CellDiagnostics* diag) {
    const Signal s = generate_two_tone(params, settings.duration, settings.sample_rate);
    const auto result = decompose(s, settings.config);
    if (diag) {
        if (!result.diagnostics.empty()) {
            diag->mask_length = result.diagnostics.front().mask_length;
            diag->mean_iterations = static_cast<double>(result.diagnostics.front().iterations);
        }
    }
    const Signal imf1 = result.imfs.empty() ? s.with_samples(std::vector<double>(s.size(), 0.0)) : result.imfs.front();
    return c1_metric(imf1, params, settings.duration, settings.sample_rate);
}

C1Grid sweep_grid(const SweepSettings& settings) {
    if (settings.a_values.empty() || settings.f_values.empty() || settings.phi_values.empty()) {
        throw Error(ErrorCode::invalid_argument, "sweep axes must be nonempty");
    }
    settings.config.validate();

    C1Grid grid;
    grid.a_values = settings.a_values;
    grid.phi_values = settings.average_phi ? settings.phi_values : std::vector<double>{settings.phi_values.front()};
    for (double f : settings.f_values) {
        grid.f_values.push_back(effective_frequency(f, settings.frequency_mode, settings.duration));
    }
    const std::size_t n_a = grid.a_values.size();
    const std::size_t n_f = grid.f_values.size();
    grid.c1.assign(n_a * n_f, 0.0);
    grid.cells.assign(n_a * n_f, {});

    // Each cell depends only on its own inputs and writes only its own slot.
    const auto run_cell = [&](std::size_t index) {
        const std::size_t ia = index / n_f;
        const std::size_t jf = index % n_f;
        CellDiagnostics& diag = grid.cells[index];
        double sum = 0.0;
        double iterations = 0.0;
        try {
            for (std::size_t k = 0; k < grid.phi_values.size(); ++k) {
                CellDiagnostics phase_diag;
                sum += evaluate_cell({grid.a_values[ia], grid.f_values[jf], grid.phi_values[k]}, settings, &phase_diag);
                iterations += phase_diag.mean_iterations;
                if (k == 0) diag.mask_length = phase_diag.mask_length;
            }
            grid.c1[index] = sum / static_cast<double>(grid.phi_values.size());
            diag.mean_iterations = iterations / static_cast<double>(grid.phi_values.size());
        } catch (const std::exception& e) {
            grid.c1[index] = kFailedCell;
            diag.error = e.what();
        }
    };

    unsigned threads = settings.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : settings.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_a * n_f));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n_a * n_f; ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n_a * n_f; i = next++) run_cell(i);
            });
        }
    }

    const auto& cfg = settings.config;
    grid.metadata["strategy"] = std::string(to_string(cfg.mask.kind));
    if (cfg.mask.kind == MaskKind::ideal) grid.metadata["target_frequency"] = format_double(cfg.mask.target_frequency);
    if (cfg.mask.kind == MaskKind::derivative) grid.metadata["derivative_order"] = std::to_string(cfg.mask.derivative_order);
    grid.metadata["nu"] = format_double(cfg.mask.nu);
    grid.metadata["filter"] = cfg.filter_shape == FilterShape::triangular ? "triangular" : "bspline3";
    grid.metadata["realization"] = cfg.realization == MaskRealization::zero_aligned ? "aligned" : "scaled";
    grid.metadata["mode"] = std::string(to_string(cfg.mode));
    grid.metadata["delta"] = format_double(cfg.delta);
    grid.metadata["max_iterations"] = std::to_string(cfg.max_iterations);
    grid.metadata["n"] = format_double(settings.duration);
    grid.metadata["fs"] = format_double(settings.sample_rate);
    grid.metadata["frequencies"] = settings.frequency_mode == FrequencyMode::rational ? "rational" : "irrational";
    grid.metadata["phi"] = settings.average_phi ? "avg:" + std::to_string(settings.phi_values.size())
                                                : format_double(settings.phi_values.front());
    return grid;
}

std::vector<CriticalCurve> critical_curves(const std::vector<double>& a_values, const std::vector<double>& f_values,
                                           const std::vector<int>& exponents) {
    if (exponents.empty()) throw Error(ErrorCode::invalid_argument, "at least one exponent is required");
    double a_lo = 0.0;
    double a_hi = std::numeric_limits<double>::infinity();
    if (!a_values.empty()) {
        const auto [lo, hi] = std::minmax_element(a_values.begin(), a_values.end());
        a_lo = *lo;
        a_hi = *hi;
    }
    std::vector<CriticalCurve> curves;
    for (int e : exponents) {
        if (e < 1) throw Error(ErrorCode::invalid_argument, "critical-curve exponents must be positive");
        CriticalCurve curve;
        curve.exponent = e;
        for (double f : f_values) {
            const double a = std::pow(f, -e);
            if (a >= a_lo && a <= a_hi) curve.points.emplace_back(f, a);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace iterfilt
