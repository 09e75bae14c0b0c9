#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "iterfilt/dif.hpp"
#include "iterfilt/signal.hpp"

namespace iterfilt {

enum class FrequencyMode { rational, irrational };

// c1 = ||imf1 - cos(2 pi x)|| / ||a cos(2 pi f x + phi)||, discrete L2 norms.
double c1_metric(const Signal& imf1, const TwoToneParams& params, double duration, double sample_rate);

// The LF frequency actually used for a grid abscissa: snapped to multiples of
// 1/n in rational mode, nudged off-grid in irrational mode.
double effective_frequency(double f, FrequencyMode mode, double duration);

std::vector<double> log_space(double lo, double hi, std::size_t count);
std::vector<double> lin_space(double lo, double hi, std::size_t count);
std::vector<double> uniform_phases(std::size_t count);

struct SweepSettings {
    std::vector<double> a_values;
    std::vector<double> f_values;
    std::vector<double> phi_values;
    bool average_phi = true;  // otherwise phi_values.front() alone is used
    double duration = 100.0;
    double sample_rate = 20.0;
    FrequencyMode frequency_mode = FrequencyMode::rational;
    DecompositionConfig config;
    unsigned threads = 0;  // 0: hardware concurrency

    // 48 x 48 log/linear axes with 16 phases over [0, 2 pi).
    static SweepSettings defaults();
    // Reduced axes over the same ranges.
    static SweepSettings grid(std::size_t n_a, std::size_t n_f);
};

struct CellDiagnostics {
    std::size_t mask_length = 0;  // first phase's IMF 1 mask
    double mean_iterations = 0.0;
    std::string error;
};

inline constexpr double kFailedCell = -1.0;

struct C1Grid {
    std::vector<double> a_values;
    std::vector<double> f_values;  // effective frequencies
    std::vector<double> phi_values;
    std::vector<double> c1;        // a-major, kFailedCell for failed cells
    std::vector<CellDiagnostics> cells;
    std::map<std::string, std::string> metadata;

    double at(std::size_t ia, std::size_t jf) const { return c1[ia * f_values.size() + jf]; }
    std::size_t failed_cells() const;
};

// c1 of the first IMF for one (a, f, phi), f taken as-is.
double evaluate_cell(const TwoToneParams& params, const SweepSettings& settings, CellDiagnostics* diag = nullptr);

C1Grid sweep_grid(const SweepSettings& settings);

struct CriticalCurve {
    int exponent = 1;
    std::vector<std::pair<double, double>> points;  // (f, a) with a = f^-exponent
};

// Loci a f^e = 1 on f_values, keeping points inside the a range.
std::vector<CriticalCurve> critical_curves(const std::vector<double>& a_values, const std::vector<double>& f_values,
                                           const std::vector<int>& exponents);

}  // namespace iterfilt
