// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//   iterfilt_acceptance [--quick]     --quick skips the 48 x 48 sweeps

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "iterfilt/benchmark.hpp"
#include "iterfilt/dif.hpp"
#include "iterfilt/fft.hpp"
#include "oracles.hpp"

using namespace iterfilt;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < budget_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %d %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), dt,
                budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool quick = false;

SweepSettings rational_8x8(MaskKind kind, int order = 1) {
    auto st = SweepSettings::grid(8, 8);
    st.config.mask.kind = kind;
    st.config.mask.derivative_order = order;
    return st;
}

Outcome eigenvalue_identity() {
    std::mt19937_64 rng(20240101);
    double worst = 0.0;
    int filters = 0;
    for (std::size_t p : {64u, 128u}) {
        for (int t = 0; t < 20; ++t, ++filters) {
            const auto w = oracle::random_doubly_convolved(rng, 1 + rng() % 8);  // L <= 16
            const auto lam = filter_spectrum(w, p).eigenvalues;
            const auto W = oracle::dense_circulant(w.taps(), p);
            double radius = 0.0;
            for (double l : lam) radius = std::max(radius, std::abs(l));
            for (std::size_t j = 0; j < p; ++j) {
                // W e_j = lambda_j e_j on the complex Fourier vector; read lambda off every entry.
                std::vector<double> re(p), im(p);
                for (std::size_t k = 0; k < p; ++k) {
                    const double th = kTwoPi * static_cast<double>((j * k) % p) / static_cast<double>(p);
                    re[k] = std::cos(th);
                    im[k] = std::sin(th);
                }
                const auto Wre = oracle::matvec(W, re);
                const auto Wim = oracle::matvec(W, im);
                for (std::size_t k = 0; k < p; ++k) {
                    const std::complex<double> v(re[k], im[k]);
                    const std::complex<double> Wv(Wre[k], Wim[k]);
                    worst = std::max(worst, std::abs(Wv / v - lam[j]) / radius);
                }
            }
        }
    }
    return {worst < 1e-10, fmt("%d filters, max relative error %.2e (< 1e-10)", filters, worst)};
}

Outcome iterative_spectral_equivalence() {
    std::mt19937_64 rng(77);
    const std::size_t p = 64;
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto w = t % 2 ? build_base_filter(FilterShape::triangular, 1 + rng() % 10)
                             : oracle::random_doubly_convolved(rng, 1 + rng() % 8);
        const Signal s(oracle::random_vector(rng, p), 1.0);
        const double ns = oracle::norm(s.values());
        // Explicit steps s <- (I - W) s with the dense matrix.
        const auto W = oracle::dense_circulant(w.taps(), p);
        std::vector<double> x = s.values();
        for (std::uint64_t n = 1; n <= 100; ++n) {
            const auto Wx = oracle::matvec(W, x);
            for (std::size_t k = 0; k < p; ++k) x[k] -= Wx[k];
            if (n == 1 || n == 10 || n == 100) {
                const auto pw = inner_loop_direct_powered(s, w, n);
                double d = 0.0;
                for (std::size_t k = 0; k < p; ++k) d += (x[k] - pw[k]) * (x[k] - pw[k]);
                worst = std::max(worst, std::sqrt(d) / ns);
            }
        }
    }

    // Distance to the projection must shrink monotonically as N grows to 1e4.
    bool monotone = true;
    double final_gap = 0.0;
    const std::uint64_t powers[] = {1, 2, 3, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
    for (int t = 0; t < 10; ++t) {
        const auto w = build_base_filter(FilterShape::triangular, t % 2 ? 7 : 3);  // zeros at multiples of 8 / 16
        const Signal s(oracle::random_vector(rng, p), 1.0);
        const auto proj = inner_loop_direct_projection(s, w, 1e-13 * p);
        double prev = INFINITY;
        for (auto n : powers) {
            const auto pw = inner_loop_direct_powered(s, w, n);
            double d = 0.0;
            for (std::size_t k = 0; k < p; ++k) d += (pw[k] - proj[k]) * (pw[k] - proj[k]);
            d = std::sqrt(d);
            if (d > prev) monotone = false;
            prev = d;
        }
        final_gap = std::max(final_gap, prev);
    }
    return {worst < 1e-9 && monotone,
            fmt("max ||explicit - powered|| / ||s|| = %.2e (< 1e-9); distance to projection %s, %.2e at N = 1e4",
                worst, monotone ? "monotone" : "NOT monotone", final_gap)};
}

Outcome machine_precision_separation() {
    const auto g = sweep_grid(rational_8x8(MaskKind::ideal));
    double worst = 0.0;
    std::size_t bad = 0;
    for (double c : g.c1) {
        if (!(c >= 0.0 && c < 1e-8)) ++bad;
        worst = std::max(worst, c);
    }
    std::string detail = fmt("8x8 phi-averaged, %zu failed cells, max c1 %.2e (< 1e-8)", g.failed_cells(), worst);
    bool pass = bad == 0;
    if (!quick) {
        const auto t0 = std::chrono::steady_clock::now();
        auto st = SweepSettings::defaults();
        st.config.mask.kind = MaskKind::ideal;
        const auto full = sweep_grid(st);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double full_worst = 0.0;
        std::size_t full_bad = 0;
        for (double c : full.c1) {
            if (!(c >= 0.0 && c < 1e-8)) ++full_bad;
            full_worst = std::max(full_worst, c);
        }
        detail += fmt("; 48x48: %zu cells >= 1e-8, max c1 %.2e, %.1f s (< 900 s)", full_bad, full_worst, dt);
        pass = pass && full_bad == 0 && dt < 900.0;
    }
    return {pass, detail};
}

Outcome extrema_failure_regime() {
    const auto g = sweep_grid(rational_8x8(MaskKind::extrema));
    std::size_t low = 0, low_ok = 0, high = 0, high_ok = 0;
    for (std::size_t i = 0; i < g.a_values.size(); ++i) {
        for (std::size_t j = 0; j < g.f_values.size(); ++j) {
            const double af = g.a_values[i] * g.f_values[j];
            const double c = g.at(i, j);
            if (af < 0.5) {
                ++low;
                if (c >= 0.0 && c < 0.1) ++low_ok;
            } else if (af > 2.0) {
                ++high;
                if (c > 0.5) ++high_ok;
            }
        }
    }
    const double fl = low ? static_cast<double>(low_ok) / low : 0.0;
    const double fh = high ? static_cast<double>(high_ok) / high : 0.0;
    return {low > 0 && high > 0 && fl >= 0.9 && fh >= 0.9,
            fmt("af < 0.5: %zu/%zu cells with c1 < 0.1 (%.0f%%); af > 2: %zu/%zu cells with c1 > 0.5 (%.0f%%)", low_ok,
                low, 100 * fl, high_ok, high, 100 * fh)};
}

Outcome derivative_extension() {
    std::size_t counts[3] = {0, 0, 0};
    std::string grid_name;
    for (int d = 0; d <= 2; ++d) {
        SweepSettings st;
        if (quick) {
            st = rational_8x8(MaskKind::derivative, d);
            grid_name = "8x8";
        } else {
            st = SweepSettings::defaults();
            st.config.mask.kind = MaskKind::derivative;
            st.config.mask.derivative_order = d;
            grid_name = "48x48";
        }
        const auto g = sweep_grid(st);
        for (double c : g.c1) counts[d] += c >= 0.0 && c < 0.1;
    }
    return {counts[0] < counts[1] && counts[1] < counts[2],
            fmt("%s cells with c1 < 0.1: d=0 %zu, d=1 %zu, d=2 %zu", grid_name.c_str(), counts[0], counts[1], counts[2])};
}

Outcome zero_enforcing_filter() {
    std::string detail;
    bool pass = true;
    for (std::size_t L : {4u, 8u, 16u}) {
        const auto h = build_base_filter(FilterShape::triangular, L);
        const auto [w, bin] = enforce_spectral_zero(h, 256);
        const auto t = w.taps();
        const std::vector<double> taps(t.begin(), t.end());
        const double fast = std::abs(filter_spectrum(w, 256).eigenvalues[bin]);
        const double direct = std::abs(oracle::filter_eigenvalue(taps, 256, bin));
        bool symmetric = true;
        double min_tap = INFINITY, mass = 0.0;
        for (std::size_t j = 0; j < taps.size(); ++j) {
            symmetric = symmetric && taps[j] == taps[taps.size() - 1 - j];
            min_tap = std::min(min_tap, taps[j]);
            mass += taps[j];
        }
        const bool ok = fast < 1e-12 && direct < 1e-12 && symmetric && min_tap >= -1e-14 && std::abs(mass - 1) < 1e-12;
        pass = pass && ok;
        detail += fmt("%sL=%zu bin %zu |lambda| %.1e/%.1e min tap %.1e |mass-1| %.1e", detail.empty() ? "" : "; ", L,
                      bin, fast, direct, min_tap, std::abs(mass - 1));
    }
    return {pass, detail};
}

Outcome n0_bound() {
    // Explicit iteration is affordable up to this many steps; past it the
    // increments come from the closed form (1 - lambda)^m in the DFT domain.
    constexpr std::uint64_t kExplicitSteps = 20'000;
    std::mt19937_64 rng(4242);
    const std::size_t p = 128;
    bool pass = true;
    std::uint64_t max_n0[2] = {0, 0};
    std::uint64_t explicit_checked = 0;
    for (int t = 0; t < 10; ++t) {
        const auto w = build_base_filter(FilterShape::triangular, t % 2 ? 7 : 5);
        const Signal s(oracle::random_vector(rng, p), 1.0);
        const auto S = fft::forward(s.samples());
        double s_inf = 0.0;
        for (const auto& c : S) s_inf = std::max(s_inf, std::abs(c) / std::sqrt(static_cast<double>(p)));
        const auto lam = filter_spectrum(w, p).eigenvalues;
        std::size_t k = 0;
        for (double l : lam) k += std::abs(l) <= 1e-13 * p;

        for (int di = 0; di < 2; ++di) {
            const double delta = di == 0 ? 1e-3 : 1e-8;
            const auto n0 = compute_n0_bound(s_inf, p, k, delta);
            max_n0[di] = std::max(max_n0[di], n0);

            DecompositionConfig cfg;
            cfg.delta = 1e-300;  // never stop early
            cfg.max_iterations = std::min<std::uint64_t>(kExplicitSteps, n0 + 10000);
            std::vector<double> inc;
            inner_loop_iterative(s, w, cfg, &inc);  // inc[m] = ||s_{m+1} - s_m||, s_0 = s
            for (std::size_t m = 1; m < inc.size(); ++m) pass = pass && inc[m] <= inc[m - 1] * (1.0 + 1e-12);
            for (std::size_t m = n0; m < inc.size(); ++m) {
                pass = pass && inc[m] < delta;
                ++explicit_checked;
            }
            // Closed form beyond the explicit range.
            const auto closed = [&](std::uint64_t m) {
                double sum = 0.0;
                for (std::size_t j = 0; j < p; ++j) {
                    const double l = std::abs(lam[j]) <= 1e-13 * p ? 0.0 : lam[j];
                    const double f = l * std::pow(1.0 - l, static_cast<double>(m));
                    sum += f * f * std::norm(S[j]);
                }
                return std::sqrt(sum / static_cast<double>(p));
            };
            double prev = closed(n0);
            pass = pass && prev < delta;
            for (std::uint64_t m = n0 + 1; m < 1000 * n0; m = m * 3 / 2 + 1) {
                const double c = closed(m);
                pass = pass && c < delta && c <= prev * (1.0 + 1e-12);
                prev = c;
            }
        }
    }
    return {pass, fmt("max N0 %llu (delta 1e-3), %llu (delta 1e-8); %llu explicit steps m >= N0 checked, closed form "
                      "beyond %llu steps; increments nonincreasing",
                      static_cast<unsigned long long>(max_n0[0]), static_cast<unsigned long long>(max_n0[1]),
                      static_cast<unsigned long long>(explicit_checked),
                      static_cast<unsigned long long>(kExplicitSteps))};
}

Outcome reconstruction_identity() {
    std::mt19937_64 rng(8080);
    std::uniform_real_distribution<double> amp(0.1, 5.0), freq(0.02, 4.0), ph(0.0, kTwoPi), noise(-0.05, 0.05);
    double worst = 0.0;
    std::size_t max_extrema = 0, imfs = 0;
    const InnerMode modes[] = {InnerMode::direct_projection, InnerMode::iterative, InnerMode::direct_powered};
    for (int t = 0; t < 20; ++t) {
        const std::size_t p = 400 + rng() % 1600;
        const double fs = 20.0;
        const int tones = 2 + static_cast<int>(rng() % 4);
        std::vector<double> v(p, 0.0);
        for (int c = 0; c < tones; ++c) {
            const double a = amp(rng), f = freq(rng), phi = ph(rng);
            for (std::size_t k = 0; k < p; ++k) v[k] += a * std::cos(kTwoPi * f * k / fs + phi);
        }
        const double slope = amp(rng) * 0.01;
        for (std::size_t k = 0; k < p; ++k) v[k] += slope * k / fs + (t % 3 == 0 ? noise(rng) : 0.0);
        const Signal s(v, fs);
        DecompositionConfig cfg;
        cfg.mode = modes[t % 3];
        if (t % 4 == 1) cfg.mask.kind = MaskKind::derivative;
        const auto r = decompose(s, cfg);
        std::vector<double> sum = r.remainder.values();
        for (const auto& imf : r.imfs)
            for (std::size_t k = 0; k < p; ++k) sum[k] += imf[k];
        double d = 0.0;
        for (std::size_t k = 0; k < p; ++k) d += (sum[k] - v[k]) * (sum[k] - v[k]);
        worst = std::max(worst, std::sqrt(d) / oracle::norm(v));
        max_extrema = std::max(max_extrema, count_extrema(r.remainder));
        imfs += r.imfs.size();
    }
    return {worst < 1e-10 && max_extrema < 2,
            fmt("20 signals, %zu IMFs, max relative reconstruction error %.2e (< 1e-10), max remainder extrema %zu (< 2)",
                imfs, worst, max_extrema)};
}

Outcome stress_preset() {
    const TwoToneParams params{1.0, 0.37, 3.0};
    const auto s = generate_two_tone(params, 100.0, 20.0);
    const auto mask = mask_ideal(20.0, s.size(), build_base_filter(FilterShape::triangular, 64), 1.0);

    const auto t0 = std::chrono::steady_clock::now();
    const auto powered = inner_loop_direct_powered(s, mask.filter, 10'000'000);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto projected = inner_loop_direct_projection(s, mask.filter, 1e-13 * s.size());
    const double c_pow = c1_metric(powered, params, 100.0, 20.0);
    const double c_proj = c1_metric(projected, params, 100.0, 20.0);

    // The same cell through the full stress configuration.
    auto cfg = DecompositionConfig::stress();
    cfg.mask.kind = MaskKind::ideal;
    const auto r = decompose(s, cfg);
    const double c_stress = c1_metric(r.imfs.front(), params, 100.0, 20.0);

    const bool pass = dt < 1.0 && std::abs(c_pow - c_proj) < 1e-10 && c_stress < 1e-8;
    return {pass, fmt("N = 1e7 in %.3f s (< 1 s); c1 powered %.2e, projection %.2e, |diff| %.2e (< 1e-10); "
                      "stress preset c1 %.2e after %llu iterations",
                      dt, c_pow, c_proj, std::abs(c_pow - c_proj), c_stress,
                      static_cast<unsigned long long>(r.diagnostics.front().iterations))};
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) quick = true;
    }
    run(1, "eigenvalue identity", 5, eigenvalue_identity);
    run(2, "iterative/spectral equivalence", 10, iterative_spectral_equivalence);
    run(3, "machine-precision separation (ideal mask)", quick ? 60 : 960, machine_precision_separation);
    run(4, "extrema-strategy failure regime", 60, extrema_failure_regime);
    run(5, "derivative extension", 600, derivative_extension);
    run(6, "zero-enforcing filter", 1, zero_enforcing_filter);
    run(7, "N0 bound", 10, n0_bound);
    run(8, "reconstruction identity", 10, reconstruction_identity);
    run(9, "stress preset", 10, stress_preset);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
