#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "iterfilt/error.hpp"
#include "iterfilt/mask.hpp"
#include "oracles.hpp"

using namespace iterfilt;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an iterfilt::Error");
    return ErrorCode::io_error;
}

void check_invariants(const Filter& w) {
    const auto t = w.taps();
    double mass = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        REQUIRE(t[j] == t[t.size() - 1 - j]);
        REQUIRE(t[j] >= -1e-14);
        mass += t[j];
    }
    REQUIRE(std::abs(mass - 1.0) < 1e-12);
}

const Filter& base64() {
    static const Filter base = build_base_filter(FilterShape::triangular, 64);
    return base;
}

}  // namespace

TEST_SUITE("mask") {

TEST_CASE("extrema strategy") {
    SUBCASE("formula") {
        std::vector<double> v(2000);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::cos(kTwoPi * (k + 5.0) / 20.0);
        const auto m = mask_length_from_extrema(v, 1.6);
        CHECK(m.extrema == 200);
        CHECK(m.half_length == 16);
        CHECK(m.fractional == doctest::Approx(16.0));
    }
    SUBCASE("pure HF tone") {
        const auto s = generate_two_tone({0.0, 0.5, 0.0}, 100.0, 20.0);
        const auto L = mask_from_extrema(s, 1.6);
        CHECK((L == 16 || L == 17));
    }
    SUBCASE("LF-dominated extrema for af > 1") {
        // a = 10, f = 0.9: the HF tone only bends the LF curve, so the count
        // follows the LF period and the mask is longer than the HF one.
        const auto s = generate_two_tone({10.0, 0.9, 0.0}, 100.0, 20.0);
        const auto m = mask_length_from_extrema(s.samples(), 1.6);
        CHECK(m.extrema >= 179);
        CHECK(m.extrema <= 181);
        CHECK(m.half_length > mask_from_extrema(generate_two_tone({0.0, 0.5, 0.0}, 100.0, 20.0), 1.6));
        // Much more visible further from the HF tone.
        CHECK(mask_from_extrema(generate_two_tone({100.0, 0.3, 0.0}, 100.0, 20.0), 1.6) >= 50);
    }
    SUBCASE("clamped to the admissible range") {
        std::vector<double> zigzag(9);
        for (std::size_t k = 0; k < zigzag.size(); ++k) zigzag[k] = k % 2 ? 1.0 : -1.0;
        CHECK(mask_length_from_extrema(zigzag, 0.01).half_length == 1);
        CHECK(mask_length_from_extrema(zigzag, 100.0).half_length == 4);
    }
    SUBCASE("invariant under scaling and offset") {
        std::mt19937_64 rng(31);
        for (int t = 0; t < 10; ++t) {
            auto v = oracle::random_vector(rng, 300);
            auto w = v;
            for (auto& x : w) x = 0.01 * x - 4.0;
            CHECK(mask_length_from_extrema(v, 1.6).half_length == mask_length_from_extrema(w, 1.6).half_length);
        }
    }
    SUBCASE("errors") {
        CHECK(code_of([] { mask_length_from_extrema(std::vector<double>{0, 1, 0, 0}, 1.6); }) ==
              ErrorCode::too_few_extrema);
        CHECK(code_of([] { mask_length_from_extrema(std::vector<double>{0, 1, 0, 1}, 0.0); }) ==
              ErrorCode::invalid_argument);
    }
}

TEST_CASE("derivative strategy") {
    const auto hf = generate_two_tone({0.0, 0.5, 0.0}, 100.0, 20.0);
    const auto L_hf = static_cast<long>(mask_from_extrema(hf, 1.6));

    SUBCASE("order 0 is the extrema strategy") {
        std::mt19937_64 rng(9);
        const Signal s(oracle::random_vector(rng, 500), 5.0);
        CHECK(mask_from_derivative(s, 0, 1.6) == mask_from_extrema(s, 1.6));
    }
    SUBCASE("first derivative of a cosine") {
        CHECK(std::abs(static_cast<long>(mask_from_derivative(hf, 1, 1.6)) - L_hf) <= 1);
    }
    SUBCASE("high enough order recovers the HF count when a f^d <= 1") {
        const auto s = generate_two_tone({10.0, 0.5, 0.0}, 100.0, 20.0);
        const auto m = mask_length_from_derivative(s, 4, 1.6);
        CHECK(std::abs(static_cast<long>(m.half_length) - L_hf) <= 2);
        // Below that order the LF tone still dominates.
        CHECK(mask_from_derivative(s, 1, 1.6) > static_cast<std::size_t>(L_hf + 2));
    }
    SUBCASE("errors") {
        CHECK(code_of([&] { mask_from_derivative(hf, -1, 1.6); }) == ErrorCode::invalid_argument);
        CHECK(code_of([] { mask_from_derivative(Signal({0, 1, 0, 1, 0, 1}, 1.0), 3, 1.6); }) ==
              ErrorCode::order_too_large);
        const Signal line({0, 1, 2, 3, 4, 5, 6, 7}, 1.0);
        CHECK(code_of([&] { mask_from_derivative(line, 1, 1.6); }) == ErrorCode::too_few_extrema);
    }
    MaskStrategy bad;
    bad.kind = MaskKind::derivative;
    bad.derivative_order = -2;
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::invalid_argument);
}

TEST_CASE("ideal strategy") {
    SUBCASE("1 Hz at Fs = 20, p = 2000") {
        const auto m = mask_ideal(20.0, 2000, base64(), 1.0);
        CHECK(m.zero_bin == 100);
        check_invariants(m.filter);
        const auto lam = filter_spectrum(m.filter, 2000).eigenvalues;
        CHECK(std::abs(lam[100]) < 1e-12);
        // Brute-force check of the zero and of the bins below it.
        const std::vector<double> taps(m.filter.taps().begin(), m.filter.taps().end());
        CHECK(std::abs(oracle::filter_eigenvalue(taps, 2000, 100)) < 1e-12);
        for (std::size_t j = 1; j < 100; ++j) CHECK(oracle::filter_eigenvalue(taps, 2000, j) > 1e-12);
        CHECK(smallest_zero_bin(filter_spectrum(m.filter, 2000), 1e-12) == 100);
    }
    SUBCASE("mask length shrinks as the target frequency grows") {
        std::size_t prev = SIZE_MAX;
        for (double f : {0.3, 0.5, 1.0, 2.0, 3.5, 5.0}) {
            const auto m = mask_ideal(20.0, 2000, base64(), f);
            CHECK(m.half_length <= prev);
            prev = m.half_length;
        }
    }
    SUBCASE("every reachable bin gets its exact first zero") {
        for (auto shape : {FilterShape::triangular, FilterShape::bspline3}) {
            const auto base = build_base_filter(shape, 64);
            for (std::size_t p : {512u, 2000u}) {
                for (std::size_t bin = 12; bin <= p / 4; bin += 7) {
                    const auto m = mask_for_bin(p, base, bin);
                    CHECK(m.zero_bin == bin);
                    check_invariants(m.filter);
                    CHECK(m.filter.size() <= p);
                    CHECK(smallest_zero_bin(filter_spectrum(m.filter, p), 1e-12) == bin);
                }
            }
        }
    }
    SUBCASE("deterministic") {
        const auto a = mask_ideal(20.0, 2013, base64(), 1.37);
        const auto b = mask_ideal(20.0, 2013, base64(), 1.37);
        CHECK(a.half_length == b.half_length);
        CHECK(std::equal(a.filter.taps().begin(), a.filter.taps().end(), b.filter.taps().begin()));
    }
    SUBCASE("unreachable targets") {
        CHECK(code_of([] { mask_ideal(20.0, 2000, base64(), 15.0); }) == ErrorCode::unattainable_zero);
        CHECK(code_of([] { mask_ideal(20.0, 2000, base64(), 0.001); }) == ErrorCode::unattainable_zero);
        // Bin 1 would need a filter longer than the period.
        CHECK(code_of([] { mask_for_bin(200, base64(), 1); }) == ErrorCode::unattainable_zero);
        CHECK(code_of([] { mask_ideal(0.0, 2000, base64(), 1.0); }) == ErrorCode::invalid_argument);
    }
}

TEST_CASE("smallest zero bin") {
    FilterSpectrum s{{1.0, 0.5, 1e-14, 0.0, 0.3, 0.0, 1e-14, 0.5}, 8};
    CHECK(smallest_zero_bin(s, 1e-12) == 2);
    CHECK(smallest_zero_bin(s, 1e-16) == 3);
    FilterSpectrum none{{1.0, 0.5, 0.5}, 3};
    CHECK(smallest_zero_bin(none, 1e-12) == 0);
}

}
