// iterfilt: decomposition, filter design and the two-tone benchmark from the
// command line. Exit status 0 on success, 2 on bad flags or unreadable input,
// 3 when the computation itself fails.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "artifacts.hpp"
#include "iterfilt/benchmark.hpp"
#include "iterfilt/dif.hpp"
#include "iterfilt/error.hpp"
#include "iterfilt/io.hpp"
#include "iterfilt/mask.hpp"
#include "iterfilt/version.hpp"

namespace iterfilt::cli {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kFailure = 3;

using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Library errors raised while reading inputs are the caller's fault.
template <class F>
auto as_usage_error(F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

template <class T>
bool parse_whole(std::string_view text, T& out) {
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

// "extrema", "ideal[:<Hz>]", "derivative[:<d>]"
std::string parse_mask(const std::string& text, MaskStrategy& mask) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "extrema" && colon == std::string::npos) {
        mask.kind = MaskKind::extrema;
        return {};
    }
    if (kind == "ideal") {
        mask.kind = MaskKind::ideal;
        if (colon == std::string::npos) return {};
        double hz = 0.0;
        if (parse_whole(arg, hz) && std::isfinite(hz) && hz > 0.0) {
            mask.target_frequency = hz;
            return {};
        }
        return "ideal:<Hz> needs a positive frequency, got '" + arg + "'";
    }
    if (kind == "derivative") {
        mask.kind = MaskKind::derivative;
        if (colon == std::string::npos) return {};
        int d = 0;
        if (parse_whole(arg, d) && d >= 0) {
            mask.derivative_order = d;
            return {};
        }
        return "derivative:<d> needs a non-negative integer order, got '" + arg + "'";
    }
    return "expected extrema, ideal:<Hz> or derivative:<d>, got '" + text + "'";
}

// "none", "periodic[:<pad>]", "reflect-even[:<pad>]", "reflect-odd[:<pad>]"
std::string parse_boundary(const std::string& text, BoundaryConfig& boundary) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    boundary = {};
    if (kind == "none") {
        return colon == std::string::npos ? "" : "'none' takes no padding";
    }
    if (kind == "periodic") {
        boundary.mode = BoundaryMode::periodic;
    } else if (kind == "reflect-even") {
        boundary.mode = BoundaryMode::reflect_even;
    } else if (kind == "reflect-odd") {
        boundary.mode = BoundaryMode::reflect_odd;
    } else {
        return "expected none, periodic, reflect-even or reflect-odd, got '" + text + "'";
    }
    if (colon != std::string::npos) {
        std::size_t pad = 0;
        if (!parse_whole(std::string_view(text).substr(colon + 1), pad) || pad == 0) {
            return "padding must be a positive integer in '" + text + "'";
        }
        boundary.pad = pad;
    }
    return {};
}

CLI::Validator validator_from(std::string (*parse)(const std::string&, MaskStrategy&), const char* name) {
    return CLI::Validator(
        [parse](std::string& s) {
            MaskStrategy scratch;
            return parse(s, scratch);
        },
        name);
}

struct ConfigFlags {
    std::string preset;
    std::optional<double> delta;
    std::optional<std::uint64_t> max_iter;
    std::string mode;
    std::string mask = "extrema";
    std::string filter = "triangular";
    std::optional<double> nu;
    std::string boundary = "none";
    std::string realization = "aligned";
    std::optional<std::size_t> max_imfs;
};

void add_config_options(CLI::App& sub, ConfigFlags& f, const std::string& mask_flag) {
    sub.add_option("--preset", f.preset, "standard: iterative, delta 1e-3; stress: powered, delta 1e-20, 1e7 steps")
        ->check(CLI::IsMember({"standard", "stress"}));
    sub.add_option("--delta", f.delta, "Stop when the increment norm drops below this")->check(CLI::PositiveNumber);
    sub.add_option("--max-iter", f.max_iter, "Inner-loop iteration cap")->check(CLI::PositiveNumber);
    sub.add_option("--mode", f.mode, "Inner loop: iterative, projection or powered")
        ->check(CLI::IsMember({"iterative", "projection", "powered"}));
    sub.add_option(mask_flag, f.mask, "Mask length selection: extrema, ideal:<Hz> or derivative:<d>")
        ->check(validator_from(parse_mask, "MASK"))
        ->capture_default_str();
    sub.add_option("--filter", f.filter, "Base filter shape")
        ->check(CLI::IsMember({"triangular", "bspline3"}))
        ->capture_default_str();
    sub.add_option("--nu", f.nu, "Mask length tuning parameter (default 1.6)")->check(CLI::PositiveNumber);
    sub.add_option("--boundary", f.boundary, "none, periodic[:pad], reflect-even[:pad] or reflect-odd[:pad]")
        ->check(CLI::Validator(
            [](std::string& s) {
                BoundaryConfig scratch;
                return parse_boundary(s, scratch);
            },
            "BOUNDARY"))
        ->capture_default_str();
    sub.add_option("--realization", f.realization, "aligned: zero-enforced mask; scaled: plain scaled base")
        ->check(CLI::IsMember({"aligned", "scaled"}))
        ->capture_default_str();
    sub.add_option("--max-imfs", f.max_imfs, "Cap on extracted IMFs")->check(CLI::Range(std::size_t{1}, kMaxImfs));
}

DecompositionConfig resolve(const ConfigFlags& f) {
    DecompositionConfig cfg;
    if (f.preset == "standard") cfg = DecompositionConfig::standard();
    if (f.preset == "stress") cfg = DecompositionConfig::stress();
    if (f.delta) cfg.delta = *f.delta;
    if (f.max_iter) cfg.max_iterations = *f.max_iter;
    if (f.mode == "iterative") cfg.mode = InnerMode::iterative;
    if (f.mode == "projection") cfg.mode = InnerMode::direct_projection;
    if (f.mode == "powered") cfg.mode = InnerMode::direct_powered;
    parse_mask(f.mask, cfg.mask);
    if (f.nu) cfg.mask.nu = *f.nu;
    cfg.filter_shape = f.filter == "bspline3" ? FilterShape::bspline3 : FilterShape::triangular;
    cfg.realization = f.realization == "scaled" ? MaskRealization::scaled : MaskRealization::zero_aligned;
    parse_boundary(f.boundary, cfg.boundary);
    if (f.max_imfs) cfg.max_imfs = *f.max_imfs;
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

std::string_view mask_name(MaskKind kind) {
    switch (kind) {
        case MaskKind::extrema: return "extrema";
        case MaskKind::ideal: return "ideal";
        case MaskKind::derivative: return "derivative";
    }
    return "unknown";
}

std::string_view boundary_name(BoundaryMode mode) {
    switch (mode) {
        case BoundaryMode::none: return "none";
        case BoundaryMode::periodic: return "periodic";
        case BoundaryMode::reflect_even: return "reflect-even";
        case BoundaryMode::reflect_odd: return "reflect-odd";
    }
    return "unknown";
}

std::string_view shape_name(FilterShape shape) {
    return shape == FilterShape::bspline3 ? "bspline3" : "triangular";
}

Json config_json(const DecompositionConfig& cfg) {
    Json mask;
    mask["strategy"] = mask_name(cfg.mask.kind);
    mask["nu"] = cfg.mask.nu;
    if (cfg.mask.kind == MaskKind::ideal) mask["target_frequency"] = cfg.mask.target_frequency;
    if (cfg.mask.kind == MaskKind::derivative) mask["derivative_order"] = cfg.mask.derivative_order;

    Json boundary;
    boundary["mode"] = boundary_name(cfg.boundary.mode);
    boundary["pad"] = cfg.boundary.pad ? Json(*cfg.boundary.pad) : Json("2L");

    Json j;
    j["mode"] = to_string(cfg.mode);
    j["delta"] = cfg.delta;
    j["max_iterations"] = cfg.max_iterations;
    j["zero_tolerance"] = cfg.zero_tolerance ? Json(*cfg.zero_tolerance) : Json("1e-13*p");
    j["mask"] = std::move(mask);
    j["filter"] = shape_name(cfg.filter_shape);
    j["realization"] = cfg.realization == MaskRealization::scaled ? "scaled" : "aligned";
    j["boundary"] = std::move(boundary);
    j["max_imfs"] = cfg.max_imfs;
    j["residual_tolerance"] = cfg.residual_tolerance;
    return j;
}

template <class Writer, class Value>
std::string render(Writer write, const Value& value) {
    std::ostringstream os;
    write(os, value);
    return os.str();
}

unsigned resolve_threads(std::optional<unsigned> flag) {
    unsigned n = flag.value_or(0);
    if (const char* env = std::getenv("ITERFILT_THREADS"); env && *env) {
        unsigned cap = 0;
        if (!parse_whole(std::string_view(env), cap)) {
            throw UsageError(std::string("ITERFILT_THREADS must be a non-negative integer, got '") + env + "'");
        }
        if (cap > 0) n = n == 0 ? cap : std::min(n, cap);
    }
    return n;
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs {
    std::string input;
    ConfigFlags config;
};

int cmd_decompose(const DecomposeArgs& a, const std::string& output, Manifest m, Clock::time_point started) {
    const auto cfg = resolve(a.config);
    const auto s = as_usage_error([&] { return io::read_signal_file(a.input); });

    const auto result = decompose(s, cfg);

    Artifacts out;
    for (std::size_t k = 0; k < result.imfs.size(); ++k) {
        out.add("imf_" + std::to_string(k + 1) + ".csv", render(io::write_signal, result.imfs[k]));
    }
    out.add("remainder.csv", render(io::write_signal, result.remainder));

    Json diagnostics = Json::array();
    for (const auto& d : result.diagnostics) {
        Json j;
        j["mask_length"] = d.mask_length;
        j["filter_half_length"] = d.filter_half_length;
        j["mode"] = to_string(d.mode);
        j["iterations"] = d.iterations;
        j["increment_norm"] = d.increment_norm;
        j["residual_split"] = d.residual_split;
        diagnostics.push_back(std::move(j));
    }
    const auto remainder_extrema = count_extrema(result.remainder);
    m.config = config_json(cfg);
    m.inputs["signal"] = a.input;
    m.inputs["samples"] = s.size();
    m.inputs["sample_rate"] = s.sample_rate();
    m.results["imfs"] = result.imfs.size();
    m.results["stop_reason"] = result.stop_reason;
    m.results["remainder_extrema"] = remainder_extrema;
    m.results["diagnostics"] = std::move(diagnostics);
    publish(output, out, std::move(m), started);

    std::cout << "decompose: " << result.imfs.size() << " IMF(s), stop: " << result.stop_reason
              << ", remainder extrema: " << remainder_extrema << " -> " << output << "\n";
    return kOk;
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkArgs {
    ConfigFlags config;
    bool rational = false;
    bool irrational = false;
    std::optional<std::size_t> phi_avg;
    std::optional<double> phi;
    std::string grid = "48x48";
    std::vector<double> a_range{1e-2, 1e2};
    std::vector<double> f_range{0.05, 0.95};
    double duration = 100.0;
    double sample_rate = 20.0;
    std::vector<int> curves;
    std::optional<unsigned> threads;
};

const std::regex kGridPattern(R"(^([0-9]+)x([0-9]+)$)");

int cmd_benchmark(const BenchmarkArgs& a, const std::string& output, Manifest m, Clock::time_point started) {
    std::smatch match;
    std::size_t n_a = 0, n_f = 0;
    std::regex_match(a.grid, match, kGridPattern);
    parse_whole(match.str(1), n_a);
    parse_whole(match.str(2), n_f);

    SweepSettings st;
    st.a_values = log_space(a.a_range[0], a.a_range[1], n_a);
    st.f_values = lin_space(a.f_range[0], a.f_range[1], n_f);
    if (a.phi) {
        st.average_phi = false;
        st.phi_values = {*a.phi};
    } else {
        st.phi_values = uniform_phases(a.phi_avg.value_or(16));
    }
    st.duration = a.duration;
    st.sample_rate = a.sample_rate;
    st.frequency_mode = a.irrational ? FrequencyMode::irrational : FrequencyMode::rational;
    st.config = resolve(a.config);
    st.threads = resolve_threads(a.threads);

    std::vector<int> exponents = a.curves;
    if (exponents.empty()) {
        exponents = st.config.mask.kind == MaskKind::derivative ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{1, 2};
    }

    const auto grid = sweep_grid(st);
    const auto curves = critical_curves(grid.a_values, grid.f_values, exponents);

    Artifacts out;
    out.add("c1_grid.csv", render(io::write_grid, grid));
    out.add("cells.csv", render(io::write_cells, grid));
    for (const auto& curve : curves) {
        out.add("curve_e" + std::to_string(curve.exponent) + ".csv", render(io::write_curve, curve));
    }

    const std::size_t total = grid.c1.size();
    const std::size_t failed = grid.failed_cells();
    std::size_t below_1e8 = 0, below_01 = 0;
    double worst = 0.0;
    for (double c : grid.c1) {
        if (c == kFailedCell) continue;
        below_1e8 += c < 1e-8;
        below_01 += c < 0.1;
        worst = std::max(worst, c);
    }

    m.config = config_json(st.config);
    m.config["grid"] = {{"a", {a.a_range[0], a.a_range[1], n_a}}, {"f", {a.f_range[0], a.f_range[1], n_f}}};
    m.config["frequencies"] = a.irrational ? "irrational" : "rational";
    m.config["phi"] = a.phi ? Json(*a.phi) : Json("avg:" + std::to_string(st.phi_values.size()));
    m.config["duration"] = st.duration;
    m.config["sample_rate"] = st.sample_rate;
    m.config["curve_exponents"] = exponents;
    m.config["threads"] = st.threads;
    m.results["cells"] = total;
    m.results["failed_cells"] = failed;
    m.results["cells_c1_below_1e-8"] = below_1e8;
    m.results["cells_c1_below_0.1"] = below_01;
    m.results["max_c1"] = worst;
    publish(output, out, std::move(m), started);

    std::cout << "benchmark: " << total << " cells, " << failed << " failed, " << below_1e8 << " with c1 < 1e-8, "
              << below_01 << " with c1 < 0.1, max c1 " << worst << " -> " << output << "\n";
    if (2 * failed > total) {
        std::cerr << "iterfilt: " << failed << " of " << total << " cells failed\n";
        return kFailure;
    }
    return kOk;
}

// ------------------------------------------------------------ filter-design

struct FilterDesignArgs {
    std::string shape = "triangular";
    std::size_t half_length = 0;
    std::optional<std::size_t> period;
    bool enforce_zero = false;
    std::optional<std::size_t> zero_bin;
};

int cmd_filter_design(const FilterDesignArgs& a, const std::string& output, Manifest m, Clock::time_point started) {
    const auto shape = a.shape == "bspline3" ? FilterShape::bspline3 : FilterShape::triangular;
    const auto base = as_usage_error([&] { return build_base_filter(shape, a.half_length); });
    const std::size_t period = a.period.value_or(std::max<std::size_t>(256, 4 * a.half_length + 1));

    Filter w = base;
    long long zero_bin = -1;
    if (a.enforce_zero) {
        if (a.zero_bin) {
            w = enforce_spectral_zero_at(base, period, *a.zero_bin);
            zero_bin = static_cast<long long>(*a.zero_bin);
        } else {
            auto [filter, bin] = enforce_spectral_zero(base, period);
            w = std::move(filter);
            zero_bin = static_cast<long long>(bin);
        }
    }
    const auto spectrum = filter_spectrum(w, period);
    if (!a.enforce_zero) {
        if (const auto z = smallest_zero_bin(spectrum, 1e-12)) zero_bin = static_cast<long long>(z);
    }

    Artifacts out;
    out.add("filter.csv", render(io::write_filter, w));
    std::ostringstream spec;
    io::write_spectrum(spec, spectrum, zero_bin);
    out.add("spectrum.csv", spec.str());

    double min_tap = w.taps().front(), mass = 0.0;
    for (double t : w.taps()) {
        min_tap = std::min(min_tap, t);
        mass += t;
    }
    m.config["shape"] = shape_name(shape);
    m.config["L"] = a.half_length;
    m.config["period"] = period;
    m.config["enforce_zero"] = a.enforce_zero;
    if (a.zero_bin) m.config["zero_bin"] = *a.zero_bin;
    m.results["taps"] = w.size();
    m.results["zero_bin"] = zero_bin;
    m.results["abs_eigenvalue_at_zero_bin"] =
        zero_bin >= 0 ? Json(std::abs(spectrum.eigenvalues[static_cast<std::size_t>(zero_bin)])) : Json(nullptr);
    m.results["min_tap"] = min_tap;
    m.results["tap_sum"] = mass;
    publish(output, out, std::move(m), started);

    std::cout << "filter-design: " << w.size() << " taps, period " << period;
    if (zero_bin >= 0) {
        std::cout << ", zero bin " << zero_bin << " |lambda| "
                  << std::abs(spectrum.eigenvalues[static_cast<std::size_t>(zero_bin)]);
    } else {
        std::cout << ", no spectral zero";
    }
    std::cout << " -> " << output << "\n";
    return kOk;
}

// ----------------------------------------------------------------- generate

struct GenerateArgs {
    double a = 0.0;
    double f = 0.0;
    double phi = 0.0;
    double duration = 100.0;
    double sample_rate = 20.0;
    bool rational = false;
    bool irrational = false;
};

int cmd_generate(const GenerateArgs& a, const std::string& output, Manifest m, Clock::time_point started) {
    double f = a.f;
    if (a.rational) f = effective_frequency(a.f, FrequencyMode::rational, a.duration);
    if (a.irrational) f = effective_frequency(a.f, FrequencyMode::irrational, a.duration);
    const auto s = as_usage_error([&] { return generate_two_tone({a.a, f, a.phi}, a.duration, a.sample_rate); });

    Artifacts out;
    out.add("signal.csv", render(io::write_signal, s));
    m.config["a"] = a.a;
    m.config["f"] = a.f;
    m.config["phi"] = a.phi;
    m.config["duration"] = a.duration;
    m.config["sample_rate"] = a.sample_rate;
    m.config["frequencies"] = a.rational ? "rational" : a.irrational ? "irrational" : "as-given";
    m.results["effective_f"] = f;
    m.results["samples"] = s.size();
    publish(output, out, std::move(m), started);

    std::cout << "generate: " << s.size() << " samples, f = " << io::format_number(f) << " -> " << output << "\n";
    return kOk;
}

// ---------------------------------------------------------------------- run

std::vector<std::string> without_output(std::vector<std::string> args) {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& t = args[i];
        if (t == "--output" || t == "-o") {
            ++i;
        } else if (t.rfind("--output=", 0) != 0 && !(t.size() > 2 && t.rfind("-o", 0) == 0 && t[2] != '-')) {
            kept.push_back(t);
        }
    }
    return kept;
}

int run(const std::vector<std::string>& args);

int cmd_rerun(const std::string& manifest_path, const std::optional<std::string>& output) {
    Json j;
    std::vector<std::string> argv;
    std::string command, dir;
    try {
        std::ifstream is(manifest_path);
        if (!is) throw UsageError("cannot open " + manifest_path);
        j = Json::parse(is);
        command = j.at("command").get<std::string>();
        argv = j.at("argv").get<std::vector<std::string>>();
        dir = output.value_or(j.at("output_dir").get<std::string>());
    } catch (const Json::exception& e) {
        throw UsageError("malformed manifest " + manifest_path + ": " + e.what());
    }
    if (command == "rerun") throw UsageError("manifest records a rerun, not a command");
    std::vector<std::string> args{command};
    args.insert(args.end(), argv.begin(), argv.end());
    args.push_back("--output");
    args.push_back(dir);
    return run(args);
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"Discrete iterative filtering: signal decomposition, filter design and the two-tone benchmark.",
                 "iterfilt"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1, 1);
    std::string output;

    DecomposeArgs dec;
    auto* decompose_cmd = app.add_subcommand("decompose", "Split a signal into IMFs and a remainder");
    decompose_cmd->add_option("--input,-i", dec.input, "Signal CSV ('# fs=<Hz> n=<s>' header, one sample per line)")
        ->required();
    decompose_cmd->add_option("--output,-o", output, "Output directory")->required();
    add_config_options(*decompose_cmd, dec.config, "--mask");

    BenchmarkArgs bench;
    auto* benchmark_cmd = app.add_subcommand("benchmark", "Sweep the two-tone c1 metric over an (a, f) grid");
    benchmark_cmd->add_option("--output,-o", output, "Output directory")->required();
    add_config_options(*benchmark_cmd, bench.config, "--strategy");
    auto* rational = benchmark_cmd->add_flag("--rational", bench.rational, "Snap f to multiples of 1/n (default)");
    auto* irrational = benchmark_cmd->add_flag("--irrational", bench.irrational, "Move f off the DFT grid");
    rational->excludes(irrational);
    auto* phi_avg = benchmark_cmd->add_option("--phi-avg", bench.phi_avg, "Average c1 over this many phases (default 16)")
                        ->check(CLI::PositiveNumber);
    auto* phi = benchmark_cmd->add_option("--phi", bench.phi, "Single LF phase in radians");
    phi_avg->excludes(phi);
    benchmark_cmd->add_option("--grid", bench.grid, "<na>x<nf>")
        ->check(CLI::Validator(
            [](std::string& s) {
                std::smatch m;
                if (!std::regex_match(s, m, kGridPattern) || m.str(1).find_first_not_of('0') == std::string::npos ||
                    m.str(2).find_first_not_of('0') == std::string::npos) {
                    return std::string("grid must look like 48x48 with positive sizes");
                }
                return std::string();
            },
            "NAxNF"))
        ->capture_default_str();
    benchmark_cmd->add_option("--a-range", bench.a_range, "LF amplitude range (log axis)")
        ->expected(2)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    benchmark_cmd->add_option("--f-range", bench.f_range, "LF frequency range in Hz (linear axis)")
        ->expected(2)
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    benchmark_cmd->add_option("--duration", bench.duration, "Signal length in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    benchmark_cmd->add_option("--fs", bench.sample_rate, "Sample rate in Hz")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    benchmark_cmd->add_option("--curves", bench.curves, "Critical-curve exponents e of a f^e = 1")
        ->check(CLI::PositiveNumber);
    benchmark_cmd->add_option("--threads", bench.threads, "Worker threads (0: all cores; ITERFILT_THREADS caps it)");

    FilterDesignArgs fd;
    auto* filter_cmd = app.add_subcommand("filter-design", "Build a base filter, optionally with an enforced zero");
    filter_cmd->add_option("--output,-o", output, "Output directory")->required();
    filter_cmd->add_option("--shape", fd.shape, "Base filter shape")
        ->check(CLI::IsMember({"triangular", "bspline3"}))
        ->capture_default_str();
    filter_cmd->add_option("--L", fd.half_length, "Half-length")
        ->required()
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
    filter_cmd->add_option("--period", fd.period, "DFT period of the spectrum (default max(256, 4L+1))")
        ->check(CLI::PositiveNumber);
    auto* enforce = filter_cmd->add_flag("--enforce-zero", fd.enforce_zero, "Put an exact zero at the first minimum");
    filter_cmd->add_option("--zero-bin", fd.zero_bin, "Enforce the zero at this bin instead")
        ->check(CLI::PositiveNumber)
        ->needs(enforce);

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Write the two-tone signal a cos(2 pi f t + phi) + cos(2 pi t)");
    generate_cmd->add_option("--output,-o", output, "Output directory")->required();
    generate_cmd->add_option("--a", gen.a, "LF amplitude")->required()->check(CLI::NonNegativeNumber);
    generate_cmd->add_option("--f", gen.f, "LF frequency in Hz")->required()->check(CLI::Range(0.0, 1.0));
    generate_cmd->add_option("--phi", gen.phi, "LF phase in radians")->capture_default_str();
    generate_cmd->add_option("--duration", gen.duration, "Length in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    generate_cmd->add_option("--fs", gen.sample_rate, "Sample rate in Hz")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* gen_rational = generate_cmd->add_flag("--rational", gen.rational, "Snap f to multiples of 1/duration");
    auto* gen_irrational = generate_cmd->add_flag("--irrational", gen.irrational, "Move f off the DFT grid");
    gen_rational->excludes(gen_irrational);

    std::string manifest_path;
    std::optional<std::string> rerun_output;
    auto* rerun_cmd = app.add_subcommand("rerun", "Repeat the run recorded in a manifest.json");
    rerun_cmd->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
    rerun_cmd->add_option("--output,-o", rerun_output, "Output directory (default: the recorded one)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    Manifest m;
    const auto sub = app.get_subcommands().front();
    m.command = sub->get_name();
    const auto pos = std::find(args.begin(), args.end(), m.command);
    m.argv = without_output(std::vector<std::string>(pos + 1, args.end()));
    const auto started = Clock::now();
    const std::string command = m.command;

    try {
        if (sub == decompose_cmd) return cmd_decompose(dec, output, std::move(m), started);
        if (sub == benchmark_cmd) return cmd_benchmark(bench, output, std::move(m), started);
        if (sub == filter_cmd) return cmd_filter_design(fd, output, std::move(m), started);
        if (sub == generate_cmd) return cmd_generate(gen, output, std::move(m), started);
        return cmd_rerun(manifest_path, rerun_output);
    } catch (const UsageError& e) {
        std::cerr << "iterfilt " << command << ": " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "iterfilt " << command << ": " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace
}  // namespace iterfilt::cli

int main(int argc, char** argv) {
    return iterfilt::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
