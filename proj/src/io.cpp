#include "iterfilt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "iterfilt/error.hpp"

namespace iterfilt::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& token, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, "cannot parse " + what + " '" + token + "'");
    }
    if (used != token.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::parse_error, "cannot parse " + what + " '" + token + "'");
    }
    return v;
}

// Parses "key=value" tokens after the leading '#'.
std::vector<std::pair<std::string, std::string>> header_fields(const std::string& line) {
    if (line.empty() || line[0] != '#') throw Error(ErrorCode::parse_error, "missing '#' header line");
    std::istringstream ss(line.substr(1));
    std::vector<std::pair<std::string, std::string>> out;
    std::string tok;
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::parse_error, "malformed header token '" + tok + "'");
        out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return out;
}

std::vector<double> read_values(std::istream& is, const std::string& what) {
    std::vector<double> values;
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        values.push_back(parse_double(line, what));
    }
    return values;
}

}  // namespace

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void write_signal(std::ostream& os, const Signal& s) {
    os << "# fs=" << format_number(s.sample_rate()) << " n=" << format_number(s.duration()) << '\n';
    for (double v : s.samples()) os << format_number(v) << '\n';
}

Signal read_signal(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorCode::parse_error, "empty signal file");
    double fs = 0.0;
    double n = 0.0;
    bool have_fs = false;
    bool have_n = false;
    for (const auto& [key, value] : header_fields(trim(line))) {
        if (key == "fs") {
            fs = parse_double(value, "fs");
            have_fs = true;
        } else if (key == "n") {
            n = parse_double(value, "n");
            have_n = true;
        }
    }
    if (!have_fs || !have_n) throw Error(ErrorCode::parse_error, "signal header needs fs and n");
    auto values = read_values(is, "sample");
    try {
        return Signal(std::move(values), fs, n);
    } catch (const Error& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
}

void write_signal_file(const std::string& path, const Signal& s) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::io_error, "cannot write " + path);
    write_signal(os, s);
}

Signal read_signal_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::io_error, "cannot open " + path);
    return read_signal(is);
}

void write_filter(std::ostream& os, const Filter& w) {
    os << "# L=" << w.half_length() << " doubly_convolved=" << (w.doubly_convolved() ? "true" : "false") << '\n';
    for (double t : w.taps()) os << format_number(t) << '\n';
}

Filter read_filter(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorCode::parse_error, "empty filter file");
    long long L = -1;
    bool doubly = false;
    for (const auto& [key, value] : header_fields(trim(line))) {
        if (key == "L") {
            L = static_cast<long long>(parse_double(value, "L"));
        } else if (key == "doubly_convolved") {
            if (value != "true" && value != "false") throw Error(ErrorCode::parse_error, "doubly_convolved must be a bool");
            doubly = value == "true";
        }
    }
    auto taps = read_values(is, "tap");
    if (L < 0 || taps.size() != static_cast<std::size_t>(2 * L + 1)) {
        throw Error(ErrorCode::parse_error, "tap count does not match L");
    }
    return Filter(std::move(taps), doubly);
}

void write_spectrum(std::ostream& os, const FilterSpectrum& spectrum, long long zero_bin) {
    os << "# period=" << spectrum.period << " zero_bin=" << zero_bin << '\n';
    for (double l : spectrum.eigenvalues) os << format_number(l) << '\n';
}

void write_grid(std::ostream& os, const C1Grid& grid) {
    os << "# axis=a";
    for (double a : grid.a_values) os << ' ' << format_number(a);
    os << "\n# axis=f";
    for (double f : grid.f_values) os << ' ' << format_number(f);
    os << "\n# meta";
    for (const auto& [key, value] : grid.metadata) os << ' ' << key << '=' << value;
    os << '\n';
    for (std::size_t i = 0; i < grid.a_values.size(); ++i) {
        for (std::size_t j = 0; j < grid.f_values.size(); ++j) {
            if (j) os << ',';
            os << format_number(grid.at(i, j));
        }
        os << '\n';
    }
}

C1Grid read_grid(std::istream& is) {
    C1Grid grid;
    std::string line;
    const auto axis = [&](const std::string& prefix, std::vector<double>& out) {
        if (!std::getline(is, line) || line.rfind(prefix, 0) != 0) {
            throw Error(ErrorCode::parse_error, "expected '" + prefix + "' header");
        }
        std::istringstream ss(line.substr(prefix.size()));
        std::string tok;
        while (ss >> tok) out.push_back(parse_double(tok, "axis value"));
    };
    axis("# axis=a", grid.a_values);
    axis("# axis=f", grid.f_values);
    if (!std::getline(is, line) || line.rfind("# meta", 0) != 0) throw Error(ErrorCode::parse_error, "expected meta header");
    {
        std::istringstream ss(line.substr(6));
        std::string tok;
        while (ss >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw Error(ErrorCode::parse_error, "malformed meta token");
            grid.metadata[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::size_t count = 0;
        while (std::getline(ss, tok, ',')) {
            grid.c1.push_back(parse_double(trim(tok), "c1 value"));
            ++count;
        }
        if (count != grid.f_values.size()) throw Error(ErrorCode::parse_error, "grid row has the wrong width");
    }
    if (grid.c1.size() != grid.a_values.size() * grid.f_values.size()) {
        throw Error(ErrorCode::parse_error, "grid has the wrong number of rows");
    }
    grid.cells.assign(grid.c1.size(), {});
    return grid;
}

void write_cells(std::ostream& os, const C1Grid& grid) {
    os << "a,f,c1,mask_length,mean_iterations,error\n";
    for (std::size_t i = 0; i < grid.a_values.size(); ++i) {
        for (std::size_t j = 0; j < grid.f_values.size(); ++j) {
            const auto& cell = grid.cells[i * grid.f_values.size() + j];
            std::string error = cell.error;
            for (char& c : error) {
                if (c == ',' || c == '\n') c = ' ';
            }
            os << format_number(grid.a_values[i]) << ',' << format_number(grid.f_values[j]) << ','
               << format_number(grid.at(i, j)) << ',' << cell.mask_length << ',' << format_number(cell.mean_iterations)
               << ',' << error << '\n';
        }
    }
}

void write_curve(std::ostream& os, const CriticalCurve& curve) {
    os << "e," << curve.exponent << '\n';
    for (const auto& [f, a] : curve.points) os << format_number(f) << ',' << format_number(a) << '\n';
}

}  // namespace iterfilt::io
