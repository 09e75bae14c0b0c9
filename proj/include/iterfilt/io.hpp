#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iterfilt/benchmark.hpp"
#include "iterfilt/filters.hpp"
#include "iterfilt/signal.hpp"

namespace iterfilt::io {

// Signal:   "# fs=<float> n=<float>" then one sample per line.
// Filter:   "# L=<int> doubly_convolved=<bool>" then one tap per line.
// Spectrum: "# period=<int> zero_bin=<int>" then one eigenvalue per line.
// All numbers are written with 17 significant digits.

void write_signal(std::ostream& os, const Signal& s);
Signal read_signal(std::istream& is);
void write_signal_file(const std::string& path, const Signal& s);
Signal read_signal_file(const std::string& path);

void write_filter(std::ostream& os, const Filter& w);
Filter read_filter(std::istream& is);

void write_spectrum(std::ostream& os, const FilterSpectrum& spectrum, long long zero_bin = -1);

// "# axis=a ...", "# axis=f ...", "# meta key=value ...", then one row of
// comma-separated c1 values per a value.
void write_grid(std::ostream& os, const C1Grid& grid);
C1Grid read_grid(std::istream& is);

// Per-cell diagnostics: a,f,c1,mask_length,mean_iterations,error.
void write_cells(std::ostream& os, const C1Grid& grid);

// "e,<exponent>" then "f,a" pairs.
void write_curve(std::ostream& os, const CriticalCurve& curve);

std::string format_number(double v);

}  // namespace iterfilt::io
