#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iterfilt {

enum class ErrorCode {
    invalid_frequency,
    invalid_size,
    invalid_argument,
    order_too_large,
    pad_too_large,
    invalid_length,
    filter_too_long,
    complex_spectrum,
    no_spectral_minimum,
    negativity_violation,
    non_convergent,
    degenerate_spectrum,
    too_few_extrema,
    unattainable_zero,
    mask_selection_failed,
    zero_denominator,
    parse_error,
    io_error,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers can branch on
// the kind without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace iterfilt
