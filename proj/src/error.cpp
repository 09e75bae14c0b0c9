#include "iterfilt/error.hpp"

namespace iterfilt {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_frequency: return "invalid-frequency";
        case ErrorCode::invalid_size: return "invalid-size";
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::order_too_large: return "order-too-large";
        case ErrorCode::pad_too_large: return "pad-too-large";
        case ErrorCode::invalid_length: return "invalid-length";
        case ErrorCode::filter_too_long: return "filter-too-long";
        case ErrorCode::complex_spectrum: return "complex-spectrum";
        case ErrorCode::no_spectral_minimum: return "no-spectral-minimum";
        case ErrorCode::negativity_violation: return "negativity-violation";
        case ErrorCode::non_convergent: return "non-convergent";
        case ErrorCode::degenerate_spectrum: return "degenerate-spectrum";
        case ErrorCode::too_few_extrema: return "too-few-extrema";
        case ErrorCode::unattainable_zero: return "unattainable-zero";
        case ErrorCode::mask_selection_failed: return "mask-selection-failed";
        case ErrorCode::zero_denominator: return "zero-denominator";
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::io_error: return "io-error";
    }
    return "unknown";
}

}  // namespace iterfilt
