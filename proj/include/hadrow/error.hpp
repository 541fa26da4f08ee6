#ifndef HADROW_ERROR_HPP_
#define HADROW_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hadrow {

/// Failure categories raised by the library. Each maps to one documented
/// error path so callers (and the CLI exit-code mapping) can tell them apart.
enum class Errc {
    index_out_of_range,
    invalid_order,
    overflow_order,
    oracle_order_too_large,
    invalid_length,
    invalid_sign,
    inexact_inverse,
    dimension_mismatch,
    duplicate_index,
    inconsistent_length,
    unsorted_indices,
    bad_magic,
    unsupported_version,
    truncated_stream,
    malformed_header,
    pbm_odd_order,
    parse_error,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace hadrow

#endif  // HADROW_ERROR_HPP_
