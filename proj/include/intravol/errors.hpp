#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace intravol {

enum class ErrorCode {
    invalid_config,
    io_error,
    parse_error,
    unordered_timestamps,
    empty_input,
    too_short,
    non_positive_price,
    no_price_before_open,
    empty_day,
    singular_lambda,
    degenerate_day,
    insufficient_history,
    rank_deficient,
    too_few_rows,
    alignment_error,
    series_too_short,
    invalid_spec,
};

std::string_view error_code_name(ErrorCode code);

/// Library-wide exception carrying a typed error code plus context.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace intravol
