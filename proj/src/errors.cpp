#include "intravol/errors.hpp"

namespace intravol {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_config: return "InvalidConfig";
        case ErrorCode::io_error: return "IoError";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::unordered_timestamps: return "UnorderedTimestamps";
        case ErrorCode::empty_input: return "EmptyInput";
        case ErrorCode::too_short: return "TooShort";
        case ErrorCode::non_positive_price: return "NonPositivePrice";
        case ErrorCode::no_price_before_open: return "NoPriceBeforeOpen";
        case ErrorCode::empty_day: return "EmptyDay";
        case ErrorCode::singular_lambda: return "SingularLambda";
        case ErrorCode::degenerate_day: return "DegenerateDay";
        case ErrorCode::insufficient_history: return "InsufficientHistory";
        case ErrorCode::rank_deficient: return "RankDeficient";
        case ErrorCode::too_few_rows: return "TooFewRows";
        case ErrorCode::alignment_error: return "AlignmentError";
        case ErrorCode::series_too_short: return "SeriesTooShort";
        case ErrorCode::invalid_spec: return "InvalidSpec";
    }
    return "UnknownError";
}

} // namespace intravol
