#pragma once
#include <stdexcept>
#include <string>

namespace tds {

// Error taxonomy shared by all modules. Callers that must not abort a
// pipeline (e.g. the learners on budget blow-ups) catch these and convert
// them into Reject outcomes with diagnostics.
enum class ErrorCode {
    DegenerateInput,
    InsufficientData,
    BudgetExceeded,
    RegionTooThin,
    GenerationFailed,
    Infeasible,
    ConfigError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::RegionTooThin: return "RegionTooThin";
        case ErrorCode::GenerationFailed: return "GenerationFailed";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class TdsError : public std::runtime_error {
public:
    TdsError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

#define TDS_REQUIRE(cond, code, msg) \
    do { \
        if (!(cond)) throw ::tds::TdsError(code, msg); \
    } while (0)

} // namespace tds
