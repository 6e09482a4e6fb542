#pragma once

#include <stdexcept>
#include <string>

namespace sqwg {

// Error categories map 1:1 onto CLI exit codes.
enum class ErrorCategory { config = 1, physics = 2, numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), category_(cat) {}
    [[nodiscard]] ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

struct BelowCutoff : Error {
    explicit BelowCutoff(const std::string& msg) : Error(ErrorCategory::physics, msg) {}
};

struct UnsupportedMode : Error {
    explicit UnsupportedMode(const std::string& msg) : Error(ErrorCategory::physics, msg) {}
};

struct CoincidentEmitters : Error {
    explicit CoincidentEmitters(const std::string& msg) : Error(ErrorCategory::physics, msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(ErrorCategory::config, msg) {}
};

struct DegenerateKernel : Error {
    explicit DegenerateKernel(const std::string& msg, int dim = 0)
        : Error(ErrorCategory::physics, msg), kernel_dim(dim) {}
    int kernel_dim;
};

struct NonPhysicalState : Error {
    explicit NonPhysicalState(const std::string& msg) : Error(ErrorCategory::physics, msg) {}
};

struct ZeroInitial : Error {
    explicit ZeroInitial(const std::string& msg) : Error(ErrorCategory::physics, msg) {}
};

struct NegativeRate : Error {
    explicit NegativeRate(const std::string& msg) : Error(ErrorCategory::numerical, msg) {}
};

struct ToleranceFailure : Error {
    explicit ToleranceFailure(const std::string& msg) : Error(ErrorCategory::numerical, msg) {}
};

struct HorizonTooShort : Error {
    explicit HorizonTooShort(const std::string& msg) : Error(ErrorCategory::numerical, msg) {}
};

struct ParseError : Error {
    ParseError(int line, const std::string& key, const std::string& msg)
        : Error(ErrorCategory::config,
                "line " + std::to_string(line) + (key.empty() ? "" : " key '" + key + "'") +
                    ": " + msg),
          line_number(line), key_name(key) {}
    int line_number;
    std::string key_name;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& key, const std::string& msg)
        : Error(ErrorCategory::config, "key '" + key + "': " + msg), key_name(key) {}
    std::string key_name;
};

} // namespace sqwg
