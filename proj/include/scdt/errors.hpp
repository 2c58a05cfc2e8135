#ifndef SCDT_ERRORS_HPP
#define SCDT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scdt {

// Base for all library errors. `code()` is a stable machine-readable tag
// used by the CLI when emitting error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct ZeroMassError : Error {
    explicit ZeroMassError(const std::string& m) : Error("zero_mass", m) {}
};

struct NonMonotoneWarpError : Error {
    explicit NonMonotoneWarpError(const std::string& m) : Error("non_monotone_warp", m) {}
};

struct NotADensityError : Error {
    explicit NotADensityError(const std::string& m) : Error("not_a_density", m) {}
};

struct DegenerateMapError : Error {
    explicit DegenerateMapError(const std::string& m) : Error("degenerate_map", m) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("domain_error", m) {}
};

struct ReferenceMismatchError : Error {
    explicit ReferenceMismatchError(const std::string& m) : Error("reference_mismatch", m) {}
};

struct PartMismatchError : Error {
    explicit PartMismatchError(const std::string& m) : Error("part_mismatch", m) {}
};

struct DegenerateDesignError : Error {
    explicit DegenerateDesignError(const std::string& m) : Error("degenerate_design", m) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error("config_error", m) {}
};

}  // namespace scdt

#endif  // SCDT_ERRORS_HPP
