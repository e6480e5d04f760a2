#ifndef TSMR_ERRORS_HPP
#define TSMR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tsmr {

// Malformed input files or inconsistent data (exit code 2 in the CLI).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated operation precondition (exit code 2 in the CLI).
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Desk-scale enumeration cap exceeded (exit code 3 in the CLI).
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tsmr

#endif
