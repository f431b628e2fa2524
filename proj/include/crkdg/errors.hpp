#ifndef CRKDG_ERRORS_HPP
#define CRKDG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crkdg {

// Invalid argument to a constructor or operation (bad degree, bad cell count, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Bad scenario / solver configuration (unknown scheme name, missing boundary tag, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A state left the admissible set (negative density/pressure, non-finite value).
class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(const std::string& msg, int cell_id = -1, int stage = -1)
        : std::runtime_error(msg), cell(cell_id), stage_index(stage) {}
    int cell;
    int stage_index;
};

// A numeric procedure failed (non-convergent iteration, non-finite sample).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg, int cell_id = -1)
        : std::runtime_error(msg), cell(cell_id) {}
    int cell;
};

// Request outside the validity domain of an oracle.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace crkdg

#endif
