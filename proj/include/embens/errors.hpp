#ifndef EMBENS_ERRORS_HPP
#define EMBENS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace embens {

// Base class for everything thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be opened, read or written.
class io_error : public error {
public:
    explicit io_error(const std::string& msg) : error(msg) {}
};

// File exists but its contents violate the documented format.
// Messages carry a 1-based line number where applicable.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// Inputs are well-formed but semantically unusable
// (empty vocabulary intersection, out-of-vocabulary token, zero vector, ...).
class data_error : public error {
public:
    explicit data_error(const std::string& msg) : error(msg) {}
};

// Numerical solve cannot proceed (rank-deficient normal equations,
// zero-variance column, ...).
class solver_error : public error {
public:
    explicit solver_error(const std::string& msg) : error(msg) {}
};

// Invalid configuration or command-line usage.
class usage_error : public error {
public:
    explicit usage_error(const std::string& msg) : error(msg) {}
};

} // namespace embens

#endif
