#ifndef APPINT_ERRORS_HPP
#define APPINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace appint {

/// Common base for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroArgument : Error {
    explicit ZeroArgument(const std::string& msg) : Error(msg) {}
};

struct ZeroPolynomial : Error {
    explicit ZeroPolynomial(const std::string& msg) : Error(msg) {}
};

struct DegreeZero : Error {
    explicit DegreeZero(const std::string& msg) : Error(msg) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& msg) : Error(msg) {}
};

struct DuplicateNode : Error {
    explicit DuplicateNode(const std::string& msg) : Error(msg) {}
};

struct CommonRoot : Error {
    explicit CommonRoot(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
    DomainError(const std::string& msg, int level) : Error(msg), level(level) {}
    int level = -1;
};

struct PoleAtMinusOne : Error {
    explicit PoleAtMinusOne(const std::string& msg) : Error(msg) {}
};

struct ResidualTooLarge : Error {
    explicit ResidualTooLarge(const std::string& msg) : Error(msg) {}
};

struct SelectionOutOfRange : Error {
    SelectionOutOfRange(const std::string& msg, int level) : Error(msg), level(level) {}
    int level;
};

struct SolverDisagreement : Error {
    SolverDisagreement(const std::string& msg, int level) : Error(msg), level(level) {}
    int level;
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

} // namespace appint

#endif
