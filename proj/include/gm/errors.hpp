#ifndef GM_ERRORS_HPP
#define GM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gm {

/**
 * Bad caller input: out-of-range indices, malformed parameters, unsorted
 * sequences. The CLI maps this to exit code 2.
 */
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed edge-list file; carries the 1-based offending line.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/**
 * Numerical breakdown: eigensolver non-convergence, a bracket that fails its
 * sign check, homotopy step budget exhausted. The CLI maps this to exit code 3.
 */
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation of the secular function too close to one of its poles.
class PoleError : public NumericError {
public:
    PoleError(std::size_t factor, double lambda)
        : NumericError("secular function evaluated at pole of factor " + std::to_string(factor + 1) +
                       " (lambda = " + std::to_string(lambda) + ")"),
          factor_(factor) {}

    /// 0-based index l of the vanishing quadratic factor.
    std::size_t factor() const noexcept { return factor_; }

private:
    std::size_t factor_;
};

}  // namespace gm

#endif
