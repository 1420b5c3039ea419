#pragma once

/*
 * Error taxonomy shared by all modules. Every failure mode named in the
 * library contracts is a distinct type so callers can dispatch on it.
 */

#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace schemelab {

struct SchemeLabError : std::runtime_error {
    explicit SchemeLabError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct SingularMatrix : SchemeLabError { using SchemeLabError::SchemeLabError; };

/* Characteristic polynomial has an irrational root; carries the unfactored residual. */
struct IrrationalSpectrum : SchemeLabError {
    std::vector<Rational> residual;  // coefficients, index = degree
    IrrationalSpectrum(const std::string& what, std::vector<Rational> res)
        : SchemeLabError(what), residual(std::move(res)) {}
};

struct ZeroLeadEntry : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct RepeatedEigenvalue : SchemeLabError { using SchemeLabError::SchemeLabError; };

struct NotAScheme : SchemeLabError {
    std::size_t i = 0, j = 0;          // first offending relation pair
    std::size_t x1 = 0, y1 = 0, x2 = 0, y2 = 0;  // two cells where the count differs
    NotAScheme(const std::string& what, std::size_t i_, std::size_t j_,
               std::size_t x1_, std::size_t y1_, std::size_t x2_, std::size_t y2_)
        : SchemeLabError(what), i(i_), j(j_), x1(x1_), y1(y1_), x2(x2_), y2(y2_) {}
    explicit NotAScheme(const std::string& what) : SchemeLabError(what) {}
};

struct UnsupportedDimension : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct NoCutoffFound : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct NotASymmetricDesign : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct NotAnSRGSpectrum : SchemeLabError { using SchemeLabError::SchemeLabError; };

struct FormSetUnavailable : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct NotRegular : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct SymbolMismatch : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct NotPrimePower : SchemeLabError { using SchemeLabError::SchemeLabError; };

struct NegativeCoefficient : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct GuardViolated : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct NotMub : SchemeLabError {
    Rational beta1, beta2;  // the two unequal magnitudes
    NotMub(const std::string& what, Rational b1, Rational b2)
        : SchemeLabError(what), beta1(std::move(b1)), beta2(std::move(b2)) {}
};
struct PreconditionFailed : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct NonIntegralParameter : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct EmptyGraph : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct NotClosed : SchemeLabError { using SchemeLabError::SchemeLabError; };

struct DomainViolation : SchemeLabError { using SchemeLabError::SchemeLabError; };
struct ParseError : SchemeLabError {
    std::size_t line = 0, column = 0;
    explicit ParseError(const std::string& what, std::size_t l = 0, std::size_t c = 0)
        : SchemeLabError(what), line(l), column(c) {}
};

}  // namespace schemelab
