#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qpfix {

/// Exact rational scalar used for every distance, coefficient and bound.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q" or an integer, with optional leading sign.
/// Throws std::invalid_argument on anything else (including q = 0).
Rational parse_rational(std::string_view text);

/// Canonical form: reduced, positive denominator, integers without "/1".
std::string to_string(const Rational& value);

/// Dense row-major square matrix of rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    explicit RationalMatrix(std::size_t side, const Rational& fill = Rational(0))
        : side_(side), data_(side * side, fill) {}

    std::size_t side() const noexcept { return side_; }

    Rational& operator()(std::size_t row, std::size_t col) { return data_[row * side_ + col]; }
    const Rational& operator()(std::size_t row, std::size_t col) const {
        return data_[row * side_ + col];
    }

    RationalMatrix transposed() const;
    bool is_symmetric() const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t side_ = 0;
    std::vector<Rational> data_;
};

}  // namespace qpfix
