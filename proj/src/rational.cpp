#include "qpfix/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qpfix {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                            : body.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) {
        throw std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
    }
    const boost::multiprecision::mpz_int n{std::string(num)};
    const boost::multiprecision::mpz_int d{std::string(den)};
    if (d == 0) {
        throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
    }
    Rational value(n, d);
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
    // mpq canonicalizes on construction; str() prints "p/q" or "p".
    return value.str();
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix out(side_);
    for (std::size_t i = 0; i < side_; ++i)
        for (std::size_t j = 0; j < side_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

bool RationalMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < side_; ++i)
        for (std::size_t j = i + 1; j < side_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

}  // namespace qpfix
