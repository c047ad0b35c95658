#pragma once

#include "qpfix/admissibility.hpp"
#include "qpfix/certifier.hpp"
#include "qpfix/space.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace qpfix::test {

inline Rational q(const char* text) { return parse_rational(text); }

inline RationalMatrix matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
    RationalMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const char* v : row) m(i, j++) = parse_rational(v);
        ++i;
    }
    return m;
}

/// Three-point example: D(a,b)=D(c,b)=1/5, D(b,c)=D(b,a)=D(c,a)=1/4, D(a,c)=1/2, K=2.
inline QPSpace p3() {
    return QPSpace({"a", "b", "c"},
                   matrix({{"0", "1/5", "1/2"}, {"1/4", "0", "1/4"}, {"1/4", "1/5", "0"}}),
                   Rational(2), {Completeness::left_complete});
}

/// Symmetric p, q, r with D(p,q)=1, D(q,r)=1/10, D(p,r)=3/2 and K=3/2.
inline QPSpace t3() {
    return QPSpace({"p", "q", "r"},
                   matrix({{"0", "1", "3/2"}, {"1", "0", "1/10"}, {"3/2", "1/10", "0"}}),
                   Rational(3, 2),
                   {Completeness::left_complete, Completeness::right_complete,
                    Completeness::bicomplete});
}

/// {u, v} with D(u,v) = 0 and D(v,u) = 1.
inline QPSpace asym2() {
    return QPSpace({"u", "v"}, matrix({{"0", "0"}, {"1", "0"}}), Rational(1));
}

inline SelfMap t3_f() { return SelfMap({1, 2, 2}); }     // p->q, q->r, r->r
inline SelfMap t3_swap() { return SelfMap({1, 0, 2}); }  // p->q, q->p, r->r

inline AdmissiblePair t3_pair() {
    return AdmissiblePair::constant(3, Rational(1), Rational(1, 10));
}

inline Problem t3_problem() { return Problem{t3(), t3_f(), t3_pair(), std::nullopt}; }

}  // namespace qpfix::test
