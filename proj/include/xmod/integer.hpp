#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "xmod/error.hpp"

namespace xmod {

// Arbitrary-precision integer used for exponents, cochain values and matrices.
using Int = mpz_class;

inline std::string to_string(const Int& v) { return v.get_str(); }

inline Int parse_int(std::string_view text) {
    Int out;
    std::string s(text);
    if (s.empty() || out.set_str(s, 10) != 0)
        throw ParseError("", "not an integer: '" + s + "'");
    return out;
}

// Floor-mod into [0, m) for m > 0.
inline Int floor_mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline int sign_of(const Int& v) { return sgn(v); }

} // namespace xmod
