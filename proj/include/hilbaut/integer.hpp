#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "hilbaut/errors.hpp"

namespace hilbaut {

// All arithmetic is exact. Pell fundamentals grow exponentially in sqrt(d),
// so fixed-width integers are never used for solution coordinates.
using Int = mpz_class;

inline Int isqrt_floor(const Int& m) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Smallest integer r with r*r >= m (m >= 0).
inline Int isqrt_ceil(const Int& m) {
    Int r = isqrt_floor(m);
    if (r * r < m) ++r;
    return r;
}

inline bool is_square(const Int& m) {
    return m >= 0 && mpz_perfect_square_p(m.get_mpz_t()) != 0;
}

inline std::optional<Int> exact_sqrt(const Int& m) {
    if (m < 0 || !is_square(m)) return std::nullopt;
    return isqrt_floor(m);
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Floor division (round toward -infinity), matching the continued-fraction
// recurrences which assume mathematical floor.
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_nonneg(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

}  // namespace hilbaut
