#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hilbaut/integer.hpp"

namespace hilbaut::pell {

// Periodic continued fraction of sqrt(d) for non-square d >= 2:
//   sqrt(d) = [integer_part; period_terms repeated].
// The last period term is always 2*integer_part.
struct SurdExpansion {
    Int d;
    Int integer_part;
    std::vector<Int> period_terms;
};

// One exact solution of X^2 - d Y^2 = n_rhs. The equation is checked on
// construction; a violating pair can never circulate.
struct PellSolution {
    Int x;
    Int y;
    Int d;
    Int n_rhs;

    PellSolution(Int x, Int y, Int d, Int n_rhs);
    bool positive() const { return x > 0 && y > 0; }
    bool operator==(const PellSolution& o) const { return x == o.x && y == o.y && d == o.d && n_rhs == o.n_rhs; }
};

// One exact solution of s X^2 - q Y^2 = n_rhs (s = 1 degenerates to the
// plain Pell form).
struct TwoCoeffSolution {
    Int x;
    Int y;
    Int s;
    Int q;
    Int n_rhs;

    TwoCoeffSolution(Int x, Int y, Int s, Int q, Int n_rhs);
    bool positive() const { return x > 0 && y > 0; }
    bool operator==(const TwoCoeffSolution& o) const { return x == o.x && y == o.y && s == o.s && q == o.q && n_rhs == o.n_rhs; }
};

// One representative per equivalence class of X^2 - d Y^2 = n_rhs: the
// solution with smallest non-negative Y in its class, positive X on ties.
// Empty `fundamentals` means the equation has no integer solutions.
struct FundamentalSet {
    Int d;
    Int n_rhs;
    std::vector<PellSolution> fundamentals;
    PellSolution resolvent;  // minimal positive solution of X^2 - d Y^2 = 1
};

SurdExpansion cf_sqrt(const Int& d);

// Minimal positive solution of X^2 - d Y^2 = 1, read off the convergents of
// cf_sqrt(d).
PellSolution pell_minimal(const Int& d);

// Minimal positive solution of X^2 - d Y^2 = -1; absent exactly when the
// continued-fraction period of sqrt(d) has even length.
std::optional<PellSolution> pell_minimal_negative(const Int& d);

FundamentalSet fundamental_solutions(const Int& d, const Int& n_rhs);

// First `limit` positive solutions across all classes, sorted by increasing
// X. Each is obtained by composing a fundamental with the resolvent.
std::vector<PellSolution> generate_solutions(const FundamentalSet& set, std::size_t limit);

// Minimal positive solution with X = +-residue (mod modulus), or absent.
// Per class, the orbit of (X mod M, Y mod M) under the resolvent is purely
// periodic, so the search over one cycle (capped at M^2 steps, overridable
// via HILBAUT_MAX_ORBIT_ITERS) is exhaustive.
std::optional<PellSolution> minimal_congruent_solution(const Int& d, const Int& n_rhs,
                                                       const Int& modulus, const Int& residue);

// Minimal positive solution of s X^2 - q Y^2 = n_rhs via the substitution
// U = sX into U^2 - (sq) Y^2 = s*n_rhs filtered on s | U.
std::optional<TwoCoeffSolution> solve_two_coeff(const Int& s, const Int& q, const Int& n_rhs);

std::optional<Int> is_perfect_square(const Int& m);

namespace detail {

// True when (x1,y1) and (x2,y2), both solving X^2 - d Y^2 = n, differ by a
// unit: (x1 x2 - d y1 y2)/n and (x1 y2 - x2 y1)/n are both integers.
bool same_class(const Int& x1, const Int& y1, const Int& x2, const Int& y2,
                const Int& d, const Int& n);

// Fundamental representative of the class of (x, y).
std::pair<Int, Int> canonical_fundamental(Int x, Int y, const Int& d, const Int& n,
                                          const Int& res_x, const Int& res_y);

// The two interchangeable search strategies behind fundamental_solutions,
// exposed so tests can cross-check them on the region where both run.
// Interval scan from the fundamental-solution bound (Y up to
// sqrt(n (z-1)/(2d)) for n > 0, sqrt(|n| (z+1)/(2d)) for n < 0).
std::vector<PellSolution> fundamentals_by_scan(const Int& d, const Int& n_rhs,
                                               const PellSolution& resolvent);
// Continued-fraction search (PQa on each square root of d modulo |m| over
// the square divisors of n_rhs); feasible even when the resolvent is huge.
std::vector<PellSolution> fundamentals_by_cf(const Int& d, const Int& n_rhs,
                                             const PellSolution& resolvent);

// Scan bound from the fundamental-solution interval, inclusive.
Int scan_bound(const Int& d, const Int& n_rhs, const Int& resolvent_x);

}  // namespace detail

}  // namespace hilbaut::pell
