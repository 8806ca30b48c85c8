#pragma once

#include <vector>

#include "hilbaut/integer.hpp"
#include "hilbaut/pell.hpp"

namespace hilbaut {

// The pair (n, t) defining S^[n] for a K3 surface of degree 2t. Everything
// downstream is a function of it.
struct Params {
    long n;
    long t;

    Params(long n_, long t_) : n(n_), t(t_) {
        if (n < 2) throw DomainError("n must be >= 2");
        if (t < 1) throw DomainError("t must be >= 1");
    }
};

// The class x*h - y*delta in the rank-2 Neron-Severi lattice, basis {h, -delta}.
struct NSClass {
    Int x;
    Int y;

    bool is_primitive() const { return gcd(abs(x), abs(y)) == 1; }
    NSClass primitive() const;
    bool operator==(const NSClass& o) const { return x == o.x && y == o.y; }
};

// The rank/middle/degree-4 components of an algebraic Mukai vector
// (r, d_h * H, s).
struct MukaiVector {
    Int r;
    Int d_h;
    Int s;

    bool operator==(const MukaiVector& o) const { return r == o.r && d_h == o.d_h && s == o.s; }
};

// Beauville-Bogomolov-Fujiki square: 2t x^2 - 2(n-1) y^2.
Int bbf_square(const NSClass& c, const Params& p);

// BBF pairing of two classes, diag(2t, -2(n-1)) in the basis {h, -delta}.
Int bbf_pairing(const NSClass& a, const NSClass& b, const Params& p);

// Divisibility of x*h - y*delta in the full lattice H^2(S^[n], Z):
// gcd(|x|, 2(n-1)|y|). The pairing ideal is generated by the pairings with
// e_2 and with the generator of the <-2(n-1)> summand, which are x and
// 2(n-1)y under the embedding h -> e_1 + t e_2, -delta -> g.
Int divisibility(const NSClass& c, const Params& p);

// Mukai vectors with square 2*rho and pairing alpha against v = (1,0,1-n),
// built from a solution of X^2 - 4t(n-1) Y^2 = alpha^2 - 4 rho (n-1) with
// X >= 0. Zero, one or two vectors depending on which of the divisibility
// conditions 2(n-1) | X + alpha, 2(n-1) | X - alpha hold.
std::vector<MukaiVector> mukai_from_pell(const Params& p, const Int& rho, const Int& alpha,
                                         const pell::PellSolution& sol);

Int mukai_square(const MukaiVector& a, const Params& p);
Int mukai_pairing_with_v(const MukaiVector& a, const Params& p);

// Primitive generator of the ray through (X, 2tY) for a wall solution.
NSClass wall_ray_from_solution(const pell::PellSolution& sol, const Params& p);

}  // namespace hilbaut
