#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hilbaut/ns_lattice.hpp"
#include "hilbaut/pell.hpp"

namespace hilbaut::cones {

// The trichotomy for the second extremal ray of the movable cone:
// t(n-1) square / (n-1)X^2 - tY^2 = 1 solvable / congruence-constrained Pell.
enum class MovableCase { Square, TwoCoeff, CongruentPell };

struct ConeDescription {
    NSClass ray_low;   // always (1, 0), the ray through h
    NSClass ray_high;  // primitive second extremal ray
    MovableCase case_tag;

    bool operator==(const ConeDescription& o) const {
        return ray_low == o.ray_low && ray_high == o.ray_high && case_tag == o.case_tag;
    }
};

// A wall theta(v^perp ∩ a^perp) strictly inside the movable cone, indexed by
// the Mukai square 2*rho and pairing alpha of the class a that induces it.
struct FloppingWall {
    long rho;
    long alpha;
    pell::PellSolution witness;  // minimal congruent solution of the wall equation
    NSClass ray;

    bool operator==(const FloppingWall& o) const {
        return rho == o.rho && alpha == o.alpha && witness == o.witness && ray == o.ray;
    }
};

// -1 / 0 / +1 as slope(a) = a.y/a.x compares to slope(b); both x > 0.
int compare_slope(const NSClass& a, const NSClass& b);

ConeDescription movable_cone(const Params& p);

// (rho, alpha) pairs whose wall equations must be examined, in lexicographic
// order: rho = -1 with 1 <= alpha <= n-1; rho = 0 with 3 <= alpha <= n-1;
// 1 <= rho < (n-1)/4 with max(4rho+1, ceil(2 sqrt(rho(n-1)))) <= alpha <= n-1.
std::vector<std::pair<long, long>> wall_candidates(const Params& p);

// Flopping walls strictly inside the movable cone, deduplicated by ray and
// sorted by increasing slope. Total: a square radicand is handled by divisor
// enumeration instead of the Pell orbit.
std::vector<FloppingWall> flopping_walls(const Params& p);

// Movable cone truncated at the minimal-slope interior wall (equal to the
// movable cone when there is none).
ConeDescription nef_cone(const Params& p);

// Minimal positive solution of X^2 - t(n-1) Y^2 = 1 with X = +-1 (mod n-1);
// absent when t(n-1) is a square.
std::optional<pell::PellSolution> movable_congruent_zw(const Params& p);

// Minimal positive solution of X^2 - D Y^2 = N with X = +-c (mod M), total in
// D: divisor enumeration of (X - sY)(X + sY) = N when D = s^2.
std::optional<pell::PellSolution> congruent_minimal_total(const Int& D, const Int& N,
                                                          const Int& M, const Int& c);

// Minimal positive solution of s X^2 - q Y^2 = rhs, total in s*q.
std::optional<pell::TwoCoeffSolution> two_coeff_minimal_total(const Int& s, const Int& q,
                                                              const Int& rhs);

// Direct-scan evaluation of the sub-threshold wall test for one candidate:
// some Y with 1 <= Y <= sqrt((z-1) m / (8t(n-1))) makes 4t(n-1)Y^2 + m a
// perfect square with root = +-alpha (mod 2(n-1)). Valid as an evaluation of
// the wall condition when (z, w/2) is the minimal solution of the doubled
// Pell equation, which holds whenever an involution candidate survives the
// negative-Pell condition. Returns nullopt when the interval is too long to
// walk (the scan length grows with z); the orbit method stays authoritative.
std::optional<bool> subthreshold_wall_scan(const Params& p, long rho, long alpha, const Int& z);

}  // namespace hilbaut::cones
