#include "hilbaut/cones.hpp"

#include <algorithm>
#include <cmath>

namespace hilbaut::cones {

namespace {

// Minimal positive (X, Y) with X = +-c (mod M) solving X^2 - s^2 Y^2 = N via
// (X - sY)(X + sY) = N. Factorizations d1 * d2 = N with d1 < d2 and
// d1 + d2 > 0 are exactly the positive solutions; N = 0 never reaches here.
std::optional<pell::PellSolution> square_radicand_minimal(const Int& s, const Int& N,
                                                          const Int& M, const Int& c) {
    std::optional<pell::PellSolution> best;
    const Int aN = abs(N);
    for (Int e = 1; e * e < aN; ++e) {
        if (mod_nonneg(aN, e) != 0) continue;
        Int d1 = N > 0 ? Int(e) : Int(-e);
        Int d2 = aN / e;
        if (mod_nonneg(d1 + d2, 2) != 0) continue;
        if (mod_nonneg(d2 - d1, 2 * s) != 0) continue;
        Int x = (d1 + d2) / 2;
        Int y = (d2 - d1) / (2 * s);
        if (mod_nonneg(x - c, M) != 0 && mod_nonneg(x + c, M) != 0) continue;
        if (!best || x < best->x) best = pell::PellSolution(x, y, s * s, N);
    }
    return best;
}

// Exact integer square root test in 128-bit arithmetic; the long-double
// estimate is off by at most a few ulps and the fixup loops settle it.
bool is_square_u128(unsigned __int128 v, unsigned long long& root) {
    auto r = static_cast<unsigned long long>(sqrtl(static_cast<long double>(v)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > v) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= v) ++r;
    root = r;
    return static_cast<unsigned __int128>(r) * r == v;
}

// Dense walk over Y with word-sized values: D y^2 + m stays below 2^120.
bool scan_fast(unsigned long long D, unsigned long long m, unsigned long long M,
               unsigned long long alpha, unsigned long long bound) {
    for (unsigned long long y = 1; y <= bound; ++y) {
        unsigned __int128 v = static_cast<unsigned __int128>(D) * y * y + m;
        unsigned long long r;
        if (!is_square_u128(v, r)) continue;
        if ((r + alpha) % M == 0 || (r % M + M - alpha % M) % M == 0) return true;
    }
    return false;
}

}  // namespace

int compare_slope(const NSClass& a, const NSClass& b) {
    if (a.x <= 0 || b.x <= 0) throw DomainError("slope comparison needs positive x coordinates");
    Int lhs = a.y * b.x;
    Int rhs = b.y * a.x;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

std::optional<pell::PellSolution> congruent_minimal_total(const Int& D, const Int& N,
                                                          const Int& M, const Int& c) {
    if (auto s = exact_sqrt(D)) return square_radicand_minimal(*s, N, M, c);
    return pell::minimal_congruent_solution(D, N, M, c);
}

std::optional<pell::TwoCoeffSolution> two_coeff_minimal_total(const Int& s, const Int& q,
                                                              const Int& rhs) {
    if (s < 1 || q < 1) throw DomainError("need s >= 1 and q >= 1");
    auto u = congruent_minimal_total(s * q, s * rhs, s, 0);
    if (!u) return std::nullopt;
    return pell::TwoCoeffSolution(u->x / s, u->y, s, q, rhs);
}

std::optional<pell::PellSolution> movable_congruent_zw(const Params& p) {
    Int d = Int(p.t) * (p.n - 1);
    if (is_square(d)) return std::nullopt;
    return pell::minimal_congruent_solution(d, 1, p.n - 1, mod_nonneg(1, p.n - 1));
}

ConeDescription movable_cone(const Params& p) {
    const NSClass h{1, 0};
    Int d = Int(p.t) * (p.n - 1);
    if (auto c = exact_sqrt(d))
        return ConeDescription{h, NSClass{p.n - 1, *c}.primitive(), MovableCase::Square};
    if (auto zw = two_coeff_minimal_total(p.n - 1, p.t, 1))
        return ConeDescription{h, NSClass{(p.n - 1) * zw->x, p.t * zw->y}.primitive(),
                               MovableCase::TwoCoeff};
    auto zw = movable_congruent_zw(p);
    if (!zw) throw ContractViolation("congruent Pell solution must exist for non-square t(n-1)");
    return ConeDescription{h, NSClass{zw->x, p.t * zw->y}.primitive(), MovableCase::CongruentPell};
}

std::vector<std::pair<long, long>> wall_candidates(const Params& p) {
    std::vector<std::pair<long, long>> out;
    for (long alpha = 1; alpha <= p.n - 1; ++alpha) out.emplace_back(-1, alpha);
    for (long alpha = 3; alpha <= p.n - 1; ++alpha) out.emplace_back(0, alpha);
    for (long rho = 1; 4 * rho < p.n - 1; ++rho) {
        Int lo_sqrt = isqrt_ceil(Int(4) * rho * (p.n - 1));  // ceil(2 sqrt(rho(n-1)))
        long lo = std::max(4 * rho + 1, static_cast<long>(lo_sqrt.get_si()));
        for (long alpha = lo; alpha <= p.n - 1; ++alpha) out.emplace_back(rho, alpha);
    }
    return out;
}

std::vector<FloppingWall> flopping_walls(const Params& p) {
    const ConeDescription mov = movable_cone(p);
    const Int D = Int(4) * p.t * (p.n - 1);
    const Int M = 2 * (p.n - 1);
    std::vector<FloppingWall> walls;
    for (auto [rho, alpha] : wall_candidates(p)) {
        Int m = Int(alpha) * alpha - Int(4) * rho * (p.n - 1);
        if (m <= 0) continue;  // slope can never undercut the movable boundary
        auto sol = congruent_minimal_total(D, m, M, Int(alpha) % M);
        if (!sol) continue;
        NSClass ray = wall_ray_from_solution(*sol, p);
        if (compare_slope(ray, mov.ray_high) < 0)
            walls.push_back(FloppingWall{rho, alpha, std::move(*sol), std::move(ray)});
    }
    std::stable_sort(walls.begin(), walls.end(), [](const FloppingWall& a, const FloppingWall& b) {
        return compare_slope(a.ray, b.ray) < 0;
    });
    walls.erase(std::unique(walls.begin(), walls.end(),
                            [](const FloppingWall& a, const FloppingWall& b) { return a.ray == b.ray; }),
                walls.end());
    return walls;
}

ConeDescription nef_cone(const Params& p) {
    ConeDescription mov = movable_cone(p);
    auto walls = flopping_walls(p);
    if (walls.empty()) return mov;
    return ConeDescription{mov.ray_low, walls.front().ray, mov.case_tag};
}

std::optional<bool> subthreshold_wall_scan(const Params& p, long rho, long alpha, const Int& z) {
    Int m = Int(alpha) * alpha - Int(4) * rho * (p.n - 1);
    if (m <= 0) return false;
    const Int D = Int(4) * p.t * (p.n - 1);
    const Int M = 2 * (p.n - 1);
    Int bound = isqrt_floor((z - 1) * m / (2 * D));
    while ((bound + 1) * (bound + 1) * 2 * D <= (z - 1) * m) ++bound;
    while (bound > 0 && bound * bound * 2 * D > (z - 1) * m) --bound;
    if (bound > (1L << 31)) return std::nullopt;
    if (D <= (1L << 40) && bound.fits_ulong_p())
        return scan_fast(D.get_ui(), m.get_ui(), M.get_ui(), static_cast<unsigned long long>(alpha),
                         bound.get_ui());
    for (Int y = 1; y <= bound; ++y) {
        if (auto x = exact_sqrt(D * y * y + m)) {
            if (mod_nonneg(*x - alpha, M) == 0 || mod_nonneg(*x + alpha, M) == 0) return true;
        }
    }
    return false;
}

}  // namespace hilbaut::cones
