#include "hilbaut/pell.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <set>
#include <tuple>
#include <utility>

namespace hilbaut::pell {

namespace {

void require_radicand(const Int& d) {
    if (d < 2) throw DomainError("radicand must be >= 2, got " + to_string(d));
    if (is_square(d)) throw PerfectSquareError("radicand " + to_string(d) + " is a perfect square");
}

// Composition with a unit (z, w) of X^2 - d Y^2 = 1: multiplication by
// z + w sqrt(d) in Z[sqrt(d)].
std::pair<Int, Int> compose(const Int& x, const Int& y, const Int& z, const Int& w, const Int& d) {
    return {z * x + d * w * y, w * x + z * y};
}

// Sign of x + y sqrt(d), exact. Never zero for a solution of a nonzero RHS.
int real_sign(const Int& x, const Int& y, const Int& d) {
    if (x >= 0 && y >= 0) return (x == 0 && y == 0) ? 0 : 1;
    if (x <= 0 && y <= 0) return -1;
    if (x > 0) return x * x > d * y * y ? 1 : -1;  // y < 0
    return d * y * y > x * x ? 1 : -1;             // x < 0, y > 0
}

// First positive solution in the class of the given fundamental, walking
// forward through the resolvent orbit. Every class of a nonzero RHS contains
// positive solutions, reached within a couple of steps from the fundamental.
std::pair<Int, Int> first_positive(const PellSolution& fund, const PellSolution& res, const Int& d) {
    Int x = fund.x, y = fund.y;
    if (real_sign(x, y, d) < 0) {
        x = -x;
        y = -y;
    }
    for (int guard = 0; guard < 64; ++guard) {
        if (x > 0 && y > 0) return {x, y};
        std::tie(x, y) = compose(x, y, res.x, res.y, d);
    }
    throw ContractViolation("no positive solution reached in class of (" + to_string(fund.x) +
                            ", " + to_string(fund.y) + ") for d=" + to_string(d));
}

std::size_t orbit_cap(const Int& modulus) {
    if (const char* env = std::getenv("HILBAUT_MAX_ORBIT_ITERS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    Int cap = modulus * modulus;
    return cap.fits_ulong_p() ? static_cast<std::size_t>(cap.get_ui()) : ~std::size_t{0};
}

// floor((P + sqrt(d)) / Q), exact for either sign of Q. d non-square.
Int floor_quot(const Int& P, const Int& Q, const Int& d, const Int& sd) {
    if (Q > 0) return fdiv(P + sd, Q);
    auto below_sqrt = [&](const Int& c) { return c < 0 || c * c < d; };
    Int a = fdiv(P + sd, Q);
    while (below_sqrt(a * Q - P)) --a;          // a too big: a*Q < P + sqrt(d) fails for Q<0
    while (!below_sqrt((a + 1) * Q - P)) ++a;   // a+1 still admissible
    return a;
}

struct RawSolution {
    Int x, y;
};

// Candidates are ordered so that the first member of each class seen is its
// fundamental: ascending Y, positive X before negative on equal Y.
void dedupe_into_fundamentals(std::vector<RawSolution>& cands, const Int& d, const Int& n,
                              std::vector<PellSolution>& out) {
    std::sort(cands.begin(), cands.end(), [](const RawSolution& a, const RawSolution& b) {
        if (a.y != b.y) return a.y < b.y;
        return a.x > b.x;
    });
    for (const auto& c : cands) {
        bool fresh = true;
        for (const auto& f : out) {
            if (detail::same_class(c.x, c.y, f.x, f.y, d, n)) {
                fresh = false;
                break;
            }
        }
        if (fresh) out.emplace_back(c.x, c.y, d, n);
    }
}

constexpr unsigned long kScanLimit = 1u << 16;

}  // namespace

PellSolution::PellSolution(Int x_, Int y_, Int d_, Int n_rhs_)
    : x(std::move(x_)), y(std::move(y_)), d(std::move(d_)), n_rhs(std::move(n_rhs_)) {
    if (x * x - d * y * y != n_rhs)
        throw ContractViolation("(" + to_string(x) + ", " + to_string(y) + ") does not solve X^2 - " +
                                to_string(d) + " Y^2 = " + to_string(n_rhs));
}

TwoCoeffSolution::TwoCoeffSolution(Int x_, Int y_, Int s_, Int q_, Int n_rhs_)
    : x(std::move(x_)), y(std::move(y_)), s(std::move(s_)), q(std::move(q_)), n_rhs(std::move(n_rhs_)) {
    if (s * x * x - q * y * y != n_rhs)
        throw ContractViolation("(" + to_string(x) + ", " + to_string(y) + ") does not solve " +
                                to_string(s) + " X^2 - " + to_string(q) + " Y^2 = " + to_string(n_rhs));
}

SurdExpansion cf_sqrt(const Int& d) {
    require_radicand(d);
    Int a0 = isqrt_floor(d);
    SurdExpansion out{d, a0, {}};
    Int P = 0, Q = 1, a = a0;
    while (true) {
        P = a * Q - P;
        Q = (d - P * P) / Q;
        a = (P + a0) / Q;
        out.period_terms.push_back(a);
        if (Q == 1) break;  // the closing term, always 2*a0
    }
    return out;
}

PellSolution pell_minimal(const Int& d) {
    SurdExpansion e = cf_sqrt(d);
    // Convergent p_{l-1}/q_{l-1} over one period satisfies p^2 - d q^2 = (-1)^l.
    Int pm1 = 1, p = e.integer_part, qm1 = 0, q = 1;
    const std::size_t l = e.period_terms.size();
    for (std::size_t i = 0; i + 1 < l; ++i) {
        const Int& a = e.period_terms[i];
        Int pn = a * p + pm1, qn = a * q + qm1;
        pm1 = std::move(p);
        p = std::move(pn);
        qm1 = std::move(q);
        q = std::move(qn);
    }
    if (l % 2 == 0) return PellSolution(p, q, d, 1);
    return PellSolution(p * p + d * q * q, 2 * p * q, d, 1);
}

std::optional<PellSolution> pell_minimal_negative(const Int& d) {
    SurdExpansion e = cf_sqrt(d);
    const std::size_t l = e.period_terms.size();
    if (l % 2 == 0) return std::nullopt;  // even period: X^2 - d Y^2 = -1 unsolvable
    Int pm1 = 1, p = e.integer_part, qm1 = 0, q = 1;
    for (std::size_t i = 0; i + 1 < l; ++i) {
        const Int& a = e.period_terms[i];
        Int pn = a * p + pm1, qn = a * q + qm1;
        pm1 = std::move(p);
        p = std::move(pn);
        qm1 = std::move(q);
        q = std::move(qn);
    }
    return PellSolution(p, q, d, -1);
}

namespace detail {

bool same_class(const Int& x1, const Int& y1, const Int& x2, const Int& y2,
                const Int& d, const Int& n) {
    Int an = abs(n);
    return mod_nonneg(x1 * x2 - d * y1 * y2, an) == 0 && mod_nonneg(x1 * y2 - x2 * y1, an) == 0;
}

std::pair<Int, Int> canonical_fundamental(Int x, Int y, const Int& d, const Int& n,
                                          const Int& res_x, const Int& res_y) {
    if (y < 0) {
        x = -x;
        y = -y;
    }
    while (true) {
        Int xb = res_x * x - d * res_y * y;
        Int yb = res_x * y - res_y * x;
        if (yb < 0) {
            xb = -xb;
            yb = -yb;
        }
        if (yb < y) {
            x = std::move(xb);
            y = std::move(yb);
            continue;
        }
        Int xf = res_x * x + d * res_y * y;
        Int yf = res_y * x + res_x * y;
        if (yf < 0) {
            xf = -xf;
            yf = -yf;
        }
        if (yf < y) {
            x = std::move(xf);
            y = std::move(yf);
            continue;
        }
        break;
    }
    if (x < 0 && same_class(x, y, -x, y, d, n)) x = -x;
    return {x, y};
}

Int scan_bound(const Int& d, const Int& n_rhs, const Int& resolvent_x) {
    // Largest Y with 2 d Y^2 <= n (z-1) for n > 0, resp. <= |n| (z+1) for n < 0.
    Int rhs = n_rhs > 0 ? Int(n_rhs * (resolvent_x - 1)) : Int(-n_rhs * (resolvent_x + 1));
    Int b = isqrt_floor(rhs / (2 * d));
    while (2 * d * (b + 1) * (b + 1) <= rhs) ++b;
    while (b > 0 && 2 * d * b * b > rhs) --b;
    return b;
}

std::vector<PellSolution> fundamentals_by_scan(const Int& d, const Int& n_rhs,
                                               const PellSolution& resolvent) {
    Int bound = scan_bound(d, n_rhs, resolvent.x);
    std::vector<RawSolution> cands;
    for (Int y = 0; y <= bound; ++y) {
        Int xx = n_rhs + d * y * y;
        if (auto x = exact_sqrt(xx)) {
            cands.push_back({*x, y});
            if (*x != 0) cands.push_back({-*x, y});
        }
    }
    std::vector<PellSolution> out;
    dedupe_into_fundamentals(cands, d, n_rhs, out);
    return out;
}

std::vector<PellSolution> fundamentals_by_cf(const Int& d, const Int& n_rhs,
                                             const PellSolution& resolvent) {
    const Int sd = isqrt_floor(d);
    std::vector<RawSolution> found;
    for (Int f = 1; f * f <= abs(n_rhs); ++f) {
        if (mod_nonneg(n_rhs, f * f) != 0) continue;
        Int m = n_rhs / (f * f);
        Int am = abs(m);
        for (Int z0 = 0; z0 < am; ++z0) {
            if (mod_nonneg(z0 * z0 - d, am) != 0) continue;
            Int P = 2 * z0 <= am ? z0 : z0 - am;
            Int Q = am;
            // PQa with G_{-2} = -P0, G_{-1} = Q0, B_{-2} = 1, B_{-1} = 0.
            Int Gm2 = -P, Gm1 = Q, Bm2 = 1, Bm1 = 0;
            std::set<std::tuple<Int, Int, int>> seen;
            long i = 0;
            while (seen.insert({P, Q, static_cast<int>(i & 1)}).second) {
                Int a = floor_quot(P, Q, d, sd);
                Int G = a * Gm1 + Gm2;
                Int B = a * Bm1 + Bm2;
                Int Pn = a * Q - P;
                Int Qn = (d - Pn * Pn) / Q;
                ++i;
                // G_{i-1}^2 - d B_{i-1}^2 = (-1)^i Q_i Q_0
                Int val = (i % 2 == 0 ? Qn : -Qn) * am;
                if (val == m) found.push_back({f * G, f * B});
                Gm2 = std::move(Gm1);
                Gm1 = std::move(G);
                Bm2 = std::move(Bm1);
                Bm1 = std::move(B);
                P = std::move(Pn);
                Q = std::move(Qn);
            }
        }
    }
    std::vector<RawSolution> cands;
    for (auto& s : found) {
        auto [cx, cy] = canonical_fundamental(s.x, s.y, d, n_rhs, resolvent.x, resolvent.y);
        cands.push_back({std::move(cx), std::move(cy)});
    }
    std::vector<PellSolution> out;
    dedupe_into_fundamentals(cands, d, n_rhs, out);
    return out;
}

}  // namespace detail

FundamentalSet fundamental_solutions(const Int& d, const Int& n_rhs) {
    if (n_rhs == 0) throw DomainError("right-hand side must be nonzero");
    PellSolution res = pell_minimal(d);
    std::vector<PellSolution> fund = detail::scan_bound(d, n_rhs, res.x) <= kScanLimit
                                         ? detail::fundamentals_by_scan(d, n_rhs, res)
                                         : detail::fundamentals_by_cf(d, n_rhs, res);
    return FundamentalSet{d, n_rhs, std::move(fund), std::move(res)};
}

std::vector<PellSolution> generate_solutions(const FundamentalSet& set, std::size_t limit) {
    if (limit < 1) throw DomainError("limit must be >= 1");
    std::vector<PellSolution> all;
    for (const auto& f : set.fundamentals) {
        auto [x, y] = first_positive(f, set.resolvent, set.d);
        for (std::size_t k = 0; k < limit; ++k) {
            all.emplace_back(x, y, set.d, set.n_rhs);
            std::tie(x, y) = compose(x, y, set.resolvent.x, set.resolvent.y, set.d);
        }
    }
    std::sort(all.begin(), all.end(), [](const PellSolution& a, const PellSolution& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    if (all.size() > limit) all.erase(all.begin() + static_cast<std::ptrdiff_t>(limit), all.end());
    return all;
}

std::optional<PellSolution> minimal_congruent_solution(const Int& d, const Int& n_rhs,
                                                       const Int& modulus, const Int& residue) {
    if (n_rhs == 0) throw DomainError("right-hand side must be nonzero");
    if (modulus < 1 || residue < 0 || residue >= modulus)
        throw DomainError("need modulus >= 1 and 0 <= residue < modulus");
    FundamentalSet set = fundamental_solutions(d, n_rhs);
    const std::size_t cap = orbit_cap(modulus);
    std::optional<PellSolution> best;
    for (const auto& f : set.fundamentals) {
        auto [x, y] = first_positive(f, set.resolvent, set.d);
        std::set<std::pair<Int, Int>> seen;
        std::size_t iters = 0;
        while (true) {
            std::pair<Int, Int> state{mod_nonneg(x, modulus), mod_nonneg(y, modulus)};
            if (!seen.insert(state).second) break;  // residue orbit closed: class exhausted
            if (state.first == residue || state.first == mod_nonneg(modulus - residue, modulus)) {
                if (!best || x < best->x || (x == best->x && y < best->y))
                    best = PellSolution(x, y, d, n_rhs);
                break;  // later hits in this class have larger X
            }
            if (++iters >= cap) {
                std::cerr << "hilbaut: congruence orbit cap " << cap << " hit for d=" << d
                          << " N=" << n_rhs << " M=" << modulus << "; class skipped\n";
                break;
            }
            std::tie(x, y) = compose(x, y, set.resolvent.x, set.resolvent.y, set.d);
        }
    }
    return best;
}

std::optional<TwoCoeffSolution> solve_two_coeff(const Int& s, const Int& q, const Int& n_rhs) {
    if (s < 1 || q < 2) throw DomainError("need s >= 1 and q >= 2");
    Int d = s * q;
    if (is_square(d)) throw PerfectSquareError("s*q = " + to_string(d) + " is a perfect square");
    auto u = minimal_congruent_solution(d, s * n_rhs, s, 0);
    if (!u) return std::nullopt;
    return TwoCoeffSolution(u->x / s, u->y, s, q, n_rhs);
}

std::optional<Int> is_perfect_square(const Int& m) {
    if (m < 0) throw DomainError("negative input " + to_string(m));
    return exact_sqrt(m);
}

}  // namespace hilbaut::pell
