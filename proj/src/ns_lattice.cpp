#include "hilbaut/ns_lattice.hpp"

namespace hilbaut {

NSClass NSClass::primitive() const {
    Int g = gcd(abs(x), abs(y));
    if (g == 0) throw DomainError("zero class has no primitive representative");
    return NSClass{x / g, y / g};
}

Int bbf_square(const NSClass& c, const Params& p) {
    return 2 * p.t * c.x * c.x - 2 * (p.n - 1) * c.y * c.y;
}

Int bbf_pairing(const NSClass& a, const NSClass& b, const Params& p) {
    return 2 * p.t * a.x * b.x - 2 * (p.n - 1) * a.y * b.y;
}

Int divisibility(const NSClass& c, const Params& p) {
    if (c.x == 0 && c.y == 0) throw DomainError("divisibility of the zero class is undefined");
    return gcd(abs(c.x), 2 * (p.n - 1) * abs(c.y));
}

Int mukai_square(const MukaiVector& a, const Params& p) {
    return 2 * p.t * a.d_h * a.d_h - 2 * a.r * a.s;
}

Int mukai_pairing_with_v(const MukaiVector& a, const Params& p) {
    // v = (1, 0, 1-n): ((r,l,s),(r',l',s')) = l.l' - r s' - r' s
    return -a.s - a.r * (1 - p.n);
}

std::vector<MukaiVector> mukai_from_pell(const Params& p, const Int& rho, const Int& alpha,
                                         const pell::PellSolution& sol) {
    const Int m = alpha * alpha - 4 * rho * (p.n - 1);
    if (sol.d != 4 * p.t * (p.n - 1) || sol.n_rhs != m || sol.x < 0)
        throw DomainError("solution does not match X^2 - 4t(n-1)Y^2 = alpha^2 - 4rho(n-1) with X >= 0");
    const Int two_n1 = 2 * (p.n - 1);
    std::vector<MukaiVector> out;
    auto emit = [&](MukaiVector v) {
        if (mukai_square(v, p) != 2 * rho || mukai_pairing_with_v(v, p) != alpha)
            throw ContractViolation("Mukai vector fails its pairing identities");
        out.push_back(std::move(v));
    };
    if (mod_nonneg(sol.x + alpha, two_n1) == 0)
        emit(MukaiVector{(sol.x + alpha) / two_n1, -sol.y, (sol.x - alpha) / 2});
    if (mod_nonneg(sol.x - alpha, two_n1) == 0)
        emit(MukaiVector{-(sol.x - alpha) / two_n1, sol.y, -(sol.x + alpha) / 2});
    return out;
}

NSClass wall_ray_from_solution(const pell::PellSolution& sol, const Params& p) {
    if (sol.x <= 0 || sol.y < 0)
        throw DomainError("wall ray needs X > 0 and Y >= 0");
    return NSClass{sol.x, 2 * p.t * sol.y}.primitive();
}

}  // namespace hilbaut
