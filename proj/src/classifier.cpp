#include "hilbaut/classifier.hpp"

#include <utility>

namespace hilbaut::aut {

namespace {

std::string at(const Params& p) {
    return " at n=" + std::to_string(p.n) + ", t=" + std::to_string(p.t);
}

// Condition (iii) via the direct interval scan over every candidate; nullopt
// when some candidate's interval is too long to walk.
std::optional<bool> cond_iii_by_scan(const Params& p, const Int& z) {
    bool all_known = true;
    for (auto [rho, alpha] : cones::wall_candidates(p)) {
        auto hit = cones::subthreshold_wall_scan(p, rho, alpha, z);
        if (!hit.has_value()) {
            all_known = false;
            continue;
        }
        if (*hit) return false;
    }
    if (!all_known) return std::nullopt;
    return true;
}

InvolutionData build_involution(const Params& p, const ConditionReport& c) {
    auto zw = cones::movable_congruent_zw(p);
    if (!zw) throw ContractViolation("missing congruent Pell pair" + at(p));
    const Int z = zw->x;
    const Int w = zw->y;
    if (mod_nonneg(w, 2) != 0) throw ContractViolation("w = " + to_string(w) + " must be even" + at(p));
    auto [nu, square, div] = invariant_generator(p, c.iv_branch, *c.iv_witness);

    InvolutionData inv;
    inv.z = z;
    inv.w = w;
    inv.matrix = {{{z, -(p.n - 1) * w}, {Int(p.t) * w, -z}}};
    inv.nu = std::move(nu);
    inv.nu_square = std::move(square);
    inv.nu_divisibility = std::move(div);
    inv.branch = c.iv_branch;

    // Discriminant action and invariant square must tell the same story.
    int sign = discriminant_action(z, p);
    if ((sign == -1) != (inv.nu_square == 2))
        throw ContractViolation("discriminant sign disagrees with invariant square" + at(p));
    // The matrix must fix the generator it was derived from.
    Int fx = inv.matrix[0][0] * inv.nu.x + inv.matrix[0][1] * inv.nu.y;
    Int fy = inv.matrix[1][0] * inv.nu.x + inv.matrix[1][1] * inv.nu.y;
    if (fx != inv.nu.x || fy != inv.nu.y)
        throw ContractViolation("involution matrix does not fix nu" + at(p));
    return inv;
}

}  // namespace

ConditionReport check_conditions(const Params& p) {
    if (p.t < 2) throw DomainError("conditions are defined for t >= 2");
    ConditionReport rep;
    const Int d = Int(p.t) * (p.n - 1);

    rep.square_root = exact_sqrt(d);
    rep.cond_i = !rep.square_root.has_value();

    if (p.n == 2) {
        rep.cond_ii = true;  // vacuous
    } else {
        rep.solvable_ii_witness = cones::two_coeff_minimal_total(p.n - 1, p.t, 1);
        rep.cond_ii = !rep.solvable_ii_witness.has_value();
    }

    auto walls = cones::flopping_walls(p);
    rep.cond_iii = walls.empty();
    if (!walls.empty()) rep.wall_witness = std::move(walls.front());

    auto first = cones::two_coeff_minimal_total(p.n - 1, p.t, -1);
    if (p.n == 2) {
        rep.iv_branch = first ? IvBranch::FirstEquation : IvBranch::Neither;
        rep.iv_witness = std::move(first);
    } else {
        auto second = cones::two_coeff_minimal_total(1, d, -1);
        if (first && second)
            throw ContractViolation("both negative Pell branches solvable" + at(p));
        if (first) {
            rep.iv_branch = IvBranch::FirstEquation;
            rep.iv_witness = std::move(first);
        } else if (second) {
            rep.iv_branch = IvBranch::SecondEquation;
            rep.iv_witness = std::move(second);
        }
    }
    return rep;
}

std::tuple<NSClass, Int, Int> invariant_generator(const Params& p, IvBranch branch,
                                                  const pell::TwoCoeffSolution& witness) {
    if (branch == IvBranch::Neither) throw DomainError("no invariant generator without a branch");
    const Int d = Int(p.t) * (p.n - 1);
    NSClass nu;
    Int expected_square;
    if (branch == IvBranch::FirstEquation) {
        if (witness.s != p.n - 1 || witness.q != p.t || witness.n_rhs != -1)
            throw DomainError("witness does not solve (n-1)X^2 - tY^2 = -1");
        nu = NSClass{witness.y, witness.x};
        expected_square = 2;
    } else {
        if (witness.s != 1 || witness.q != d || witness.n_rhs != -1)
            throw DomainError("witness does not solve X^2 - t(n-1)Y^2 = -1");
        nu = NSClass{(p.n - 1) * witness.y, witness.x};
        expected_square = 2 * (p.n - 1);
    }

    if (!nu.is_primitive()) throw ContractViolation("invariant generator not primitive" + at(p));
    Int square = bbf_square(nu, p);
    if (square != expected_square)
        throw ContractViolation("invariant square " + to_string(square) + " != expected " +
                                to_string(expected_square) + at(p));
    Int div = divisibility(nu, p);
    if (branch == IvBranch::SecondEquation && div != p.n - 1)
        throw ContractViolation("divisibility " + to_string(div) + " != n-1" + at(p));

    // Ampleness: z a - t w b = -a < 0 with nu = b h - a delta, per the
    // congruent Pell pair of the movable cone.
    auto zw = cones::movable_congruent_zw(p);
    if (!zw || zw->x * nu.y - Int(p.t) * zw->y * nu.x >= 0 || nu.y <= 0)
        throw ContractViolation("invariant generator is not ample" + at(p));
    return {std::move(nu), std::move(square), std::move(div)};
}

int discriminant_action(const Int& z, const Params& p) {
    const Int m = 2 * (p.n - 1);
    bool minus = mod_nonneg(z - 1, m) == 0;
    bool plus = mod_nonneg(z + 1, m) == 0;
    if (minus && plus && p.n != 2)
        throw ContractViolation("z = +-1 simultaneously with n > 2");
    if (minus) return -1;  // for n = 2 both hold; -1 by convention
    if (plus) return 1;
    throw ContractViolation("z = " + to_string(z) + " is not +-1 mod 2(n-1)" + at(p));
}

bool minus_one_qr(const Int& m) {
    if (m < 1) throw DomainError("modulus must be >= 1");
    for (Int x = 0; x < m; ++x)
        if (mod_nonneg(x * x + 1, m) == 0) return true;
    return false;
}

AutResult classify(const Params& p, const ClassifyOptions& opts) {
    AutResult res;
    if (p.t == 1) {
        res.kind = AutKind::NaturalInvolutionOnly;
        res.shortcut_used = Shortcut::TEquals1;
        return res;
    }
    if (opts.use_shortcuts && p.t <= 2 * p.n - 3) {
        res.kind = AutKind::Trivial;
        res.shortcut_used = Shortcut::CorollaryRange;
        if (opts.verify) {
            ConditionReport c = check_conditions(p);
            if (c.all_hold())
                throw ContractViolation("full evaluation contradicts the 2 <= t <= 2n-3 shortcut" + at(p));
            res.conditions = std::move(c);
        }
        return res;
    }

    ConditionReport c = check_conditions(p);
    if (opts.verify && c.cond_i && c.iv_branch != IvBranch::Neither) {
        // Under condition (iv), (z, w/2) is minimal for the doubled equation
        // and the direct scan is an equivalent reading of condition (iii).
        auto zw = cones::movable_congruent_zw(p);
        if (!zw) throw ContractViolation("missing congruent Pell pair" + at(p));
        auto scanned = cond_iii_by_scan(p, zw->x);
        if (scanned.has_value() && *scanned != c.cond_iii)
            throw ContractViolation("wall-scan and orbit evaluations of (iii) disagree" + at(p));
    }
    if (!c.all_hold()) {
        res.kind = AutKind::Trivial;
        res.conditions = std::move(c);
        return res;
    }
    res.kind = AutKind::NonNaturalInvolution;
    res.involution = build_involution(p, c);
    res.conditions = std::move(c);
    if (opts.verify) verify_involution(p, *res.involution);
    return res;
}

void verify_involution(const Params& p, const InvolutionData& inv) {
    const auto& M = inv.matrix;
    const Int& z = inv.z;
    const Int& w = inv.w;

    if (z <= 0 || w <= 0 || z * z - Int(p.t) * (p.n - 1) * w * w != 1)
        throw ContractViolation("(z, w) is not a positive unit pair" + at(p));
    if (mod_nonneg(w, 2) != 0) throw ContractViolation("w odd" + at(p));
    discriminant_action(z, p);  // throws unless z = +-1 (mod 2(n-1))

    // Structural form [[A, (n-1)beta], [-t beta, -A]], A > 0, beta < 0 even.
    Int beta = -w;
    if (M[0][0] != z || M[0][1] != (p.n - 1) * beta || M[1][0] != -Int(p.t) * beta || M[1][1] != -z)
        throw ContractViolation("matrix is not of the reflection form" + at(p));

    // Involution with determinant -1.
    std::array<std::array<Int, 2>, 2> sq{{{M[0][0] * M[0][0] + M[0][1] * M[1][0],
                                           M[0][0] * M[0][1] + M[0][1] * M[1][1]},
                                          {M[1][0] * M[0][0] + M[1][1] * M[1][0],
                                           M[1][0] * M[0][1] + M[1][1] * M[1][1]}}};
    if (sq[0][0] != 1 || sq[0][1] != 0 || sq[1][0] != 0 || sq[1][1] != 1)
        throw ContractViolation("matrix squared is not the identity" + at(p));
    if (M[0][0] * M[1][1] - M[0][1] * M[1][0] != -1)
        throw ContractViolation("determinant is not -1" + at(p));

    // BBF isometry, checked on the basis images.
    auto apply = [&](const NSClass& v) {
        return NSClass{M[0][0] * v.x + M[0][1] * v.y, M[1][0] * v.x + M[1][1] * v.y};
    };
    NSClass h{1, 0}, md{0, 1};
    NSClass ih = apply(h), id = apply(md);
    if (bbf_square(ih, p) != bbf_square(h, p) || bbf_square(id, p) != bbf_square(md, p) ||
        bbf_pairing(ih, id, p) != bbf_pairing(h, md, p))
        throw ContractViolation("matrix does not preserve the BBF form" + at(p));

    // Fixes nu, negates the BBF-orthogonal complement of nu.
    if (!(apply(inv.nu) == inv.nu)) throw ContractViolation("nu not fixed" + at(p));
    NSClass perp{(p.n - 1) * inv.nu.y, Int(p.t) * inv.nu.x};
    NSClass iperp = apply(perp);
    if (iperp.x != -perp.x || iperp.y != -perp.y)
        throw ContractViolation("orthogonal complement not negated" + at(p));

    if (bbf_square(inv.nu, p) != inv.nu_square || divisibility(inv.nu, p) != inv.nu_divisibility ||
        !inv.nu.is_primitive())
        throw ContractViolation("nu data inconsistent" + at(p));

    // Nef = Mov with second ray (z, tw), and nu strictly inside.
    cones::ConeDescription nef = cones::nef_cone(p);
    cones::ConeDescription mov = cones::movable_cone(p);
    if (!(nef == mov) || !(nef.ray_high == NSClass{z, Int(p.t) * w}.primitive()))
        throw ContractViolation("nef cone is not the movable cone <h, zh - tw delta>" + at(p));
    auto strictly_inside = [&](const NSClass& v) {
        return v.x > 0 && v.y > 0 && z * v.y < Int(p.t) * w * v.x;
    };
    if (!strictly_inside(inv.nu)) throw ContractViolation("nu not ample" + at(p));

    // The ample class (n+2)h - delta must land strictly inside the nef cone.
    NSClass sample = apply(NSClass{p.n + 2, 1});
    if (!strictly_inside(sample))
        throw ContractViolation("image of (n+2)h - delta leaves the ample cone" + at(p));

    // Branch parity of z mod 2(n-1) for n >= 3.
    if (p.n >= 3) {
        if (inv.branch == IvBranch::FirstEquation && mod_nonneg(z - 1, 2 * (p.n - 1)) != 0)
            throw ContractViolation("first branch needs z = 1 (mod 2(n-1))" + at(p));
        if (inv.branch == IvBranch::SecondEquation && mod_nonneg(z + 1, 2 * (p.n - 1)) != 0)
            throw ContractViolation("second branch needs z = -1 (mod 2(n-1))" + at(p));
    }
}

AutResult family_check(long n, long k) {
    if (n < 2) throw DomainError("n must be >= 2");
    if (k < 1) throw DomainError("k must be >= 1");
    Int t = Int(n - 1) * k * k + 1;
    if (!t.fits_slong_p()) throw DomainError("t = (n-1)k^2 + 1 out of range");
    Params p(n, t.get_si());
    AutResult res = classify(p);
    if (2 * k >= n + 3) {
        const char* fail = nullptr;
        if (res.kind != AutKind::NonNaturalInvolution)
            fail = "no involution";
        else if (res.involution->nu_square != 2)
            fail = "invariant square is not 2";
        else if (res.involution->z != Int(2) * k * k * (n - 1) + 1 || res.involution->w != Int(2) * k)
            fail = "(z, w) differs from (2k^2(n-1)+1, 2k)";
        if (fail)
            throw ContractViolation(std::string("family guarantee failed (") + fail + ")" + at(p) +
                                    ", k=" + std::to_string(k));
    }
    return res;
}

}  // namespace hilbaut::aut
