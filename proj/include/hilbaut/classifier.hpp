#pragma once

#include <array>
#include <optional>
#include <tuple>

#include "hilbaut/cones.hpp"
#include "hilbaut/ns_lattice.hpp"
#include "hilbaut/pell.hpp"

namespace hilbaut::aut {

enum class Shortcut { None, TEquals1, CorollaryRange };

// Which of the two negative Pell equations certifies the invariant class:
// (n-1)X^2 - tY^2 = -1 (square-2 generator) or X^2 - t(n-1)Y^2 = -1
// (square-2(n-1) generator). For n = 2 the two coincide and the first is
// reported.
enum class IvBranch { FirstEquation, SecondEquation, Neither };

// Evaluation of the four numerical conditions, each with the witness that
// settles it when it fails (or, for the last, the solution that makes it hold).
struct ConditionReport {
    bool cond_i = false;                                       // t(n-1) not a square
    std::optional<Int> square_root;                            // c with t(n-1) = c^2 when (i) fails
    bool cond_ii = false;                                      // (n-1)X^2 - tY^2 = 1 unsolvable (vacuous for n=2)
    std::optional<pell::TwoCoeffSolution> solvable_ii_witness; // minimal solution when (ii) fails
    bool cond_iii = false;                                     // no flopping wall strictly inside Mov
    std::optional<cones::FloppingWall> wall_witness;           // minimal-slope wall when (iii) fails
    IvBranch iv_branch = IvBranch::Neither;
    std::optional<pell::TwoCoeffSolution> iv_witness;

    bool all_hold() const { return cond_i && cond_ii && cond_iii && iv_branch != IvBranch::Neither; }
};

// Cohomological data of the non-natural non-symplectic involution.
struct InvolutionData {
    Int z;                                 // Pell pair: z^2 - t(n-1) w^2 = 1,
    Int w;                                 // minimal with z = +-1 (mod n-1)
    std::array<std::array<Int, 2>, 2> matrix;  // [[z, -(n-1)w], [tw, -z]] on basis {h, -delta}
    NSClass nu;                            // primitive invariant generator
    Int nu_square;                         // 2 or 2(n-1)
    Int nu_divisibility;
    IvBranch branch;
};

enum class AutKind { Trivial, NaturalInvolutionOnly, NonNaturalInvolution };

struct AutResult {
    AutKind kind = AutKind::Trivial;
    Shortcut shortcut_used = Shortcut::None;
    std::optional<InvolutionData> involution;
    std::optional<ConditionReport> conditions;
};

struct ClassifyOptions {
    bool use_shortcuts = true;  // t = 1 and 2 <= t <= 2n-3 fast paths
    bool verify = false;        // re-derive every invariant, cross-check both wall methods
};

// Full evaluation of the four conditions (t >= 2).
ConditionReport check_conditions(const Params& p);

AutResult classify(const Params& p, const ClassifyOptions& opts = {});

// Invariant generator from a condition-(iv) witness: (class, BBF square,
// divisibility). Throws ContractViolation if the constructed class fails
// primitivity, square, divisibility or ampleness.
std::tuple<NSClass, Int, Int> invariant_generator(const Params& p, IvBranch branch,
                                                  const pell::TwoCoeffSolution& witness);

// Action of the involution on the discriminant group of H^2: -1 when
// 2(n-1) | z-1 (invariant square 2), +1 when 2(n-1) | z+1 (square 2(n-1)).
// For n = 2 both divisibilities hold and -1 is returned.
int discriminant_action(const Int& z, const Params& p);

// Solvability of x^2 = -1 (mod m); decides whether the square-2(n-1) column
// can be realized at all for a given n.
bool minus_one_qr(const Int& m);

// Classifies t = (n-1)k^2 + 1. For k >= (n+3)/2 the result is required to be
// an involution with square-2 generator and (z, w) = (2k^2(n-1)+1, 2k);
// a failure of that requirement throws ContractViolation.
AutResult family_check(long n, long k);

// Re-derives every algebraic invariant of a classified involution; throws
// ContractViolation on the first failure.
void verify_involution(const Params& p, const InvolutionData& inv);

}  // namespace hilbaut::aut
