#include <doctest.h>

#include "hilbaut/classifier.hpp"

using namespace hilbaut;
using namespace hilbaut::aut;

TEST_CASE("classify: shortcuts and the n=3 instances") {
    auto r1 = classify(Params(3, 2));
    CHECK(r1.kind == AutKind::Trivial);
    CHECK(r1.shortcut_used == Shortcut::CorollaryRange);

    auto r2 = classify(Params(4, 1));
    CHECK(r2.kind == AutKind::NaturalInvolutionOnly);
    CHECK(r2.shortcut_used == Shortcut::TEquals1);

    auto r3 = classify(Params(3, 19), {.use_shortcuts = true, .verify = true});
    REQUIRE(r3.kind == AutKind::NonNaturalInvolution);
    const auto& inv = *r3.involution;
    CHECK(inv.z == 37);
    CHECK(inv.w == 6);
    CHECK(inv.matrix[0][0] == 37);
    CHECK(inv.matrix[0][1] == -12);
    CHECK(inv.matrix[1][0] == 114);
    CHECK(inv.matrix[1][1] == -37);
    CHECK(inv.nu == NSClass{1, 3});
    CHECK(inv.nu_square == 2);
    CHECK(inv.nu_divisibility == 1);
    CHECK(inv.branch == IvBranch::FirstEquation);
}

TEST_CASE("check_conditions on the worked instances") {
    auto c13 = check_conditions(Params(3, 13));
    CHECK(c13.cond_i);
    CHECK(c13.cond_ii);
    CHECK(c13.cond_iii);
    CHECK(c13.iv_branch == IvBranch::SecondEquation);
    REQUIRE(c13.iv_witness.has_value());
    CHECK(c13.iv_witness->x == 5);
    CHECK(c13.iv_witness->y == 1);

    auto c54 = check_conditions(Params(5, 4));
    CHECK(!c54.cond_i);
    REQUIRE(c54.square_root.has_value());
    CHECK(*c54.square_root == 4);

    auto c37 = check_conditions(Params(3, 7));
    CHECK(!c37.cond_ii);
    REQUIRE(c37.solvable_ii_witness.has_value());
    CHECK(c37.solvable_ii_witness->x == 2);
    CHECK(c37.solvable_ii_witness->y == 1);

    CHECK_THROWS_AS(check_conditions(Params(3, 1)), DomainError);
}

TEST_CASE("invariant_generator on the worked instances") {
    auto [nu1, sq1, div1] = invariant_generator(Params(3, 19), IvBranch::FirstEquation,
                                                pell::TwoCoeffSolution(3, 1, 2, 19, -1));
    CHECK(nu1 == NSClass{1, 3});
    CHECK(sq1 == 2);
    CHECK(div1 == 1);

    auto [nu2, sq2, div2] = invariant_generator(Params(3, 13), IvBranch::SecondEquation,
                                                pell::TwoCoeffSolution(5, 1, 1, 26, -1));
    CHECK(nu2 == NSClass{2, 5});
    CHECK(sq2 == 4);
    CHECK(div2 == 2);

    auto [nu3, sq3, div3] = invariant_generator(Params(2, 2), IvBranch::FirstEquation,
                                                pell::TwoCoeffSolution(1, 1, 1, 2, -1));
    CHECK(nu3 == NSClass{1, 1});
    CHECK(sq3 == 2);

    CHECK_THROWS_AS(invariant_generator(Params(3, 19), IvBranch::Neither,
                                        pell::TwoCoeffSolution(3, 1, 2, 19, -1)),
                    DomainError);
    // witness for the wrong equation
    CHECK_THROWS_AS(invariant_generator(Params(3, 13), IvBranch::FirstEquation,
                                        pell::TwoCoeffSolution(5, 1, 1, 26, -1)),
                    DomainError);
}

TEST_CASE("discriminant_action") {
    CHECK(discriminant_action(37, Params(3, 19)) == -1);
    CHECK(discriminant_action(51, Params(3, 13)) == 1);
    CHECK(discriminant_action(1, Params(2, 2)) == -1);
    CHECK_THROWS_AS(discriminant_action(2, Params(3, 19)), ContractViolation);
}

TEST_CASE("minus_one_qr") {
    CHECK(minus_one_qr(1));
    CHECK(minus_one_qr(2));
    CHECK(minus_one_qr(10));
    CHECK(!minus_one_qr(3));
    CHECK(!minus_one_qr(4));
    CHECK(minus_one_qr(5));
    CHECK_THROWS_AS(minus_one_qr(0), DomainError);
}

TEST_CASE("family_check") {
    auto r1 = family_check(3, 3);
    REQUIRE(r1.kind == AutKind::NonNaturalInvolution);
    CHECK(r1.involution->z == 37);
    CHECK(r1.involution->w == 6);
    CHECK(r1.involution->nu_square == 2);

    auto r2 = family_check(6, 5);  // t = 126
    REQUIRE(r2.kind == AutKind::NonNaturalInvolution);
    CHECK(r2.involution->nu_square == 2);

    auto r3 = family_check(2, 1);  // t = 2, below the bound but known from the table
    CHECK(r3.kind == AutKind::NonNaturalInvolution);
}

TEST_CASE("full evaluation agrees with the corollary shortcut (small sweep)") {
    for (long n = 2; n <= 6; ++n) {
        for (long t = 2; t <= 2 * n - 3; ++t) {
            auto full = classify(Params(n, t), {.use_shortcuts = false, .verify = false});
            CHECK(full.kind == AutKind::Trivial);
            auto quick = classify(Params(n, t));
            CHECK(quick.kind == AutKind::Trivial);
            CHECK(quick.shortcut_used == Shortcut::CorollaryRange);
        }
    }
}

TEST_CASE("verify mode re-derives the involution algebra") {
    for (auto [n, t] : {std::pair<long, long>{2, 2}, {3, 13}, {3, 19}, {6, 34}, {4, 19}}) {
        auto res = classify(Params(n, t), {.use_shortcuts = false, .verify = true});
        REQUIRE(res.kind == AutKind::NonNaturalInvolution);
        CHECK_NOTHROW(verify_involution(Params(n, t), *res.involution));
    }
}

TEST_CASE("verify_involution rejects tampered data") {
    auto res = classify(Params(3, 19));
    REQUIRE(res.involution.has_value());
    auto bad = *res.involution;
    bad.nu = NSClass{2, 6};
    CHECK_THROWS_AS(verify_involution(Params(3, 19), bad), ContractViolation);
}
