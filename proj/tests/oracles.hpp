#pragma once

// Brute-force reference implementations. Deliberately independent of the
// library's solvers: plain 64-bit scans and a re-derived equivalence test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using i64 = long;  // 64-bit here, and natively comparable against mpz_class

inline std::optional<i64> sqrt_exact(i64 v) {
    if (v < 0) return std::nullopt;
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(v)));
    for (i64 c = std::max<i64>(0, r - 2); c <= r + 2; ++c)
        if (c * c == v) return c;
    return std::nullopt;
}

struct Sol {
    i64 x;
    i64 y;
    bool operator==(const Sol& o) const { return x == o.x && y == o.y; }
};

// Minimal positive solution of X^2 - d Y^2 = n by ascending-Y scan.
inline std::optional<Sol> minimal_positive(i64 d, i64 n, i64 y_limit) {
    for (i64 y = 1; y <= y_limit; ++y) {
        auto x = sqrt_exact(n + d * y * y);
        if (x && *x > 0) return Sol{*x, y};
    }
    return std::nullopt;
}

inline bool equivalent(const Sol& a, const Sol& b, i64 d, i64 n) {
    i64 an = n < 0 ? -n : n;
    return (a.x * b.x - d * a.y * b.y) % an == 0 && (a.x * b.y - b.x * a.y) % an == 0;
}

// All solutions with |X| <= lim and 0 <= Y <= lim, grouped into equivalence
// classes, each reduced to its smallest-non-negative-Y representative with
// positive X preferred on ties. Sorted by (Y, X descending).
inline std::vector<Sol> fundamentals(i64 d, i64 n, i64 lim) {
    std::vector<Sol> sols;
    for (i64 y = 0; y <= lim; ++y) {
        auto x = sqrt_exact(n + d * y * y);
        if (!x || *x > lim) continue;
        sols.push_back(Sol{*x, y});
        if (*x != 0) sols.push_back(Sol{-*x, y});
    }
    std::vector<std::vector<Sol>> classes;
    for (const auto& s : sols) {
        bool placed = false;
        for (auto& c : classes) {
            if (equivalent(c.front(), s, d, n)) {
                c.push_back(s);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({s});
    }
    std::vector<Sol> reps;
    for (const auto& c : classes) {
        Sol best = c.front();
        for (const auto& s : c)
            if (s.y < best.y || (s.y == best.y && s.x > best.x)) best = s;
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end(), [](const Sol& a, const Sol& b) {
        if (a.y != b.y) return a.y < b.y;
        return a.x > b.x;
    });
    return reps;
}

}  // namespace oracle
