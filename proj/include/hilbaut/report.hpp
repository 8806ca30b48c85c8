#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "hilbaut/classifier.hpp"
#include "hilbaut/cones.hpp"

namespace hilbaut::report {

using json = nlohmann::ordered_json;

// Everything cmd_analyze reports about one (n, t). Equality compares exactly
// the serialized content (condition witnesses are evaluation by-products and
// do not travel through JSON).
struct InstanceReport {
    long n;
    long t;
    aut::AutResult aut;
    cones::ConeDescription mov;
    cones::ConeDescription nef;
    std::vector<cones::FloppingWall> walls;

    bool operator==(const InstanceReport& o) const;
};

// Full evaluation (no corollary shortcut), so the report always carries the
// conditions block for t >= 2.
InstanceReport analyze(const Params& p, bool verify = false);

// Huge integers are serialized as decimal strings; n, t and the other small
// structural fields as numbers.
json to_json(const InstanceReport& r);
InstanceReport from_json(const json& j);

// Wire formats for the lattice values: {"h": x, "delta": -y} for x h - y delta,
// {"r", "dH", "s"} for Mukai vectors.
json to_json(const NSClass& c);
NSClass ns_class_from_json(const json& j);
json to_json(const MukaiVector& v);
MukaiVector mukai_vector_from_json(const json& j);

std::string to_text(const InstanceReport& r);

struct TableRow {
    long n;
    std::optional<long> min_t_square2;    // empty: not found up to scan_limit
    std::optional<long> min_t_square2n2;
    bool square2n2_impossible;            // -1 is a non-residue mod n-1
    long scan_limit;
};

std::vector<TableRow> build_table(long n_min, long n_max, long t_max);
std::string table_csv(const std::vector<TableRow>& rows);
json table_json(const std::vector<TableRow>& rows);

// One report per t in [t_min, t_max], ascending. workers > 1 distributes the
// per-t computations over a pool; output order and content are identical to
// the sequential run.
std::vector<InstanceReport> scan(long n, long t_min, long t_max, unsigned workers = 1,
                                 bool verify = false);

struct FamilyRow {
    long k;
    long t;
    bool qualifies;  // k >= (n+3)/2, where the involution is guaranteed
    aut::AutResult result;
};

// Throws ContractViolation as soon as a qualifying k fails its guarantee.
std::vector<FamilyRow> family_scan(long n, long k_min, long k_max);
std::string family_text(long n, const std::vector<FamilyRow>& rows);
json family_json(long n, const std::vector<FamilyRow>& rows);

}  // namespace hilbaut::report
