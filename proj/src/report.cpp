#include "hilbaut/report.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

namespace hilbaut::report {

json to_json(const NSClass& c) {
    return json{{"h", to_string(c.x)}, {"delta", to_string(-c.y)}};
}

NSClass ns_class_from_json(const json& j) {
    return NSClass{Int(j.at("h").get<std::string>()), -Int(j.at("delta").get<std::string>())};
}

json to_json(const MukaiVector& v) {
    return json{{"r", to_string(v.r)}, {"dH", to_string(v.d_h)}, {"s", to_string(v.s)}};
}

MukaiVector mukai_vector_from_json(const json& j) {
    return MukaiVector{Int(j.at("r").get<std::string>()), Int(j.at("dH").get<std::string>()),
                       Int(j.at("s").get<std::string>())};
}

namespace {

json ns_to_json(const NSClass& c) { return to_json(c); }

NSClass ns_from_json(const json& j) { return ns_class_from_json(j); }

const char* case_name(cones::MovableCase c) {
    switch (c) {
        case cones::MovableCase::Square: return "square";
        case cones::MovableCase::TwoCoeff: return "two_coeff";
        case cones::MovableCase::CongruentPell: return "congruent_pell";
    }
    return "?";
}

cones::MovableCase case_from_name(const std::string& s) {
    if (s == "square") return cones::MovableCase::Square;
    if (s == "two_coeff") return cones::MovableCase::TwoCoeff;
    if (s == "congruent_pell") return cones::MovableCase::CongruentPell;
    throw DomainError("unknown cone case '" + s + "'");
}

json cone_to_json(const cones::ConeDescription& c) {
    return json{{"case", case_name(c.case_tag)},
                {"rays", json::array({ns_to_json(c.ray_low), ns_to_json(c.ray_high)})}};
}

cones::ConeDescription cone_from_json(const json& j) {
    const auto& rays = j.at("rays");
    return cones::ConeDescription{ns_from_json(rays.at(0)), ns_from_json(rays.at(1)),
                                  case_from_name(j.at("case").get<std::string>())};
}

const char* aut_name(aut::AutKind k) {
    switch (k) {
        case aut::AutKind::Trivial: return "trivial";
        case aut::AutKind::NaturalInvolutionOnly: return "natural_involution";
        case aut::AutKind::NonNaturalInvolution: return "non_natural_involution";
    }
    return "?";
}

const char* branch_name(aut::IvBranch b) {
    switch (b) {
        case aut::IvBranch::FirstEquation: return "first";
        case aut::IvBranch::SecondEquation: return "second";
        case aut::IvBranch::Neither: return "none";
    }
    return "?";
}

}  // namespace

bool InstanceReport::operator==(const InstanceReport& o) const {
    if (n != o.n || t != o.t || aut.kind != o.aut.kind || aut.shortcut_used != o.aut.shortcut_used)
        return false;
    if (aut.involution.has_value() != o.aut.involution.has_value()) return false;
    if (aut.involution) {
        const auto& a = *aut.involution;
        const auto& b = *o.aut.involution;
        if (!(a.z == b.z && a.w == b.w && a.matrix == b.matrix && a.nu == b.nu &&
              a.nu_square == b.nu_square && a.nu_divisibility == b.nu_divisibility &&
              a.branch == b.branch))
            return false;
    }
    if (aut.conditions.has_value() != o.aut.conditions.has_value()) return false;
    if (aut.conditions) {
        const auto& a = *aut.conditions;
        const auto& b = *o.aut.conditions;
        if (!(a.cond_i == b.cond_i && a.cond_ii == b.cond_ii && a.cond_iii == b.cond_iii &&
              a.iv_branch == b.iv_branch))
            return false;
    }
    return mov == o.mov && nef == o.nef && walls == o.walls;
}

InstanceReport analyze(const Params& p, bool verify) {
    InstanceReport r{p.n, p.t, {}, {}, {}, {}};
    r.mov = cones::movable_cone(p);
    r.walls = cones::flopping_walls(p);
    r.nef = r.walls.empty() ? r.mov
                            : cones::ConeDescription{r.mov.ray_low, r.walls.front().ray, r.mov.case_tag};
    r.aut = aut::classify(p, {.use_shortcuts = false, .verify = verify});
    return r;
}

json to_json(const InstanceReport& r) {
    json j;
    j["n"] = r.n;
    j["t"] = r.t;
    j["aut"] = aut_name(r.aut.kind);
    switch (r.aut.shortcut_used) {
        case aut::Shortcut::None: j["shortcut"] = nullptr; break;
        case aut::Shortcut::TEquals1: j["shortcut"] = "t_equals_1"; break;
        case aut::Shortcut::CorollaryRange: j["shortcut"] = "corollary_range"; break;
    }
    if (r.aut.involution) {
        const auto& inv = *r.aut.involution;
        j["matrix"] = json::array({json::array({to_string(inv.matrix[0][0]), to_string(inv.matrix[0][1])}),
                                   json::array({to_string(inv.matrix[1][0]), to_string(inv.matrix[1][1])})});
        j["nu"] = ns_to_json(inv.nu);
        j["nu_square"] = inv.nu_square.get_si();
        j["nu_divisibility"] = inv.nu_divisibility.get_si();
        j["z"] = to_string(inv.z);
        j["w"] = to_string(inv.w);
    } else {
        j["matrix"] = nullptr;
        j["nu"] = nullptr;
        j["nu_square"] = nullptr;
        j["nu_divisibility"] = nullptr;
        j["z"] = nullptr;
        j["w"] = nullptr;
    }
    if (r.aut.conditions) {
        const auto& c = *r.aut.conditions;
        j["conditions"] = json{{"i", c.cond_i}, {"ii", c.cond_ii}, {"iii", c.cond_iii},
                               {"iv", branch_name(c.iv_branch)}};
    } else {
        j["conditions"] = nullptr;
    }
    j["mov"] = cone_to_json(r.mov);
    j["nef"] = cone_to_json(r.nef);
    json walls = json::array();
    for (const auto& w : r.walls) {
        walls.push_back(json{{"rho", w.rho},
                             {"alpha", w.alpha},
                             {"witness", json{{"x", to_string(w.witness.x)}, {"y", to_string(w.witness.y)}}},
                             {"ray", ns_to_json(w.ray)}});
    }
    j["flopping_walls"] = std::move(walls);
    return j;
}

InstanceReport from_json(const json& j) {
    InstanceReport r{j.at("n").get<long>(), j.at("t").get<long>(), {}, {}, {}, {}};
    Params p(r.n, r.t);

    const std::string kind = j.at("aut").get<std::string>();
    if (kind == "trivial") r.aut.kind = aut::AutKind::Trivial;
    else if (kind == "natural_involution") r.aut.kind = aut::AutKind::NaturalInvolutionOnly;
    else if (kind == "non_natural_involution") r.aut.kind = aut::AutKind::NonNaturalInvolution;
    else throw DomainError("unknown aut kind '" + kind + "'");

    const auto& sc = j.at("shortcut");
    if (sc.is_null()) r.aut.shortcut_used = aut::Shortcut::None;
    else if (sc == "t_equals_1") r.aut.shortcut_used = aut::Shortcut::TEquals1;
    else if (sc == "corollary_range") r.aut.shortcut_used = aut::Shortcut::CorollaryRange;
    else throw DomainError("unknown shortcut tag");

    if (!j.at("conditions").is_null()) {
        const auto& c = j.at("conditions");
        aut::ConditionReport rep;
        rep.cond_i = c.at("i").get<bool>();
        rep.cond_ii = c.at("ii").get<bool>();
        rep.cond_iii = c.at("iii").get<bool>();
        const std::string br = c.at("iv").get<std::string>();
        rep.iv_branch = br == "first" ? aut::IvBranch::FirstEquation
                        : br == "second" ? aut::IvBranch::SecondEquation
                                         : aut::IvBranch::Neither;
        r.aut.conditions = std::move(rep);
    }

    if (!j.at("matrix").is_null()) {
        aut::InvolutionData inv;
        const auto& m = j.at("matrix");
        inv.matrix = {{{Int(m.at(0).at(0).get<std::string>()), Int(m.at(0).at(1).get<std::string>())},
                       {Int(m.at(1).at(0).get<std::string>()), Int(m.at(1).at(1).get<std::string>())}}};
        inv.nu = ns_from_json(j.at("nu"));
        inv.nu_square = Int(j.at("nu_square").get<long>());
        inv.nu_divisibility = Int(j.at("nu_divisibility").get<long>());
        inv.z = Int(j.at("z").get<std::string>());
        inv.w = Int(j.at("w").get<std::string>());
        inv.branch = r.aut.conditions ? r.aut.conditions->iv_branch : aut::IvBranch::Neither;
        r.aut.involution = std::move(inv);
    }

    r.mov = cone_from_json(j.at("mov"));
    r.nef = cone_from_json(j.at("nef"));
    for (const auto& wj : j.at("flopping_walls")) {
        long rho = wj.at("rho").get<long>();
        long alpha = wj.at("alpha").get<long>();
        // Reconstructing the witness re-checks the wall equation exactly.
        pell::PellSolution witness(Int(wj.at("witness").at("x").get<std::string>()),
                                   Int(wj.at("witness").at("y").get<std::string>()),
                                   Int(4) * p.t * (p.n - 1),
                                   Int(alpha) * alpha - Int(4) * rho * (p.n - 1));
        r.walls.push_back(cones::FloppingWall{rho, alpha, std::move(witness),
                                              ns_from_json(wj.at("ray"))});
    }
    return r;
}

std::string to_text(const InstanceReport& r) {
    std::ostringstream os;
    os << "S^[" << r.n << "] for a degree-" << 2 * r.t << " K3 surface (n=" << r.n << ", t=" << r.t
       << ")\n";
    auto ray = [](const NSClass& c) {
        return "(" + to_string(c.x) + ", " + to_string(c.y) + ")";
    };
    os << "  movable cone: <" << ray(r.mov.ray_low) << ", " << ray(r.mov.ray_high) << ">  ["
       << case_name(r.mov.case_tag) << "]\n";
    os << "  nef cone:     <" << ray(r.nef.ray_low) << ", " << ray(r.nef.ray_high) << ">\n";
    if (r.walls.empty()) {
        os << "  flopping walls: none\n";
    } else {
        os << "  flopping walls:\n";
        for (const auto& w : r.walls)
            os << "    rho=" << w.rho << " alpha=" << w.alpha << " witness=(" << to_string(w.witness.x)
               << ", " << to_string(w.witness.y) << ") ray=" << ray(w.ray) << "\n";
    }
    if (r.aut.conditions) {
        const auto& c = *r.aut.conditions;
        os << "  conditions: i=" << (c.cond_i ? "yes" : "no") << " ii=" << (c.cond_ii ? "yes" : "no")
           << " iii=" << (c.cond_iii ? "yes" : "no") << " iv=" << branch_name(c.iv_branch) << "\n";
    }
    switch (r.aut.kind) {
        case aut::AutKind::Trivial:
            os << "  Aut(S^[n]) = { id }\n";
            break;
        case aut::AutKind::NaturalInvolutionOnly:
            os << "  Aut(S^[n]) = { id, natural involution } (t = 1)\n";
            break;
        case aut::AutKind::NonNaturalInvolution: {
            const auto& inv = *r.aut.involution;
            os << "  Aut(S^[n]) = { id, f } with f a non-natural non-symplectic involution\n";
            os << "  (z, w) = (" << to_string(inv.z) << ", " << to_string(inv.w) << ")\n";
            os << "  f* on {h, -delta} = [[" << to_string(inv.matrix[0][0]) << ", "
               << to_string(inv.matrix[0][1]) << "], [" << to_string(inv.matrix[1][0]) << ", "
               << to_string(inv.matrix[1][1]) << "]]\n";
            os << "  invariant generator nu = " << ray(inv.nu) << ", nu^2 = " << to_string(inv.nu_square)
               << ", div(nu) = " << to_string(inv.nu_divisibility) << "\n";
            break;
        }
    }
    return os.str();
}

std::vector<TableRow> build_table(long n_min, long n_max, long t_max) {
    if (n_min < 2 || n_min > n_max) throw DomainError("need 2 <= n_min <= n_max");
    std::vector<TableRow> rows;
    for (long n = n_min; n <= n_max; ++n) {
        TableRow row{n, std::nullopt, std::nullopt, !aut::minus_one_qr(Int(n - 1)), t_max};
        for (long t = 2 * n - 2; t <= t_max; ++t) {
            aut::AutResult res = aut::classify(Params(n, t));
            if (res.kind == aut::AutKind::NonNaturalInvolution) {
                const Int& sq = res.involution->nu_square;
                if (sq == 2 && !row.min_t_square2) row.min_t_square2 = t;
                if (sq == 2 * (n - 1)) {
                    if (row.square2n2_impossible)
                        throw ContractViolation("square-2(n-1) involution for non-residue n");
                    if (!row.min_t_square2n2) row.min_t_square2n2 = t;
                }
            }
            if (row.min_t_square2 && (row.min_t_square2n2 || row.square2n2_impossible)) break;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "n,min_t_sq2,min_t_sq2n2\n";
    for (const auto& r : rows) {
        os << r.n << ",";
        os << (r.min_t_square2 ? std::to_string(*r.min_t_square2) : ">" + std::to_string(r.scan_limit));
        os << ",";
        if (r.square2n2_impossible)
            os << "/";
        else if (r.min_t_square2n2)
            os << *r.min_t_square2n2;
        else
            os << ">" << r.scan_limit;
        os << "\n";
    }
    return os.str();
}

json table_json(const std::vector<TableRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j;
        j["n"] = r.n;
        if (r.min_t_square2) j["min_t_sq2"] = *r.min_t_square2;
        else j["min_t_sq2"] = ">" + std::to_string(r.scan_limit);
        if (r.square2n2_impossible) j["min_t_sq2n2"] = "/";
        else if (r.min_t_square2n2) j["min_t_sq2n2"] = *r.min_t_square2n2;
        else j["min_t_sq2n2"] = ">" + std::to_string(r.scan_limit);
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<InstanceReport> scan(long n, long t_min, long t_max, unsigned workers, bool verify) {
    if (t_min < 1 || t_min > t_max) throw DomainError("need 1 <= t_min <= t_max");
    const std::size_t count = static_cast<std::size_t>(t_max - t_min + 1);
    std::vector<std::optional<InstanceReport>> slots(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            slots[i] = analyze(Params(n, t_min + static_cast<long>(i)), verify);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto work = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    slots[i] = analyze(Params(n, t_min + static_cast<long>(i)), verify);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }
    std::vector<InstanceReport> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<FamilyRow> family_scan(long n, long k_min, long k_max) {
    if (k_min < 1 || k_min > k_max) throw DomainError("need 1 <= k_min <= k_max");
    std::vector<FamilyRow> rows;
    for (long k = k_min; k <= k_max; ++k) {
        long t = (n - 1) * k * k + 1;
        rows.push_back(FamilyRow{k, t, 2 * k >= n + 3, aut::family_check(n, k)});
    }
    return rows;
}

std::string family_text(long n, const std::vector<FamilyRow>& rows) {
    std::ostringstream os;
    os << "t = " << (n - 1) << "k^2 + 1 family for n = " << n << "\n";
    for (const auto& r : rows) {
        os << "  k=" << r.k << " t=" << r.t << ": ";
        if (r.result.kind == aut::AutKind::NonNaturalInvolution)
            os << "involution, nu^2 = " << to_string(r.result.involution->nu_square);
        else if (r.result.kind == aut::AutKind::NaturalInvolutionOnly)
            os << "natural involution only";
        else
            os << "trivial";
        os << (r.qualifies ? "  [guaranteed]" : "  [below the k >= (n+3)/2 bound]") << "\n";
    }
    return os.str();
}

json family_json(long n, const std::vector<FamilyRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j;
        j["n"] = n;
        j["k"] = r.k;
        j["t"] = r.t;
        j["guaranteed"] = r.qualifies;
        j["aut"] = aut_name(r.result.kind);
        if (r.result.kind == aut::AutKind::NonNaturalInvolution)
            j["nu_square"] = r.result.involution->nu_square.get_si();
        else
            j["nu_square"] = nullptr;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace hilbaut::report
