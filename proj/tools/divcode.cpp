// divcode: decide, construct, verify, search and classify Delta-divisible
// linear codes over small finite fields.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "divcode/codes.hpp"
#include "divcode/expansion.hpp"
#include "divcode/geometry.hpp"
#include "divcode/gf.hpp"
#include "divcode/search.hpp"

namespace {

using json = nlohmann::json;
using namespace divcode;
using expansion::DivParams;
using expansion::Int;

gf::Field field_for_q(unsigned q) {
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0, t = q;
    while (t % p == 0) {
        t /= p;
        ++e;
    }
    if (t != 1) throw std::invalid_argument("q is not a prime power");
    return gf::Field::make(p, e);
}

json int_to_json(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() &&
        x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

json multiset_to_json(const geometry::PointMultiset& M) {
    json points = json::array();
    for (const auto& [pt, mult] : M.entries()) {
        json coords = json::array();
        for (auto c : pt) coords.push_back(static_cast<unsigned>(c));
        points.push_back(json{{"coords", coords}, {"mult", mult}});
    }
    return json{{"v", M.v()}, {"q", M.field().q()}, {"points", points}};
}

geometry::PointMultiset multiset_from_json(const json& j) {
    const unsigned q = j.at("q").get<unsigned>();
    const unsigned v = j.at("v").get<unsigned>();
    geometry::PointMultiset M(field_for_q(q), v);
    for (const auto& entry : j.at("points")) {
        geometry::Point pt;
        for (const auto& c : entry.at("coords")) pt.push_back(c.get<gf::Elem>());
        M.add(pt, entry.at("mult").get<unsigned long long>());
    }
    return M;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Delta given directly is normalized through the repetition structure:
// Delta = t * p^f with t coprime to p.
struct DeltaSplit {
    Int t;
    unsigned f = 0;
};

DeltaSplit split_delta(const Int& delta, unsigned p) {
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    DeltaSplit s{delta, 0};
    while (s.t % p == 0) {
        s.t /= p;
        ++s.f;
    }
    return s;
}

struct ExpandArgs {
    unsigned q = 0;
    unsigned a = 0;
    int b = -1;
    std::string n;
    std::string delta;
    bool json_out = false;
};

json expansion_json(const expansion::Expansion& ex, bool feasible_flag) {
    json coeffs = json::array();
    for (const auto& c : ex.coeffs) coeffs.push_back(int_to_json(c));
    return json{{"n", int_to_json(ex.n)},
                {"q", ex.params.q},
                {"a", ex.params.a},
                {"b", ex.params.b},
                {"delta", int_to_json(ex.params.delta())},
                {"coefficients", coeffs},
                {"leading", int_to_json(ex.leading())},
                {"cross_sum", int_to_json(expansion::cross_sum(ex))},
                {"feasible", feasible_flag}};
}

DivParams params_from(const ExpandArgs& args) {
    if (!args.delta.empty()) {
        const Int delta(args.delta);
        const DivParams probe = DivParams::make(args.q, 1, 0);
        const auto split = split_delta(delta, probe.p);
        if (split.t != 1)
            throw std::invalid_argument("delta has a factor coprime to the characteristic; "
                                        "use `feasible`, which applies the repetition structure");
        if (split.f == 0) throw std::invalid_argument("delta must be > 1 here");
        return DivParams::from_exponent(args.q, split.f);
    }
    if (args.a == 0) throw std::invalid_argument("give either --a/--b or --delta");
    return DivParams::make(args.q, args.a, args.b < 0 ? 0 : static_cast<unsigned>(args.b));
}

int cmd_feasible(const ExpandArgs& args) {
    const Int n(args.n);
    if (!args.delta.empty()) {
        const Int delta(args.delta);
        const DivParams probe = DivParams::make(args.q, 1, 0);
        const auto split = split_delta(delta, probe.p);
        if (n % split.t != 0) {
            if (args.json_out)
                std::cout << json{{"n", int_to_json(n)},
                                  {"q", args.q},
                                  {"delta", int_to_json(delta)},
                                  {"feasible", false},
                                  {"reason", "repetition factor does not divide n"}}
                          << "\n";
            else
                std::cout << "infeasible (repetition factor " << split.t
                          << " does not divide n)\n";
            return 0;
        }
        if (split.f == 0) {
            if (args.json_out)
                std::cout << json{{"n", int_to_json(n)},
                                  {"q", args.q},
                                  {"delta", int_to_json(delta)},
                                  {"feasible", true}}
                          << "\n";
            else
                std::cout << "feasible\n";
            return 0;
        }
        const auto params = DivParams::from_exponent(args.q, split.f);
        const auto ex = expansion::expand(n / split.t, params);
        const bool ok = ex.leading() >= 0;
        if (args.json_out) {
            json out = expansion_json(ex, ok);
            out["delta"] = int_to_json(delta);
            out["n"] = int_to_json(n);
            std::cout << out << "\n";
        } else if (ok) {
            std::cout << "feasible\n";
        } else {
            std::cout << "infeasible (leading coefficient " << ex.leading() << ")\n";
        }
        return 0;
    }
    const auto params = params_from(args);
    const auto ex = expansion::expand(n, params);
    const bool ok = ex.leading() >= 0;
    if (args.json_out)
        std::cout << expansion_json(ex, ok) << "\n";
    else if (ok)
        std::cout << "feasible\n";
    else
        std::cout << "infeasible (leading coefficient " << ex.leading() << ")\n";
    return 0;
}

int cmd_expand(const ExpandArgs& args) {
    const auto params = params_from(args);
    const Int n(args.n);
    const auto ex = expansion::expand(n, params);
    const bool ok = n >= 0 && ex.leading() >= 0;
    if (args.json_out) {
        std::cout << expansion_json(ex, ok) << "\n";
        return 0;
    }
    const auto s = expansion::base_sequence(params);
    std::cout << "S_" << params.q << "(" << params.a << "," << params.b << ") = (";
    for (std::size_t i = 0; i < s.size(); ++i) std::cout << (i ? ", " : "") << s[i];
    std::cout << ")\n" << n << " =";
    for (std::size_t i = 0; i < s.size(); ++i)
        std::cout << (i ? " + " : " ") << ex.coeffs[i] << "*" << s[i];
    std::cout << "\nleading: " << ex.leading()
              << "\ncross sum: " << expansion::cross_sum(ex) << "\n";
    return 0;
}

int cmd_frobenius(const ExpandArgs& args) {
    const auto params = params_from(args);
    const auto g = expansion::frobenius_number(params);
    if (args.json_out)
        std::cout << json{{"q", params.q},
                          {"a", params.a},
                          {"b", params.b},
                          {"delta", int_to_json(params.delta())},
                          {"frobenius_number", int_to_json(g)}}
                  << "\n";
    else
        std::cout << g << "\n";
    return 0;
}

int cmd_construct(const ExpandArgs& args) {
    const Int n(args.n);
    const auto F = field_for_q(args.q);

    Int delta;
    geometry::PointMultiset M(F, 1);
    if (!args.delta.empty()) {
        // general Delta = t * p^f: a Delta-divisible multiset is the t-fold
        // repetition (scaling) of a p^f-divisible one
        delta = Int(args.delta);
        const auto split = split_delta(delta, F.p());
        if (n % split.t != 0)
            throw std::invalid_argument("infeasible: repetition factor does not divide n");
        const unsigned long long t = split.t.convert_to<unsigned long long>();
        if (split.f == 0) {
            if (n > 0) {
                M.add(geometry::Point{1}, (n / split.t).convert_to<unsigned long long>());
                M = geometry::scale(M, t);
            }
        } else {
            const auto params = DivParams::from_exponent(args.q, split.f);
            M = geometry::scale(
                geometry::construct_from_expansion(F, n / split.t, params), t);
        }
    } else {
        const auto params = params_from(args);
        delta = params.delta();
        M = geometry::construct_from_expansion(F, n, params);
    }

    if (args.json_out) {
        json out = multiset_to_json(M);
        out["delta"] = int_to_json(delta);
        out["cardinality"] = M.cardinality();
        std::cout << out << "\n";
    } else {
        std::cout << "cardinality " << M.cardinality() << ", ambient dimension " << M.v()
                  << ", " << delta << "-divisible multiset with " << M.entries().size()
                  << " distinct points\n";
    }
    return 0;
}

struct VerifyArgs {
    unsigned q = 0;
    std::string input = "-";
    std::string delta;
    bool json_out = false;
};

int cmd_verify(const VerifyArgs& args) {
    const std::string text = read_input(args.input);
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("empty input");

    geometry::PointMultiset M = [&] {
        if (text[first] == '{') {
            const json j = json::parse(text);
            if (args.q && j.at("q").get<unsigned>() != args.q)
                throw std::invalid_argument("--q disagrees with the multiset field");
            return multiset_from_json(j);
        }
        const auto C = args.q ? codes::parse_matrix(text, field_for_q(args.q))
                              : codes::parse_matrix(text);
        return codes::multiset_from_code(C);
    }();

    const auto C = codes::code_from_multiset(M);
    // codeword enumeration within the guard, geometric sweep beyond it
    double size = 1;
    for (unsigned i = 0; i < C.k; ++i) size *= C.field.q();
    const auto gcd = size <= static_cast<double>(1u << 28) ? codes::weight_divisibility(C)
                                                           : geometry::divisibility_gcd(M);
    const bool projective = M.max_multiplicity() <= 1;
    const bool spanning = geometry::is_spanning(M);

    json out{{"n", C.n},
             {"effective_n", codes::effective_length(C)},
             {"k", C.k},
             {"divisibility_gcd", gcd},
             {"projective", projective},
             {"spanning", spanning}};
    if (!args.delta.empty()) {
        const Int delta(args.delta);
        out["delta"] = int_to_json(delta);
        out["delta_divisible"] = delta > 0 && Int(gcd) % delta == 0;
    }
    if (args.json_out) {
        std::cout << out << "\n";
    } else {
        std::cout << "n=" << C.n << " effective_n=" << codes::effective_length(C)
                  << " k=" << C.k << " divisibility_gcd=" << gcd
                  << " projective=" << (projective ? "yes" : "no")
                  << " spanning=" << (spanning ? "yes" : "no");
        if (!args.delta.empty())
            std::cout << " " << args.delta
                      << "-divisible=" << (out["delta_divisible"].get<bool>() ? "yes" : "no");
        std::cout << "\n";
    }
    return 0;
}

struct SearchArgs {
    unsigned q = 0, v = 3;
    unsigned long long delta = 2, n = 0, max_mult = 1;
    bool projective = false, spanning = false, no_bounds = false;
    std::uint64_t budget = 0;
    unsigned threads = 1;
    bool json_out = false;
    std::string emit_reps;
    bool timing = false;
};

search::SearchSpec spec_from(const SearchArgs& args) {
    search::SearchSpec spec{field_for_q(args.q), args.v,        args.delta,
                            args.n,              args.max_mult, args.spanning};
    if (args.projective) spec.max_mult = 1;
    spec.use_bounds = !args.no_bounds;
    spec.node_budget = args.budget;
    spec.threads = args.threads < 1 ? 1 : args.threads;
    return spec;
}

int cmd_search(const SearchArgs& args) {
    const auto spec = spec_from(args);
    const auto r = search::exists_divisible_set(spec);
    const char* status = r.status == search::SearchStatus::Exists   ? "exists"
                         : r.status == search::SearchStatus::Absent ? "absent"
                                                                    : "inconclusive";
    if (args.json_out) {
        json out{{"status", status}, {"nodes", r.nodes}};
        if (args.timing) out["seconds"] = r.seconds;
        if (r.witness) out["witness"] = multiset_to_json(*r.witness);
        std::cout << out << "\n";
    } else {
        std::cout << status;
        if (r.witness)
            std::cout << " (witness: " << r.witness->entries().size() << " distinct points, "
                      << "cardinality " << r.witness->cardinality() << ")";
        std::cout << " [" << r.nodes << " nodes]\n";
    }
    return 0;
}

int cmd_classify(const SearchArgs& args) {
    const auto spec = spec_from(args);
    const auto r = search::classify(spec);
    if (!args.emit_reps.empty()) {
        for (std::size_t i = 0; i < r.representatives.size(); ++i) {
            const auto C = codes::code_from_multiset(r.representatives[i]);
            char name[32];
            std::snprintf(name, sizeof name, "/rep_%03zu.txt", i);
            std::ofstream out(args.emit_reps + name);
            if (!out) throw std::invalid_argument("cannot write into '" + args.emit_reps + "'");
            out << codes::format_matrix(C, true);
        }
    }
    if (args.json_out) {
        json out{{"status", r.complete ? "complete" : "inconclusive"},
                 {"count", r.count()},
                 {"nodes", r.nodes}};
        if (args.timing) out["seconds"] = r.seconds;
        std::cout << out << "\n";
    } else {
        std::cout << (r.complete ? "" : "INCONCLUSIVE (budget exhausted); partial ")
                  << r.count() << (r.count() == 1 ? " class" : " classes") << " [" << r.nodes
                  << " nodes]\n";
    }
    return 0;
}

struct ProfileArgs {
    unsigned q = 0;
    std::string input = "-";
    bool json_out = false;
};

int cmd_profile(const ProfileArgs& args) {
    const std::string text = read_input(args.input);
    const auto C = args.q ? codes::parse_matrix(text, field_for_q(args.q))
                          : codes::parse_matrix(text);
    const auto M = codes::multiset_from_code(C);
    const auto profile = geometry::line_profile(M);
    const unsigned long long qv = M.field().q();
    const unsigned long long n = M.cardinality();

    const bool line = geometry::is_line_set(M);
    const bool oval = M.field().p() == 2 && geometry::is_hyperoval_set(M);
    const bool km = n > qv && geometry::is_km_arc(M, n - qv);

    if (args.json_out) {
        json prof = json::object();
        for (const auto& [size, cnt] : profile) prof[std::to_string(size)] = cnt;
        std::cout << json{{"n", n},
                          {"q", qv},
                          {"profile", prof},
                          {"line", line},
                          {"hyperoval", oval},
                          {"km_arc", km},
                          {"km_arc_t", km ? json(n - qv) : json(nullptr)}}
                  << "\n";
    } else {
        std::cout << "line profile:";
        for (const auto& [size, cnt] : profile) std::cout << " " << size << "^" << cnt;
        std::cout << "\nline=" << (line ? "yes" : "no")
                  << " hyperoval=" << (oval ? "yes" : "no") << " km_arc="
                  << (km ? ("yes (type (0,2," + std::to_string(n - qv) + "))") : "no") << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delta-divisible linear codes over GF(q): feasibility, constructions, "
                 "verification, search and classification"};
    app.require_subcommand(1);

    ExpandArgs fe, ex, fr, co;
    VerifyArgs ve;
    SearchArgs se, cl;
    ProfileArgs pr;

    auto add_params = [](CLI::App* cmd, ExpandArgs& a, bool need_n) {
        cmd->add_option("--q", a.q, "field size q = p^e")->required();
        cmd->add_option("--a", a.a, "exponent parameter a >= 1");
        cmd->add_option("--b", a.b, "exponent parameter 0 <= b <= e-1");
        cmd->add_option("--delta", a.delta, "divisibility constant (alternative to --a/--b)");
        if (need_n) cmd->add_option("--n", a.n, "effective length")->required();
        cmd->add_flag("--json", a.json_out, "machine-readable output");
    };

    add_params(app.add_subcommand("feasible", "decide whether a Delta-divisible code of "
                                              "effective length n exists"),
               fe, true);
    add_params(app.add_subcommand("expand", "S_q(a,b)-adic expansion of n"), ex, true);
    add_params(app.add_subcommand("frobenius", "largest infeasible effective length"), fr,
               false);
    add_params(app.add_subcommand("construct", "build a Delta-divisible multiset of "
                                               "cardinality n"),
               co, true);

    auto* vcmd = app.add_subcommand("verify", "verify a generator matrix or multiset");
    vcmd->add_option("--q", ve.q, "field size (needed when the input has no header)");
    vcmd->add_option("--matrix", ve.input, "matrix file, '-' for stdin")->required();
    vcmd->add_option("--delta", ve.delta, "also report divisibility by this Delta");
    vcmd->add_flag("--json", ve.json_out, "machine-readable output");

    auto add_search = [](CLI::App* cmd, SearchArgs& a) {
        cmd->add_option("--q", a.q, "field size")->required();
        cmd->add_option("--v", a.v, "ambient dimension (points of PG(v-1,q))");
        cmd->add_option("--delta", a.delta, "divisibility constant")->required();
        cmd->add_option("--n", a.n, "cardinality")->required();
        cmd->add_flag("--projective", a.projective, "point sets (max multiplicity 1)");
        cmd->add_option("--max-mult", a.max_mult, "maximum point multiplicity");
        cmd->add_flag("--spanning", a.spanning, "require spanning the ambient space");
        cmd->add_option("--budget", a.budget,
                        "node budget (0 = DIVCODE_NODE_BUDGET or built-in default)");
        cmd->add_option("--threads", a.threads, "worker threads (execution is sequential)");
        cmd->add_flag("--timing", a.timing, "include seconds in JSON output");
        cmd->add_flag("--json", a.json_out, "machine-readable output");
    };
    auto* scmd = app.add_subcommand("search", "search for a Delta-divisible (multi)set");
    add_search(scmd, se);
    scmd->add_flag("--no-bounds", se.no_bounds, "disable proven lower-bound cutoffs");
    auto* ccmd = app.add_subcommand("classify", "classify projective Delta-divisible sets "
                                                "up to semilinear equivalence (v = 3)");
    add_search(ccmd, cl);
    ccmd->add_option("--emit-reps", cl.emit_reps, "write one matrix file per class here");

    auto* pcmd = app.add_subcommand("profile", "line intersection profile of a point set");
    pcmd->add_option("--q", pr.q, "field size (needed when the input has no header)");
    pcmd->add_option("--matrix", pr.input, "matrix file, '-' for stdin")->required();
    pcmd->add_flag("--json", pr.json_out, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("feasible")) return cmd_feasible(fe);
        if (app.got_subcommand("expand")) return cmd_expand(ex);
        if (app.got_subcommand("frobenius")) return cmd_frobenius(fr);
        if (app.got_subcommand("construct")) return cmd_construct(co);
        if (app.got_subcommand("verify")) return cmd_verify(ve);
        if (app.got_subcommand("search")) return cmd_search(se);
        if (app.got_subcommand("classify")) return cmd_classify(cl);
        if (app.got_subcommand("profile")) return cmd_profile(pr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
