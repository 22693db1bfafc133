// permlab command-line front end: exact collision counts, bound reports,
// witness-set and graph generation, and the claim verification suite.
//
// Exit codes: 0 success; 1 claim counterexamples found under `verify
// --strict`; 2 usage errors and cap violations.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permlab/bounds.hpp"
#include "permlab/claims.hpp"
#include "permlab/graphs.hpp"
#include "permlab/labels.hpp"
#include "permlab/witness.hpp"

namespace {

constexpr const char* version_string = "permlab 1.0.0";

struct RunConfig {
    int64_t s_min = 2;
    bool strict_tops = false;
    int64_t oracle_cap = 300;
    uint64_t enumeration_cap = 1000000;
    std::string format = "text";
    uint64_t seed = 0;

    permlab::WitnessConfig witness() const { return {s_min, strict_tops}; }
};

void require_oracle_cap(int64_t n, const RunConfig& rc) {
    if (n > rc.oracle_cap)
        throw std::invalid_argument("n=" + std::to_string(n) + " is beyond the oracle cap (" +
                                    std::to_string(rc.oracle_cap) +
                                    "); raise --oracle-cap to override");
}

permlab::ordered_json bound_report_json(const permlab::BoundReport& r) {
    permlab::ordered_json j;
    j["n"] = r.n;
    j["config_id"] = r.config.id();
    j["lower_formula"] = r.lower_formula;
    j["lower_union"] = r.lower_union;
    j["delta"] = r.delta;
    j["upper"] = r.upper;
    j["upper_all_h"] = r.upper_all_h;
    if (r.exact)
        j["exact"] = *r.exact;
    else
        j["exact"] = nullptr;
    j["set_cards"] = permlab::ordered_json{
        {"s1", r.s1}, {"s2", r.s2}, {"s3", r.s3}, {"s45", r.s45}, {"s6", r.s6}};
    auto f = permlab::closed_form_cardinalities(r.n, r.config);
    j["closed_forms"] = permlab::ordered_json{{"s1", f.s1_formula},
                                              {"s2", f.s2_formula},
                                              {"s3", f.s3_formula},
                                              {"s3_alt", f.s3_formula_proof},
                                              {"s6", f.s6_formula}};
    j["lower_equals_exact"] = r.lower_equals_exact;
    return j;
}

std::string bound_report_text(const permlab::BoundReport& r) {
    std::string out;
    out += "n=" + std::to_string(r.n) + " config=" + r.config.id() + "\n";
    out += "lower_formula=" + std::to_string(r.lower_formula) + "\n";
    out += "lower_union=" + std::to_string(r.lower_union) + "\n";
    out += "delta=" + std::to_string(r.delta) + "\n";
    out += "upper=" + std::to_string(r.upper) + "\n";
    out += "upper_all_h=" + std::to_string(r.upper_all_h) + "\n";
    out += "exact=" + (r.exact ? std::to_string(*r.exact) : std::string("-")) + "\n";
    out += "cards s1=" + std::to_string(r.s1) + " s2=" + std::to_string(r.s2) +
           " s3=" + std::to_string(r.s3) + " s45=" + std::to_string(r.s45) +
           " s6=" + std::to_string(r.s6) + "\n";
    if (r.lower_equals_exact)
        out += "note: lower_union equals the exact count\n";
    return out;
}

int cmd_bounds(const RunConfig& rc, int64_t n, bool with_exact, bool no_exact) {
    if (n < 3)
        throw std::invalid_argument("bounds: n must be >= 3");
    bool exact = !no_exact && (with_exact || n <= rc.oracle_cap);
    if (with_exact)
        require_oracle_cap(n, rc);
    auto r = permlab::sandwich_report(n, rc.witness(), exact, rc.oracle_cap);
    if (rc.format == "csv")
        std::cout << permlab::bound_csv_header() << "\n" << permlab::bound_csv_row(r) << "\n";
    else if (rc.format == "json")
        std::cout << bound_report_json(r).dump(2) << "\n";
    else
        std::cout << bound_report_text(r);
    return 0;
}

int cmd_exact(const RunConfig& rc, int64_t n) {
    if (n < 2)
        throw std::invalid_argument("exact: n must be >= 2");
    require_oracle_cap(n, rc);
    std::cout << permlab::distinct_value_count(n) << "\n";
    return 0;
}

int cmd_classes(const RunConfig& rc, int64_t n, int64_t min_size) {
    if (n < 2)
        throw std::invalid_argument("classes: n must be >= 2");
    if (min_size < 1)
        throw std::invalid_argument("classes: --min-size must be >= 1");
    require_oracle_cap(n, rc);
    auto table = permlab::build_collision_table(n);
    std::cout << permlab::classes_csv(table, min_size);
    return 0;
}

int cmd_verify(const RunConfig& rc, const std::string& claims_arg, int64_t n_max, bool strict) {
    static const std::vector<std::string> canonical = {"L1", "L2", "L3", "L4", "L5",
                                                       "T31", "T32", "T41", "T43"};
    std::vector<std::string> wanted;
    if (claims_arg.empty() || claims_arg == "all") {
        wanted = canonical;
    } else {
        std::stringstream ss(claims_arg);
        std::string id;
        while (std::getline(ss, id, ',')) {
            if (std::find(canonical.begin(), canonical.end(), id) == canonical.end())
                throw std::invalid_argument("verify: unknown claim id '" + id + "'");
            wanted.push_back(id);
        }
        if (wanted.empty())
            throw std::invalid_argument("verify: no claim ids given");
    }

    auto run_one = [&](const std::string& id) -> permlab::ClaimReport {
        if (id == "L1") return permlab::check_L1(n_max);
        if (id == "L2") return permlab::check_L2(n_max);
        if (id == "L3") return permlab::check_L3(n_max);
        if (id == "L4") return permlab::check_L4(n_max);
        if (id == "L5") return permlab::check_L5(n_max);
        if (id == "T31") return permlab::check_T31(n_max, rc.witness(), rc.oracle_cap);
        if (id == "T32") return permlab::check_T32(n_max, rc.witness());
        if (id == "T41") return permlab::check_T41(n_max);
        return permlab::check_T43(n_max, rc.oracle_cap);
    };

    bool any_counterexamples = false;
    auto arr = permlab::ordered_json::array();
    for (const auto& id : canonical) {
        if (std::find(wanted.begin(), wanted.end(), id) == wanted.end())
            continue;
        auto report = run_one(id);
        any_counterexamples = any_counterexamples || !report.verified();
        arr.push_back(permlab::claim_report_json(report));
    }
    std::cout << arr.dump(2) << "\n";
    return strict && any_counterexamples ? 1 : 0;
}

permlab::EdgePolicy parse_policy(const std::string& name) {
    if (name == "lex-min")
        return permlab::EdgePolicy::lex_min;
    if (name == "lex-max")
        return permlab::EdgePolicy::lex_max;
    if (name == "random")
        return permlab::EdgePolicy::seeded_random;
    throw std::invalid_argument("graph: policy must be lex-min, lex-max or random");
}

int cmd_graph(const RunConfig& rc, int64_t n, const std::string& policy, const std::string& fmt) {
    if (n < 2)
        throw std::invalid_argument("graph: n must be >= 2");
    require_oracle_cap(n, rc);
    auto g = permlab::maximal_graph(n, parse_policy(policy), rc.seed);
    if (fmt == "dot")
        std::cout << permlab::to_dot(g);
    else if (fmt == "edge-list")
        std::cout << permlab::to_edge_list(g);
    else
        throw std::invalid_argument("graph: format must be edge-list or dot");
    return 0;
}

int cmd_enumerate(const RunConfig& rc, int64_t n) {
    if (n < 2)
        throw std::invalid_argument("enumerate: n must be >= 2");
    uint64_t total = permlab::maximal_graph_count(n, rc.enumeration_cap);
    uint64_t index = 0;
    permlab::for_each_maximal(
        n,
        [&](const permlab::VertexLabeledGraph& g) {
            ++index;
            std::cout << "# graph " << index << " of " << total << " (" << g.edges.size()
                      << " edges)\n"
                      << permlab::to_edge_list(g) << "\n";
            return true;
        },
        /*n_cap=*/12, rc.enumeration_cap);
    return 0;
}

int cmd_sweep(const RunConfig& rc, int64_t from, int64_t to, const std::string& out_path) {
    if (from < 3 || from > to)
        throw std::invalid_argument("sweep: need 3 <= from <= to");
    auto reports = permlab::sweep_reports(from, to, rc.witness(), rc.oracle_cap);
    std::string body = permlab::bound_csv_header() + "\n";
    for (const auto& r : reports)
        body += permlab::bound_csv_row(r) + "\n";
    body += std::string("# ") + version_string + "; config=" + rc.witness().id() +
            "; oracle_cap=" + std::to_string(rc.oracle_cap) + "; from=" + std::to_string(from) +
            "; to=" + std::to_string(to) + "\n";
    if (out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::invalid_argument("sweep: cannot write to " + out_path);
    out << body;
    if (!out)
        throw std::invalid_argument("sweep: write failed for " + out_path);
    return 0;
}

int cmd_sets(const RunConfig& rc, int64_t n, const std::string& which) {
    if (n < 3)
        throw std::invalid_argument("sets: n must be >= 3");
    std::vector<permlab::WitnessId> ids;
    if (which.empty() || which == "all") {
        ids = {permlab::WitnessId::S1, permlab::WitnessId::S2, permlab::WitnessId::S3,
               permlab::WitnessId::S4, permlab::WitnessId::S5, permlab::WitnessId::S6};
    } else {
        std::stringstream ss(which);
        std::string id;
        while (std::getline(ss, id, ',')) {
            if (id == "S1") ids.push_back(permlab::WitnessId::S1);
            else if (id == "S2") ids.push_back(permlab::WitnessId::S2);
            else if (id == "S3") ids.push_back(permlab::WitnessId::S3);
            else if (id == "S4") ids.push_back(permlab::WitnessId::S4);
            else if (id == "S5") ids.push_back(permlab::WitnessId::S5);
            else if (id == "S6") ids.push_back(permlab::WitnessId::S6);
            else throw std::invalid_argument("sets: unknown set id '" + id + "'");
        }
    }
    std::vector<permlab::WitnessSet> sets;
    for (auto id : ids)
        sets.push_back(permlab::make_witness_set(id, n, rc.witness()));
    std::cout << permlab::witness_csv(sets);
    return 0;
}

int cmd_check(const std::string& path) {
    permlab::VertexLabeledGraph g;
    if (path == "-") {
        g = permlab::read_edge_list(std::cin);
    } else {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("check: cannot read " + path);
        g = permlab::read_edge_list(in);
    }
    bool perm = permlab::is_permutation_labeling(g);
    std::cout << "n=" << g.n << " edges=" << g.edges.size() << "\n";
    std::cout << "permutation_labeling=" << (perm ? "true" : "false") << "\n";
    std::cout << "maximal=" << (perm ? (permlab::is_maximal(g) ? "true" : "false") : "n/a")
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(version_string) +
                 " - edge counts, bounds and claim checks for permutation-labeled graphs"};
    app.require_subcommand(1);

    RunConfig rc;
    app.add_option("--s-min", rc.s_min, "S2 family floor (2 or 3)")->check(CLI::IsMember({2, 3}));
    app.add_flag("--strict-tops", rc.strict_tops, "tighten the S4/S5 scans to top < n");
    app.add_option("--oracle-cap", rc.oracle_cap, "largest n for exact collision counting");
    app.add_option("--enumeration-cap", rc.enumeration_cap, "largest number of graphs to enumerate");
    app.add_option("--format", rc.format, "output format for bounds: text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--seed", rc.seed, "seed for the random edge policy");

    int exit_code = 0;

    auto* sub_bounds = app.add_subcommand("bounds", "bound report for a single n");
    sub_bounds->fallthrough();
    int64_t bounds_n = 0;
    bool with_exact = false, no_exact = false;
    sub_bounds->add_option("--n", bounds_n, "number of vertices")->required();
    auto* with_exact_flag =
        sub_bounds->add_flag("--with-exact", with_exact, "require the exact count (error beyond cap)");
    sub_bounds->add_flag("--no-exact", no_exact, "skip the exact count")->excludes(with_exact_flag);
    sub_bounds->callback([&]() { exit_code = cmd_bounds(rc, bounds_n, with_exact, no_exact); });

    auto* sub_exact = app.add_subcommand("exact", "exact number of distinct edge values D(n)");
    sub_exact->fallthrough();
    int64_t exact_n = 0;
    sub_exact->add_option("--n", exact_n, "number of vertices")->required();
    sub_exact->callback([&]() { exit_code = cmd_exact(rc, exact_n); });

    auto* sub_classes = app.add_subcommand("classes", "collision classes as CSV");
    sub_classes->fallthrough();
    int64_t classes_n = 0, min_size = 1;
    sub_classes->add_option("--n", classes_n, "number of vertices")->required();
    sub_classes->add_option("--min-size", min_size, "only classes with at least this many pairs");
    sub_classes->callback([&]() { exit_code = cmd_classes(rc, classes_n, min_size); });

    auto* sub_verify = app.add_subcommand("verify", "run claim checks, emit JSON reports");
    sub_verify->fallthrough();
    std::string claims_arg = "all";
    int64_t n_max = 300;
    bool strict = false;
    sub_verify->add_option("--claims", claims_arg,
                           "comma-separated ids among L1..L5,T31,T32,T41,T43 (default all)");
    sub_verify->add_option("--n-max", n_max, "range limit for every selected claim");
    sub_verify->add_flag("--strict", strict, "exit 1 when any counterexample is found");
    sub_verify->callback([&]() { exit_code = cmd_verify(rc, claims_arg, n_max, strict); });

    auto* sub_graph = app.add_subcommand("graph", "emit one maximal graph");
    sub_graph->fallthrough();
    int64_t graph_n = 0;
    std::string policy = "lex-min", graph_fmt = "edge-list";
    sub_graph->add_option("--n", graph_n, "number of vertices")->required();
    sub_graph->add_option("--policy", policy, "edge choice per class: lex-min, lex-max or random");
    sub_graph->add_option("--format", graph_fmt, "edge-list or dot");
    sub_graph->callback([&]() { exit_code = cmd_graph(rc, graph_n, policy, graph_fmt); });

    auto* sub_enum = app.add_subcommand("enumerate", "emit every maximal graph for small n");
    sub_enum->fallthrough();
    int64_t enum_n = 0;
    sub_enum->add_option("--n", enum_n, "number of vertices (capped at 12)")->required();
    sub_enum->callback([&]() { exit_code = cmd_enumerate(rc, enum_n); });

    auto* sub_sweep = app.add_subcommand("sweep", "bound reports for a range of n as CSV");
    sub_sweep->fallthrough();
    int64_t from = 0, to = 0;
    std::string out_path;
    sub_sweep->add_option("--from", from, "first n")->required();
    sub_sweep->add_option("--to", to, "last n")->required();
    sub_sweep->add_option("--out", out_path, "write the CSV to this file instead of stdout");
    sub_sweep->callback([&]() { exit_code = cmd_sweep(rc, from, to, out_path); });

    auto* sub_sets = app.add_subcommand("sets", "witness sets as CSV");
    sub_sets->fallthrough();
    int64_t sets_n = 0;
    std::string which_sets = "all";
    sub_sets->add_option("--n", sets_n, "number of vertices")->required();
    sub_sets->add_option("--sets", which_sets, "comma-separated ids among S1..S6 (default all)");
    sub_sets->callback([&]() { exit_code = cmd_sets(rc, sets_n, which_sets); });

    auto* sub_check = app.add_subcommand("check", "read an edge list and check labeling properties");
    sub_check->fallthrough();
    std::string check_path;
    sub_check->add_option("--file", check_path, "edge-list file, or - for stdin")->required();
    sub_check->callback([&]() { exit_code = cmd_check(check_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
