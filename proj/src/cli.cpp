#include "diagcount/cli.hpp"

#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "diagcount/errors.hpp"
#include "diagcount/oracle.hpp"
#include "diagcount/type_engine.hpp"
#include "diagcount/valuation_graph.hpp"

namespace diagcount {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<uint64_t> parse_u64_list(const std::string& csv, const char* what) {
    std::vector<uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            uint64_t v = std::stoull(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError(std::string(what) + ": empty list");
    return out;
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostringstream& os) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, os);
        }
    } else if (j.is_string()) {
        os << prefix << ": " << j.get<std::string>() << "\n";
    } else {
        os << prefix << ": " << j.dump() << "\n";
    }
}

std::string render(const ordered_json& doc, const std::string& format) {
    if (format == "text") {
        std::ostringstream os;
        flatten(doc, "", os);
        return os.str();
    }
    return doc.dump(2) + "\n";
}

ordered_json ratio_json(const ExactRatio& r) {
    return ordered_json{{"num", dec_string(r.num)},
                        {"den", dec_string(r.den)},
                        {"decimal", r.decimal()}};
}

Modulus checked_prime_power(uint64_t p, unsigned k) {
    if (!is_prime_u64(p)) {
        std::ostringstream os;
        os << "p must be prime, got " << p;
        throw UsageError(os.str());
    }
    return prime_power_modulus(p, k);
}

std::string partition_string(const MatrixType& type) {
    std::ostringstream os;
    for (int i = 0; i < type.g; ++i) {
        if (i) os << '+';
        os << type.mults[i];
    }
    return os.str();
}

std::string weights_string(const MatrixType& type) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < type.g; ++i) {
        for (int j = i + 1; j < type.g; ++j) {
            if (!first) os << ';';
            os << type.weight(i, j);
            first = false;
        }
    }
    return os.str();
}

// Documented desk-scale envelope of the brute-force oracle.
bool brute_supported(int n, uint64_t m) {
    return (n <= 2 && m <= 9) || (n == 3 && m <= 4) || (n == 4 && m <= 3);
}

ordered_json cmd_count(int n, uint64_t p, unsigned k, const std::string& method,
                       uint64_t budget) {
    Modulus mod = checked_prime_power(p, k);
    BigCount count;
    if (method == "engine") {
        count = diag_count_engine(n, p, k);
    } else if (method == "closed") {
        if (n == 2) {
            count = diag2_closed(p, k);
        } else if (n == 3) {
            count = diag3_closed(p, k);
        } else if (n == 4) {
            count = diag4_closed(p, k);
        } else {
            throw UsageError("closed form available for n in {2,3,4} only");
        }
    } else if (method == "semidirect") {
        count = diag_count_semidirect(n, p, k, budget ? budget : 1000000);
    } else if (method == "brute") {
        OracleBudget ob;
        if (budget) ob.max_space = budget;
        count = diag_count_brute(n, mod, OrbitStrategy::Auto, ob);
    } else {
        throw UsageError("unknown method: " + method);
    }
    return ordered_json{{"n", n}, {"p", p}, {"k", k}, {"method", method},
                        {"count", dec_string(count)}};
}

ordered_json cmd_types(int n, uint64_t p, unsigned k) {
    checked_prime_power(p, k);
    auto reports = enumerate_types(n, p, k);
    ordered_json rows = ordered_json::array();
    BigCount total = 0;
    for (const auto& rep : reports) {
        total += rep.contribution;
        rows.push_back(ordered_json{
            {"partition", partition_string(rep.type)},
            {"weights", weights_string(rep.type)},
            {"t", dec_string(rep.t)},
            {"c", dec_string(rep.c)},
            {"s", dec_string(rep.s)},
            {"contribution", dec_string(rep.contribution)},
            {"t_block_arrangements", dec_string(rep.t_block_arrangements)}});
    }
    return ordered_json{{"n", n},
                        {"p", p},
                        {"k", k},
                        {"rows", std::move(rows)},
                        {"total", dec_string(total)}};
}

std::string types_csv(int n, uint64_t p, unsigned k) {
    checked_prime_power(p, k);
    std::ostringstream os;
    os << "partition,weights,t,c,s,contribution\n";
    BigCount total = 0;
    for (const auto& rep : enumerate_types(n, p, k)) {
        total += rep.contribution;
        os << partition_string(rep.type) << ',' << weights_string(rep.type) << ','
           << dec_string(rep.t) << ',' << dec_string(rep.c) << ',' << dec_string(rep.s)
           << ',' << dec_string(rep.contribution) << "\n";
    }
    os << "TOTAL,,,,," << dec_string(total) << "\n";
    return os.str();
}

ordered_json cmd_graph(uint64_t modulus, const std::vector<uint64_t>& entries,
                       bool with_dot) {
    Modulus mod = modulus_from_value(modulus);
    if (!mod.is_prime_power) {
        throw UsageError("modulus must be a prime power");
    }
    for (uint64_t e : entries) {
        if (e >= mod.value) throw UsageError("entries must lie in [0, modulus)");
    }
    ValuationGraph graph = build_graph(entries, mod);
    PermissibleTree tree = permissible_tree(graph);

    ordered_json weights = ordered_json::array();
    for (int i = 0; i < graph.g; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < graph.g; ++j) row.push_back(graph.weight(i, j));
        weights.push_back(std::move(row));
    }
    ordered_json tree_json = ordered_json::array();
    for (const auto& e : tree.edges) {
        tree_json.push_back(ordered_json{{"u", e.u}, {"v", e.v}, {"weight", e.w}});
    }
    ordered_json cells = ordered_json::array();
    for (const auto& cell : tree.cells) {
        ordered_json edges = ordered_json::array();
        for (int idx : cell.edges) {
            edges.push_back(ordered_json::array(
                {tree.edges[idx].u, tree.edges[idx].v}));
        }
        cells.push_back(ordered_json{{"weight", cell.weight}, {"edges", std::move(edges)}});
    }

    ordered_json payload{{"modulus", modulus},
                         {"g", graph.g},
                         {"entries", graph.labels},
                         {"weights", std::move(weights)},
                         {"distinct_weights", graph.distinct_weights()},
                         {"tree", std::move(tree_json)},
                         {"cells", std::move(cells)},
                         {"aut", dec_string(aut_order(graph))},
                         {"classes", dec_string(count_classes(graph, mod.p, mod.k))}};
    if (with_dot) {
        payload["dot"] = to_dot(graph);
        payload["tree_dot"] = to_dot(tree);
    }
    return payload;
}

ordered_json cmd_classes(int g) {
    auto classes = enumerate_graph_classes(g);  // UsageError when g out of range
    ordered_json names = ordered_json::array();
    for (const auto& cls : classes) names.push_back(cls.canon);
    return ordered_json{{"g", g},
                        {"a_g", dec_string(BigCount((unsigned long)classes.size()))},
                        {"classes", std::move(names)}};
}

ordered_json cmd_verify(int n, uint64_t p, unsigned k, bool& all_ok) {
    Modulus mod = checked_prime_power(p, k);
    ordered_json checks = ordered_json::array();
    all_ok = true;

    BigCount engine = diag_count_engine(n, p, k);
    auto add_equal = [&](const char* name, const BigCount& lhs, const BigCount& rhs) {
        bool ok = lhs == rhs;
        all_ok = all_ok && ok;
        checks.push_back(ordered_json{{"check", name},
                                      {"lhs", dec_string(lhs)},
                                      {"rhs", dec_string(rhs)},
                                      {"ok", ok}});
    };
    auto add_skipped = [&](const char* name, const char* why) {
        checks.push_back(ordered_json{{"check", name}, {"skipped", true}, {"why", why}});
    };

    // engine vs semidirect
    BigCount multisets = binomial(BigCount((unsigned long)mod.value) + n - 1, unsigned(n));
    if (multisets <= 1000000) {
        add_equal("engine_vs_semidirect", engine, diag_count_semidirect(n, p, k));
    } else {
        add_skipped("engine_vs_semidirect", "multiset budget");
    }

    // engine vs closed form
    if (n == 2) {
        add_equal("engine_vs_closed", engine, diag2_closed(p, k));
    } else if (n == 3) {
        add_equal("engine_vs_closed", engine, diag3_closed(p, k));
    } else if (n == 4) {
        add_equal("engine_vs_closed", engine, diag4_closed(p, k));
    } else {
        add_skipped("engine_vs_closed", "no closed form for this n");
    }

    // engine vs brute-force conjugation
    if (brute_supported(n, mod.value)) {
        add_equal("engine_vs_brute", engine, diag_count_brute(n, mod));
    } else {
        add_skipped("engine_vs_brute", "outside the brute-force envelope");
    }

    // |GL_n| formula vs explicit enumeration
    BigCount space = big_pow(mod.value, unsigned(n) * unsigned(n));
    if (space <= (uint64_t(1) << 20)) {
        add_equal("gl_order_vs_enumeration", gl_order(n, p, k),
                  BigCount((unsigned long)count_gl(n, mod)));
    } else {
        add_skipped("gl_order_vs_enumeration", "matrix space budget");
    }

    // centralizer formula vs commutant scans, and s*c = |GL| throughout
    if (space <= (uint64_t(1) << 20)) {
        auto specs = all_diagonal_specs(n, mod);
        auto scans = commutant_counts(specs);
        BigCount gl_n = gl_order(n, p, k);
        bool cent_ok = true;
        bool lagrange_ok = true;
        for (size_t i = 0; i < specs.size(); ++i) {
            MatrixType type = classify_diagonal(specs[i]);
            BigCount c = centralizer_order(type, p, k);
            if (c != BigCount((unsigned long)scans[i])) cent_ok = false;
            if (class_size(type, p, k) * c != gl_n) lagrange_ok = false;
        }
        all_ok = all_ok && cent_ok && lagrange_ok;
        checks.push_back(ordered_json{{"check", "centralizer_vs_commutant_scan"},
                                      {"specs", specs.size()},
                                      {"ok", cent_ok}});
        checks.push_back(ordered_json{{"check", "orbit_stabilizer_product"},
                                      {"specs", specs.size()},
                                      {"ok", lagrange_ok}});
    } else {
        add_skipped("centralizer_vs_commutant_scan", "matrix space budget");
        add_skipped("orbit_stabilizer_product", "matrix space budget");
    }

    // uniqueness of diagonalization
    if (brute_supported(n, mod.value)) {
        auto report = verify_unique_diagonalization(n, mod);
        all_ok = all_ok && report.all_disjoint;
        checks.push_back(ordered_json{{"check", "orbit_disjointness"},
                                      {"specs", report.spec_count},
                                      {"pairs", report.pairs_checked},
                                      {"ok", report.all_disjoint}});
    } else {
        add_skipped("orbit_disjointness", "outside the brute-force envelope");
    }

    return ordered_json{{"n", n},
                        {"p", p},
                        {"k", k},
                        {"engine_count", dec_string(engine)},
                        {"checks", std::move(checks)},
                        {"all_ok", all_ok}};
}

ordered_json cmd_proportion(int n, unsigned k, const std::vector<uint64_t>& primes) {
    ordered_json rows = ordered_json::array();
    for (uint64_t p : primes) {
        checked_prime_power(p, k);
        BigCount count = diag_count_engine(n, p, k);
        BigCount total = big_pow(p, (unsigned long)(k) * unsigned(n) * unsigned(n));
        rows.push_back(ordered_json{{"p", p},
                                    {"count", dec_string(count)},
                                    {"total", dec_string(total)},
                                    {"ratio", ratio_json(ExactRatio(count, total))}});
    }
    return ordered_json{{"n", n},
                        {"k", k},
                        {"target", ratio_json(ExactRatio(1, factorial(unsigned(n))))},
                        {"rows", std::move(rows)}};
}

ordered_json cmd_demo(uint64_t modulus, bool& all_ok) {
    Modulus mod = modulus_from_value(modulus);
    bool z6 = z6_counterexample_check();
    JordanDemoReport jordan = jordan_demo_checks();

    auto pairs = similar_diagonal_pairs(2, mod);
    ordered_json pairs_json = ordered_json::array();
    bool has_classic_pair = false;
    for (const auto& [a, b] : pairs) {
        pairs_json.push_back(ordered_json::array({a.entries, b.entries}));
        if (a.entries == std::vector<uint64_t>{2, 3} &&
            b.entries == std::vector<uint64_t>{0, 5}) {
            has_classic_pair = true;
        }
        if (a.entries == std::vector<uint64_t>{0, 5} &&
            b.entries == std::vector<uint64_t>{2, 3}) {
            has_classic_pair = true;
        }
    }
    // over a prime power no such pair may exist; over Z_6 the classic one must
    bool scan_consistent = mod.is_prime_power ? pairs.empty()
                          : (mod.value == 6 ? has_classic_pair : true);

    all_ok = z6 && jordan.ok() && scan_consistent;
    return ordered_json{
        {"z6_counterexample", z6},
        {"jordan_identity", jordan.nilpotent_conjugation_identity},
        {"jordan_blocks_without_jcf", jordan.shifted_blocks_lack_jordan_form},
        {"modulus", modulus},
        {"similar_diagonal_pairs", std::move(pairs_json)},
        {"scan_consistent", scan_consistent},
        {"all_ok", all_ok}};
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CLI::App app{"exact enumeration of matrices diagonalizable over Z_{p^k}"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));

    int n = 2;
    uint64_t p = 2;
    unsigned k = 1;
    std::string method = "engine";
    uint64_t budget = 0;
    std::string out = "json";
    uint64_t modulus = 0;
    std::string entries_csv;
    std::string primes_csv;
    bool with_dot = false;
    int g = 2;

    auto* count_cmd = app.add_subcommand("count", "count diagonalizable matrices");
    count_cmd->add_option("--n", n, "matrix dimension")->required()->check(CLI::Range(1, 16));
    count_cmd->add_option("--p", p, "prime base")->required();
    count_cmd->add_option("--k", k, "exponent")->required()->check(CLI::Range(1u, 62u));
    count_cmd->add_option("--method", method, "engine|closed|semidirect|brute")
        ->check(CLI::IsMember({"engine", "closed", "semidirect", "brute"}));
    count_cmd->add_option("--budget", budget, "method-specific budget override");

    auto* types_cmd = app.add_subcommand("types", "per-type census table");
    types_cmd->add_option("--n", n)->required()->check(CLI::Range(1, 16));
    types_cmd->add_option("--p", p)->required();
    types_cmd->add_option("--k", k)->required()->check(CLI::Range(1u, 62u));
    types_cmd->add_option("--out", out, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    auto* graph_cmd = app.add_subcommand("graph", "analyze a valuation graph");
    graph_cmd->add_option("--modulus", modulus, "prime-power modulus")->required();
    graph_cmd->add_option("--entries", entries_csv, "distinct residues, comma separated")
        ->required();
    graph_cmd->add_flag("--dot", with_dot, "include DOT renderings");

    auto* classes_cmd = app.add_subcommand("classes", "abstract valuation-graph classes");
    classes_cmd->add_option("--g", g, "vertex count")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run the cross-method checks");
    verify_cmd->add_option("--n", n)->required()->check(CLI::Range(1, 16));
    verify_cmd->add_option("--p", p)->required();
    verify_cmd->add_option("--k", k)->required()->check(CLI::Range(1u, 62u));

    auto* prop_cmd = app.add_subcommand("proportion", "diagonalizable proportion table");
    prop_cmd->add_option("--n", n)->required()->check(CLI::Range(1, 16));
    prop_cmd->add_option("--k", k)->required()->check(CLI::Range(1u, 62u));
    prop_cmd->add_option("--primes", primes_csv, "comma-separated primes")->required();

    auto* demo_cmd = app.add_subcommand("demo", "composite-modulus and Jordan demos");
    demo_cmd->add_option("--modulus", modulus, "modulus for the pair scan (default 6)");

    std::vector<const char*> argv;
    argv.push_back("diagcount");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return CommandResult{0, app.help()};
    } catch (const CLI::ParseError& e) {
        return CommandResult{2, std::string("usage error: ") + e.what() + "\n"};
    }

    ordered_json doc;
    int exit_code = 0;
    try {
        if (count_cmd->parsed()) {
            doc["command"] = "count";
            doc["params"] = ordered_json{{"n", n}, {"p", p}, {"k", k}, {"method", method}};
            doc["payload"] = cmd_count(n, p, k, method, budget);
        } else if (types_cmd->parsed()) {
            if (out == "csv") {
                return CommandResult{0, types_csv(n, p, k)};
            }
            doc["command"] = "types";
            doc["params"] = ordered_json{{"n", n}, {"p", p}, {"k", k}, {"out", out}};
            doc["payload"] = cmd_types(n, p, k);
        } else if (graph_cmd->parsed()) {
            doc["command"] = "graph";
            doc["params"] = ordered_json{{"modulus", modulus}, {"entries", entries_csv}};
            doc["payload"] =
                cmd_graph(modulus, parse_u64_list(entries_csv, "--entries"), with_dot);
        } else if (classes_cmd->parsed()) {
            doc["command"] = "classes";
            doc["params"] = ordered_json{{"g", g}};
            doc["payload"] = cmd_classes(g);
        } else if (verify_cmd->parsed()) {
            bool all_ok = true;
            doc["command"] = "verify";
            doc["params"] = ordered_json{{"n", n}, {"p", p}, {"k", k}};
            doc["payload"] = cmd_verify(n, p, k, all_ok);
            exit_code = all_ok ? 0 : 1;
        } else if (prop_cmd->parsed()) {
            doc["command"] = "proportion";
            doc["params"] = ordered_json{{"n", n}, {"k", k}, {"primes", primes_csv}};
            doc["payload"] = cmd_proportion(n, k, parse_u64_list(primes_csv, "--primes"));
        } else if (demo_cmd->parsed()) {
            bool all_ok = true;
            doc["command"] = "demo";
            doc["params"] = ordered_json{{"modulus", modulus ? modulus : 6}};
            doc["payload"] = cmd_demo(modulus ? modulus : 6, all_ok);
            exit_code = all_ok ? 0 : 1;
        } else {
            return CommandResult{0, app.help()};
        }
    } catch (const UsageError& e) {
        return CommandResult{2, std::string("usage error: ") + e.what() + "\n"};
    } catch (const UnsupportedOperationError& e) {
        return CommandResult{2, std::string("usage error: ") + e.what() + "\n"};
    } catch (const BudgetExceededError& e) {
        return CommandResult{2, std::string("budget error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return CommandResult{1, std::string("error: ") + e.what() + "\n"};
    }

    doc["exit_code"] = exit_code;
    return CommandResult{exit_code, render(doc, format)};
}

}  // namespace diagcount
