#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rowmix/approx.hpp"
#include "rowmix/constructions.hpp"
#include "rowmix/errors.hpp"
#include "rowmix/exact.hpp"
#include "rowmix/io.hpp"
#include "rowmix/swapping.hpp"
#include "rowmix/varbounds.hpp"

using namespace rowmix;

namespace {

// auto mode hands instances with more rows to brute force or refuses;
// explicit --solver dp is not capped
constexpr int kAutoDpRowCap = 16;

constexpr std::int64_t kMaxGeneratedCells = 50'000'000;

struct SolveFlags {
    std::string instance;
    std::string solver = "auto";
    std::uint64_t seed = 0;
    std::int64_t restarts = 8;
    std::string epsilon;
    std::int64_t budget_steps = 0;   // 0 keeps the library default
    std::int64_t budget_states = 0;  // 0 keeps the library default
    int threads = 1;
    std::string output;
};

struct SolveOutcome {
    MixResult result;
    std::string solver;
    RunParameters params;
};

DpConfig dp_config(const SolveFlags& f) {
    DpConfig cfg;
    if (f.budget_states > 0) cfg.max_states = f.budget_states;
    return cfg;
}

BruteConfig brute_config(const SolveFlags& f) {
    BruteConfig cfg;
    if (f.budget_states > 0) cfg.max_profiles = f.budget_states;
    return cfg;
}

SameMultisetConfig multiset_config(const SolveFlags& f) {
    SameMultisetConfig cfg;
    if (f.budget_states > 0) cfg.max_nodes = f.budget_states;
    return cfg;
}

FixedValuesetConfig valueset_config(const SolveFlags& f) {
    FixedValuesetConfig cfg;
    if (f.budget_states > 0) cfg.max_nodes = f.budget_states;
    return cfg;
}

RestartConfig restart_config(const SolveFlags& f) {
    RestartConfig cfg;
    cfg.swap.step_budget = f.budget_steps;
    cfg.threads = std::max(1, f.threads);
    return cfg;
}

RunParameters states_params(const SolveFlags& f) {
    RunParameters p;
    if (f.budget_states > 0) p.budget_states = f.budget_states;
    return p;
}

RunParameters swap_params(const SolveFlags& f) {
    RunParameters p;
    p.seed = f.seed;
    p.restarts = f.restarts;
    if (f.budget_steps > 0) p.budget_steps = f.budget_steps;
    return p;
}

bool zero_one_entries(const Matrix& A) {
    for (std::int64_t e : A.entries)
        if (e != 0 && e != 1) return false;
    return true;
}

int distinct_value_count(const Matrix& A) {
    std::set<std::int64_t> seen;
    for (std::int64_t e : A.entries) {
        seen.insert(e);
        if (seen.size() > 2) break;
    }
    return static_cast<int>(seen.size());
}

std::vector<std::int64_t> distinct_values(const Matrix& A) {
    std::set<std::int64_t> seen(A.entries.begin(), A.entries.end());
    return {seen.begin(), seen.end()};
}

bool shared_column_multiset(const Matrix& A) {
    std::vector<std::int64_t> first(A.m);
    for (int i = 0; i < A.m; ++i) first[i] = A.at(i, 0);
    std::sort(first.begin(), first.end());
    std::vector<std::int64_t> column(A.m);
    for (int j = 1; j < A.d; ++j) {
        for (int i = 0; i < A.m; ++i) column[i] = A.at(i, j);
        std::sort(column.begin(), column.end());
        if (column != first) return false;
    }
    return true;
}

Rational parse_epsilon(const SolveFlags& f) {
    if (f.epsilon.empty()) throw std::invalid_argument("--epsilon is required for the ptas solver");
    return parse_rational(f.epsilon);
}

// Runs a max-row-sum minimizer on the complement and maps the witness back;
// the same profile realizes both objectives.
template <typename GammaSolver>
MixResult beta_via_complement(const Matrix& A, GammaSolver&& solve) {
    const auto [comp, l] = complement(A);
    MixResult inner = solve(comp);
    if (inner.status.kind != StatusKind::exact)
        throw std::logic_error("complement routing expects an exact inner solver");
    MixResult out = result_for_profile(Objective::beta, A, std::move(inner.profile),
                                       Status::exact());
    if (out.value != beta_from_gamma(inner.value, A.d, l))
        throw std::logic_error("complement witness does not transfer");
    out.note = inner.note;
    return out;
}

SolveOutcome auto_gamma(const Matrix& A, const SolveFlags& f) {
    if (distinct_value_count(A) <= 2) return {two_value_gamma(A), "two_value", {}};
    if (A.d == 2) return {gamma_two_columns(A), "two_columns", {}};
    if (shared_column_multiset(A)) {
        try {
            return {same_multiset_gamma(A, multiset_config(f)), "same_multiset", states_params(f)};
        } catch (const BudgetExceeded&) {
        }
    }
    if (A.m <= kAutoDpRowCap) {
        try {
            return {dp_gamma(A, dp_config(f)), "dp", states_params(f)};
        } catch (const BudgetExceeded&) {
        }
    }
    try {
        return {brute_force_gamma(A, brute_config(f)), "brute", states_params(f)};
    } catch (const BudgetExceeded&) {
    }
    throw BudgetExceeded(
        "no exact solver fits this instance within its budgets; raise --budget-states or use "
        "--solver swap for a certified one-sided bound");
}

SolveOutcome auto_beta(const Matrix& A, const SolveFlags& f) {
    if (distinct_value_count(A) <= 2)
        return {beta_via_complement(A, [](const Matrix& C) { return two_value_gamma(C); }),
                "two_value",
                {}};
    if (A.d == 2) return {beta_two_columns(A), "two_columns", {}};
    if (shared_column_multiset(A)) {
        try {
            return {beta_via_complement(
                        A, [&](const Matrix& C) { return same_multiset_gamma(C, multiset_config(f)); }),
                    "same_multiset", states_params(f)};
        } catch (const BudgetExceeded&) {
        }
    }
    if (A.m <= kAutoDpRowCap) {
        try {
            return {beta_via_complement(A, [&](const Matrix& C) { return dp_gamma(C, dp_config(f)); }),
                    "dp", states_params(f)};
        } catch (const BudgetExceeded&) {
        }
    }
    try {
        return {brute_force_beta(A, brute_config(f)), "brute", states_params(f)};
    } catch (const BudgetExceeded&) {
    }
    throw BudgetExceeded(
        "no exact solver fits this instance within its budgets; raise --budget-states or use "
        "--solver swap for a certified one-sided bound");
}

SolveOutcome run_gamma(const Matrix& A, const SolveFlags& f) {
    if (f.solver == "auto") return auto_gamma(A, f);
    if (f.solver == "brute") return {brute_force_gamma(A, brute_config(f)), "brute", states_params(f)};
    if (f.solver == "dp") return {dp_gamma(A, dp_config(f)), "dp", states_params(f)};
    if (f.solver == "swap")
        return {randomized_gamma(A, f.restarts, f.seed, restart_config(f)), "swapping",
                swap_params(f)};
    if (f.solver == "2approx") return {two_approx_gamma_d3(A), "two_approx", {}};
    if (f.solver == "ptas") {
        RunParameters p;
        p.epsilon = parse_epsilon(f);
        if (f.budget_states > 0) p.budget_states = f.budget_states;
        return {ptas_gamma(A, *p.epsilon, valueset_config(f)), "ptas", p};
    }
    if (f.solver == "multiset")
        return {same_multiset_gamma(A, multiset_config(f)), "same_multiset", states_params(f)};
    if (f.solver == "valueset")
        return {fixed_valueset_gamma(A, distinct_values(A), valueset_config(f)), "fixed_valueset",
                states_params(f)};
    throw std::invalid_argument("unknown solver " + f.solver);
}

SolveOutcome run_beta(const Matrix& A, const SolveFlags& f) {
    if (f.solver == "auto") return auto_beta(A, f);
    if (f.solver == "brute") return {brute_force_beta(A, brute_config(f)), "brute", states_params(f)};
    if (f.solver == "dp")
        return {beta_via_complement(A, [&](const Matrix& C) { return dp_gamma(C, dp_config(f)); }),
                "dp", states_params(f)};
    if (f.solver == "swap")
        return {randomized_beta(A, f.restarts, f.seed, restart_config(f)), "swapping",
                swap_params(f)};
    if (f.solver == "multiset")
        return {beta_via_complement(
                    A, [&](const Matrix& C) { return same_multiset_gamma(C, multiset_config(f)); }),
                "same_multiset", states_params(f)};
    if (f.solver == "valueset")
        return {beta_via_complement(A,
                                    [&](const Matrix& C) {
                                        return fixed_valueset_gamma(C, distinct_values(C),
                                                                    valueset_config(f));
                                    }),
                "fixed_valueset", states_params(f)};
    if (f.solver == "2approx" || f.solver == "ptas")
        throw std::invalid_argument("solver " + f.solver +
                                    " bounds only the largest row sum; use brute, dp, swap, "
                                    "multiset, valueset, or auto for the smallest");
    throw std::invalid_argument("unknown solver " + f.solver);
}

struct CheckOutcome {
    bool mixable = false;
    std::optional<MixResult> witness;
    std::string solver;
};

CheckOutcome run_check(const Matrix& A, const SolveFlags& f) {
    const std::int64_t total = grand_total(A);
    if (total % A.m != 0) return {false, std::nullopt, "divisibility"};
    const std::int64_t target = total / A.m;

    if (zero_one_entries(A)) {
        ZeroOneOutcome outcome = zero_one_mixability(A);
        if (!outcome.mix) throw std::logic_error("balance refused although the total divides");
        return {true, std::move(outcome.mix), "zero_one"};
    }

    const auto decide = [&](MixResult r, const char* solver) {
        return CheckOutcome{r.value == target, std::move(r), solver};
    };
    if (distinct_value_count(A) <= 2) return decide(two_value_gamma(A), "two_value");
    if (A.d == 2) return decide(gamma_two_columns(A), "two_columns");
    if (A.m <= kAutoDpRowCap) {
        try {
            return decide(dp_gamma(A, dp_config(f)), "dp");
        } catch (const BudgetExceeded&) {
        }
    }
    try {
        return decide(brute_force_gamma(A, brute_config(f)), "brute");
    } catch (const BudgetExceeded&) {
    }
    throw BudgetExceeded(
        "no exact decision fits this instance within its budgets; raise --budget-states or "
        "compute one-sided bounds via gamma/beta --solver swap");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int emit(const std::string& rendered, const std::string& output) {
    if (output.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + output);
        out << rendered;
    }
    return 0;
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_solve(Objective objective, const SolveFlags& f) {
    const Matrix A = load_instance(f.instance);
    const auto t0 = std::chrono::steady_clock::now();
    SolveOutcome s = objective == Objective::gamma ? run_gamma(A, f) : run_beta(A, f);
    const auto doc = result_document(A, s.result, s.solver, s.params, ms_since(t0));
    return emit(render_document(doc), f.output);
}

int cmd_check(const SolveFlags& f) {
    const Matrix A = load_instance(f.instance);
    const auto t0 = std::chrono::steady_clock::now();
    CheckOutcome outcome = run_check(A, f);
    const auto doc = check_document(A, outcome.mixable, outcome.witness, outcome.solver,
                                    states_params(f), ms_since(t0));
    return emit(render_document(doc), f.output);
}

struct VarBoundFlags {
    std::string marginals;
    std::string alpha;
    int grid_n = 0;  // 0 accepts whatever the file carries
    std::string solver = "dp";
    std::int64_t restarts = 8;
    std::uint64_t seed = 0;
    std::string output;
};

int cmd_var_bounds(const VarBoundFlags& f) {
    const std::vector<DiscreteMarginal> marginals = load_marginals(f.marginals);
    const int N = marginals.front().N;
    if (f.grid_n > 0 && f.grid_n != N)
        throw std::invalid_argument("--N says " + std::to_string(f.grid_n) + " but the file carries N=" +
                                    std::to_string(N));

    VarBoundConfig cfg;
    RunParameters params;
    if (f.solver == "brute") {
        cfg.solver.kind = VarBoundSolver::Kind::brute;
    } else if (f.solver == "dp") {
        cfg.solver.kind = VarBoundSolver::Kind::dp;
    } else if (f.solver == "swap") {
        cfg.solver.kind = VarBoundSolver::Kind::swapping;
        cfg.solver.restarts = static_cast<int>(f.restarts);
        cfg.solver.seed = f.seed;
        params.seed = f.seed;
        params.restarts = f.restarts;
    } else {
        throw std::invalid_argument("unknown solver " + f.solver);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const VarBoundReport report = var_bounds(marginals, parse_rational(f.alpha), N, cfg);
    const auto doc = var_bounds_document(report, params, ms_since(t0));
    return emit(render_document(doc), f.output);
}

void guard_generated_size(std::int64_t rows, std::int64_t cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("dimensions must be positive");
    if (rows > kMaxGeneratedCells / cols)
        throw BudgetExceeded("generated instance would exceed " +
                             std::to_string(kMaxGeneratedCells) + " cells");
}

// ---- independent witness replay; no solver code, plain rational sums ----

bool is_index_permutation(const std::vector<int>& p, int m) {
    if (static_cast<int>(p.size()) != m) return false;
    std::vector<char> seen(m, 0);
    for (int v : p) {
        if (v < 0 || v >= m || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

int verify_mismatch(const std::string& detail) {
    std::cerr << "mismatch: " << detail << "\n";
    return 2;
}

int cmd_verify(const std::string& doc_path, const std::string& input_path) {
    const nlohmann::json doc = nlohmann::json::parse(read_text_file(doc_path));
    const std::string objective = doc.at("objective").get<std::string>();

    if (objective == "var_bounds") {
        const Rational alpha = parse_rational(doc.at("alpha").get<std::string>());
        const Rational lower = parse_rational(doc.at("lower").get<std::string>());
        const Rational upper = parse_rational(doc.at("upper").get<std::string>());
        if (!(Rational(0) < alpha && alpha < Rational(1)))
            return verify_mismatch("alpha " + format_rational(alpha) + " is outside (0, 1)");
        if (upper < lower)
            return verify_mismatch("interval is inverted: " + format_rational(lower) + " > " +
                                   format_rational(upper));
        std::cout << "consistent: interval documents carry no rearrangement witness; checked "
                     "alpha and interval order only\n";
        return 0;
    }

    if (input_path.empty())
        throw std::invalid_argument("replaying a " + objective + " document needs the instance file");
    const Matrix A = load_instance(input_path);
    const auto cell = [&](int i, int j) { return Rational(A.at(i, j) - A.shift, A.scale); };
    const Rational claimed = parse_rational(doc.at("value").get<std::string>());

    if (doc.at("profile").is_null()) {
        if (objective != "check" || doc.at("mixable").get<bool>())
            return verify_mismatch("only a negative check may omit the witness");
        Rational total(0);
        for (int i = 0; i < A.m; ++i)
            for (int j = 0; j < A.d; ++j) total = total + cell(i, j);
        const Rational split = total / Rational(A.m);
        if (split != claimed)
            return verify_mismatch("equal-split target is " + format_rational(split) + ", document says " +
                                   format_rational(claimed));
        // row sums of this instance live on the 1/scale grid; a target off the
        // grid is unreachable, one on it would need a real witness
        if ((split * Rational(A.scale)).is_integer())
            return verify_mismatch("equal-split target " + format_rational(split) +
                                   " sits on the instance value grid, so this refusal proves nothing");
        std::cout << "verified: the grand total splits into " << format_rational(split)
                  << " per row, which no row sum of this instance can reach\n";
        return 0;
    }

    const auto perms = doc.at("profile").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(perms.size()) != A.d)
        return verify_mismatch("profile has " + std::to_string(perms.size()) + " columns, instance has " +
                               std::to_string(A.d));
    for (int j = 0; j < A.d; ++j)
        if (!is_index_permutation(perms[j], A.m))
            return verify_mismatch("profile column " + std::to_string(j) +
                                   " is not a permutation of the rows");

    std::vector<Rational> sums(A.m, Rational(0));
    for (int j = 0; j < A.d; ++j)
        for (int i = 0; i < A.m; ++i) sums[perms[j][i]] = sums[perms[j][i]] + cell(i, j);

    const auto& reported = doc.at("row_sums");
    if (static_cast<int>(reported.size()) != A.m)
        return verify_mismatch("document lists " + std::to_string(reported.size()) + " row sums for " +
                               std::to_string(A.m) + " rows");
    for (int i = 0; i < A.m; ++i)
        if (parse_rational(reported[i].get<std::string>()) != sums[i])
            return verify_mismatch("row " + std::to_string(i) + " sums to " + format_rational(sums[i]) +
                                   ", document says " + reported[i].get<std::string>());

    Rational best = sums.front();
    if (objective == "gamma" || (objective == "check" && !doc.at("mixable").get<bool>())) {
        for (const Rational& s : sums)
            if (best < s) best = s;
    } else if (objective == "beta") {
        for (const Rational& s : sums)
            if (s < best) best = s;
    } else if (objective == "check") {
        for (const Rational& s : sums)
            if (s != best)
                return verify_mismatch("row sums are not all equal although the document claims mixable");
    } else {
        throw std::invalid_argument("unknown objective " + objective);
    }
    if (best != claimed)
        return verify_mismatch("replayed objective is " + format_rational(best) + ", document says " +
                               format_rational(claimed));

    std::cout << "verified: profile reproduces every row sum and the claimed value "
              << format_rational(claimed) << "\n";
    return 0;
}

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
    cmd->add_option("instance", f.instance, "instance CSV")->required();
    cmd->add_option("--solver", f.solver, "solver to run")
        ->check(CLI::IsMember({"auto", "brute", "dp", "swap", "2approx", "ptas", "multiset",
                               "valueset"}));
    cmd->add_option("--seed", f.seed, "seed for the randomized solver");
    cmd->add_option("--restarts", f.restarts, "restarts for the randomized solver");
    cmd->add_option("--epsilon", f.epsilon, "accuracy target for the ptas solver, e.g. 1/4");
    cmd->add_option("--budget-steps", f.budget_steps, "local-search step budget");
    cmd->add_option("--budget-states", f.budget_states, "explored state budget for exact solvers");
    cmd->add_option("--threads", f.threads, "worker threads for the randomized solver");
    cmd->add_option("--output", f.output, "write the document here instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and approximate bounds on row sums under column rearrangement"};
    app.require_subcommand(1);

    SolveFlags gamma_flags;
    auto* gamma_cmd = app.add_subcommand("gamma", "minimize the largest row sum");
    add_solve_flags(gamma_cmd, gamma_flags);

    SolveFlags beta_flags;
    auto* beta_cmd = app.add_subcommand("beta", "maximize the smallest row sum");
    add_solve_flags(beta_cmd, beta_flags);

    SolveFlags check_flags;
    auto* check_cmd = app.add_subcommand("check", "decide whether all row sums can be equalized");
    check_cmd->add_option("instance", check_flags.instance, "instance CSV")->required();
    check_cmd->add_option("--budget-states", check_flags.budget_states,
                          "explored state budget for exact solvers");
    check_cmd->add_option("--output", check_flags.output, "write the document here instead of stdout");

    VarBoundFlags var_flags;
    auto* var_cmd = app.add_subcommand("var-bounds", "quantile interval over all dependence structures");
    var_cmd->add_option("marginals", var_flags.marginals, "marginals CSV")->required();
    var_cmd->add_option("--alpha", var_flags.alpha, "probability level in (0, 1)")->required();
    var_cmd->add_option("--N", var_flags.grid_n, "expected grid size, checked against the file");
    var_cmd->add_option("--solver", var_flags.solver, "solver for both tails")
        ->check(CLI::IsMember({"brute", "dp", "swap"}));
    var_cmd->add_option("--restarts", var_flags.restarts, "restarts for the randomized solver");
    var_cmd->add_option("--seed", var_flags.seed, "seed for the randomized solver");
    var_cmd->add_option("--output", var_flags.output, "write the document here instead of stdout");

    auto* gen_cmd = app.add_subcommand("gen", "write a generated instance as CSV");
    gen_cmd->require_subcommand(1);
    struct GenFlags {
        std::int64_t N = 0;
        int d = 0;
        int k = 0;
        std::int64_t max_rows = 1'000'000;
        std::vector<std::int64_t> values, a, b, c;
        std::string left, right;
        std::string output;
    } gen;
    const auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--output", gen.output, "write the CSV here instead of stdout");
    };
    auto* gen_consecutive = gen_cmd->add_subcommand("consecutive", "d columns holding 1..N");
    gen_consecutive->add_option("--N", gen.N, "values per column")->required();
    gen_consecutive->add_option("--d", gen.d, "columns")->required();
    add_output(gen_consecutive);
    auto* gen_mixable = gen_cmd->add_subcommand(
        "mixable-consecutive", "d columns holding 1..d^k, stacked so every row sum is equal");
    gen_mixable->add_option("--d", gen.d, "columns")->required();
    gen_mixable->add_option("--k", gen.k, "exponent; the instance has d^k rows")->required();
    gen_mixable->add_option("--max-rows", gen.max_rows, "refusal threshold on d^k");
    add_output(gen_mixable);
    auto* gen_adversarial = gen_cmd->add_subcommand(
        "adversarial-identity", "three identical sorted columns 1..N");
    gen_adversarial->add_option("--N", gen.N, "values per column")->required();
    add_output(gen_adversarial);
    auto* gen_partition = gen_cmd->add_subcommand(
        "partition", "the given values over a zero row; equalizable iff they split evenly");
    gen_partition->add_option("--values", gen.values, "comma-separated integers")
        ->required()
        ->delimiter(',');
    add_output(gen_partition);
    auto* gen_n3dm = gen_cmd->add_subcommand(
        "n3dm", "three columns from three sequences; equalizable iff triples can hit one target");
    gen_n3dm->add_option("--a", gen.a, "first column")->required()->delimiter(',');
    gen_n3dm->add_option("--b", gen.b, "second column")->required()->delimiter(',');
    gen_n3dm->add_option("--c", gen.c, "third column")->required()->delimiter(',');
    add_output(gen_n3dm);
    auto* gen_glue = gen_cmd->add_subcommand(
        "glue", "block combination of two constant-row-sum instances");
    gen_glue->add_option("left", gen.left, "first instance CSV")->required();
    gen_glue->add_option("right", gen.right, "second instance CSV")->required();
    add_output(gen_glue);

    std::string verify_doc, verify_input;
    auto* verify_cmd = app.add_subcommand(
        "verify", "replay a document's profile against its instance without any solver");
    verify_cmd->add_option("document", verify_doc, "result document JSON")->required();
    verify_cmd->add_option("instance", verify_input, "instance CSV the document was computed from");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gamma_cmd->parsed()) return cmd_solve(Objective::gamma, gamma_flags);
        if (beta_cmd->parsed()) return cmd_solve(Objective::beta, beta_flags);
        if (check_cmd->parsed()) return cmd_check(check_flags);
        if (var_cmd->parsed()) return cmd_var_bounds(var_flags);
        if (verify_cmd->parsed()) return cmd_verify(verify_doc, verify_input);
        if (gen_cmd->parsed()) {
            Matrix out;
            if (gen_consecutive->parsed()) {
                guard_generated_size(gen.N, gen.d);
                out = consecutive_matrix({static_cast<int>(gen.N), gen.d, std::nullopt});
            } else if (gen_mixable->parsed()) {
                out = mixable_consecutive_construction(gen.d, gen.k, gen.max_rows).first;
            } else if (gen_adversarial->parsed()) {
                guard_generated_size(gen.N, 3);
                out = adversarial_identity(static_cast<int>(gen.N));
            } else if (gen_partition->parsed()) {
                out = partition_instance(gen.values);
            } else if (gen_n3dm->parsed()) {
                out = n3dm_instance(gen.a, gen.b, gen.c);
            } else if (gen_glue->parsed()) {
                const Matrix left = load_instance(gen.left);
                const Matrix right = load_instance(gen.right);
                if (left.scale != right.scale)
                    throw std::invalid_argument("glue operands must share one scale; files use scale=" +
                                                std::to_string(left.scale) + " and scale=" +
                                                std::to_string(right.scale));
                out = glue(left, right);
                out.scale = left.scale;
            }
            return emit(write_instance(out), gen.output);
        }
        throw std::invalid_argument("no subcommand selected");
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
