#include "commbound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "commbound/approx.hpp"
#include "commbound/bounds.hpp"
#include "commbound/composer.hpp"
#include "commbound/error.hpp"
#include "commbound/groupcomp.hpp"
#include "commbound/linalg.hpp"
#include "commbound/pattern.hpp"
#include "commbound/suites.hpp"

namespace commbound::cli {

using json = nlohmann::ordered_json;

std::string to_string(Command c) {
    switch (c) {
        case Command::analyze_matrix: return "analyze-matrix";
        case Command::approx_degree: return "approx-degree";
        case Command::compose: return "compose";
        case Command::lower_bound: return "lower-bound";
        case Command::group_check: return "group-check";
        case Command::search_balanced: return "search-balanced";
        case Command::verify_suite: return "verify-suite";
    }
    return "?";
}

namespace {

std::optional<SignMatrix> named_matrix(const std::string& name) {
    if (name == "S4") return named::s4();
    if (name == "S6") return named::s6();
    if (name == "XOR2") return named::xor2();
    if (name == "H2") return named::hadamard2();
    return std::nullopt;
}

bool is_builtin_function(const std::string& spec) { return spec.find(':') != std::string::npos; }

void require_file(const std::string& path, const std::string& flag) {
    if (!std::filesystem::is_regular_file(path)) throw ArgumentError(flag + ": no such file: " + path);
}

void require_matrix(const std::string& value, const std::string& flag) {
    if (!named_matrix(value)) require_file(value, flag);
}

void require_function(const std::string& value, const std::string& flag) {
    if (is_builtin_function(value)) {
        try {
            builtin_function(value);
        } catch (const ArgumentError& e) {
            throw ArgumentError(flag + ": " + e.what());
        }
    } else {
        require_file(value, flag);
    }
}

void require_epsilon(double e, const std::string& flag) {
    if (!(e >= 0.0 && e < 1.0)) throw ArgumentError(flag + " must lie in [0, 1)");
}

SignMatrix load_matrix(const std::string& value) {
    if (auto m = named_matrix(value)) return *m;
    return read_sign_matrix(value);
}

// Doubles carry 12 significant digits so reports diff cleanly.
double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

json nums(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

json matrix_json(const SignMatrix& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        a.push_back(std::move(row));
    }
    return a;
}

json bound_json(const BoundReport& b) {
    json j;
    j["theorem"] = b.theorem;
    j["applicable"] = b.applicable;
    j["main_term"] = b.main_term ? num(*b.main_term) : json(nullptr);
    json in = json::object();
    for (const auto& [k, v] : b.intermediates) in[k] = num(v);
    j["intermediates"] = std::move(in);
    j["warnings"] = b.warnings;
    if (!b.reason.empty()) j["reason"] = b.reason;
    return j;
}

bool bound_useful(const BoundReport& b) { return b.applicable && b.main_term && *b.main_term > 0.0; }

json config_json(const RunConfig& c) {
    json j;
    switch (c.command) {
        case Command::analyze_matrix:
            j["input"] = c.input;
            j["pattern"] = c.pattern;
            j["tolerance"] = num(c.tolerance);
            j["enumeration_cap"] = c.enumeration_cap;
            break;
        case Command::approx_degree:
            j["function"] = c.function;
            j["epsilon"] = num(c.epsilon);
            j["dual"] = c.dual;
            break;
        case Command::compose:
            j["function"] = c.function;
            j["inner"] = c.inner;
            j["blocks"] = c.blocks ? json(*c.blocks) : json(nullptr);
            j["verify_rank"] = c.verify_rank;
            j["witness"] = c.witness;
            j["epsilon"] = num(c.epsilon);
            j["mu"] = c.mu.empty() ? json(nullptr) : json(c.mu);
            j["entry_cap"] = c.entry_cap;
            j["matrix_out"] = c.matrix_out.empty() ? json(nullptr) : json(c.matrix_out);
            break;
        case Command::lower_bound:
            j["theorem"] = c.theorem;
            j["function"] = c.function;
            j["inner"] = c.inner;
            j["mu"] = c.mu.empty() ? json(nullptr) : json(c.mu);
            j["epsilon0"] = num(c.epsilon0);
            j["enumeration_cap"] = c.enumeration_cap;
            break;
        case Command::group_check:
            j["gmap"] = c.gmaps;
            j["table"] = c.table.empty() ? json(nullptr) : json(c.table);
            j["values"] = c.values.empty() ? json(nullptr) : json(c.values);
            j["hard"] = c.hard;
            j["epsilon"] = num(c.epsilon);
            j["search_modulus"] = c.search_modulus;
            j["rows"] = c.rows;
            j["cols"] = c.cols;
            j["trials"] = c.trials;
            j["seed"] = c.seed;
            break;
        case Command::search_balanced:
            j["rows"] = c.rows;
            j["cols"] = c.cols;
            j["min_rank"] = c.min_rank;
            j["forbidden"] = c.forbidden.empty() ? json(nullptr) : json(c.forbidden);
            j["max_results"] = c.max_results;
            break;
        case Command::verify_suite:
            j["suites"] = c.suites;
            j["seed"] = c.seed;
            break;
    }
    j["output"] = c.output.empty() ? json(nullptr) : json(c.output);
    return j;
}

struct Outcome {
    json result;
    int code = kOk;
};

Outcome analyze_matrix(const RunConfig& c) {
    const SignMatrix a = load_matrix(c.input);
    const SignMatrix pattern = load_matrix(c.pattern);
    json r;
    r["rows"] = a.rows();
    r["cols"] = a.cols();
    const auto bal = balance_check(a);
    r["balanced"] = bal.balanced;
    r["strongly_balanced"] = bal.strongly_balanced;
    r["row_sums"] = bal.row_sums;
    r["col_sums"] = bal.col_sums;
    r["rank"] = exact_rank(a);
    const auto sp = spectrum(a, c.tolerance);
    r["numeric_rank"] = sp.numeric_rank;
    r["singular_values"] = nums(sp.singular_values);
    r["spectral_norm"] = num(sp.spectral_norm);
    r["trace_norm"] = num(sp.trace_norm);
    r["frobenius_norm"] = num(sp.frobenius_norm);
    const auto sh = shaltiel_verify(a, c.enumeration_cap);
    r["normalized_norm"] = num(sh.normalized_norm);
    r["discrepancy"] = num(sh.disc);
    r["shaltiel_lhs"] = num(sh.lhs);
    r["shaltiel_holds"] = sh.holds;
    const auto g2 = gamma2_star_interval(a, DistributionMatrix::uniform(a.rows(), a.cols()), c.enumeration_cap);
    r["gamma2_star"] = {{"lo", num(g2.lo)}, {"hi", num(g2.hi)}};
    if (pattern.rows() <= a.rows() && pattern.cols() <= a.cols()) {
        const auto m = contains_pattern(a, pattern, PatternMode::up_to_permutation);
        r["pattern_free"] = !m.found;
        if (m.witness) r["pattern_witness"] = {{"rows", m.witness->rows}, {"cols", m.witness->cols}};
    } else {
        r["pattern_free"] = true;
    }
    r["canonical_form"] = matrix_json(canonical_form(a));
    return {r, kOk};
}

json spectrum_json(const FourierSpectrum& s) {
    json a = json::array();
    for (std::size_t t = 0; t < s.coeffs.size(); ++t)
        if (std::abs(s.coeffs[t]) > 1e-12) a.push_back({{"subset", t}, {"coefficient", num(s.coeffs[t])}});
    return a;
}

Outcome approx_degree_cmd(const RunConfig& c) {
    const BoolFunction f = load_function(c.function);
    const auto res = approx_degree(f, c.epsilon);
    json r;
    r["arity"] = f.arity();
    r["d"] = res.d;
    r["error"] = num(res.error);
    r["approximant"] = spectrum_json(res.approximant);
    json lps = json::array();
    for (const auto& lp : res.lp_status)
        lps.push_back({{"degree", lp.degree},
                       {"status", lp::to_string(lp.status)},
                       {"objective", num(lp.objective)},
                       {"iterations", lp.iterations},
                       {"variables", lp.variables},
                       {"constraints", lp.constraints}});
    r["lp"] = std::move(lps);
    if (c.dual) {
        const auto w = dual_polynomial(f, c.epsilon);
        const auto chk = verify_dual(w, f);
        r["dual"] = {{"d", w.d},
                     {"l1", num(w.l1)},
                     {"correlation", num(w.correlation)},
                     {"witness", nums(w.v.table)},
                     {"margins",
                      {{"orthogonality", num(chk.orthogonality_margin)},
                       {"l1", num(chk.l1_margin)},
                       {"correlation", num(chk.correlation_margin)}}},
                     {"passed", chk.passed()}};
        if (!chk.passed()) return {r, kSolver};
    }
    return {r, kOk};
}

Outcome compose_cmd(const RunConfig& c) {
    const BoolFunction f = load_function(c.function);
    const SignMatrix g = load_matrix(c.inner);
    if (c.blocks && *c.blocks != f.arity())
        throw ArgumentError("--blocks " + std::to_string(*c.blocks) + " does not match the arity of " + c.function);
    const auto comp = compose_block(f, g, c.entry_cap);
    json r;
    r["n"] = comp.n;
    r["rows"] = comp.matrix.rows();
    r["cols"] = comp.matrix.cols();
    r["fourier_support"] = [&] {
        json a = json::array();
        const auto it = integer_transform(f);
        for (std::size_t t = 0; t < it.size(); ++t)
            if (it[t] != 0) a.push_back(t);
        return a;
    }();
    const auto orth = verify_orthogonality(g, comp.n, c.entry_cap);
    r["orthogonality"] = {{"orthogonal", orth.orthogonal},
                          {"max_violation", orth.max_violation},
                          {"pairs_checked", orth.pairs_checked}};
    if (orth.worst_pair) r["orthogonality"]["worst_pair"] = {orth.worst_pair->first, orth.worst_pair->second};
    if (!c.matrix_out.empty()) {
        std::ofstream out(c.matrix_out);
        if (!out) throw ArgumentError("--matrix-out: cannot write " + c.matrix_out);
        write_sign_matrix(out, comp.matrix);
    }
    int code = kOk;
    if (c.verify_rank) {
        const auto rk = verify_rank_theorem(f, g, c.entry_cap);
        r["rank_theorem"] = {{"rank_g", rk.rank_g}, {"formula", rk.formula}, {"exact", rk.exact}, {"equal", rk.equal}};
        if (!rk.equal) code = kSolver;
    }
    if (c.witness) {
        std::optional<RealMatrix> mu;
        if (!c.mu.empty()) mu = DistributionMatrix(read_real_grid(c.mu)).matrix();
        const auto w = dual_polynomial(f, c.epsilon);
        const auto b = build_witness(w, f, g, mu, c.entry_cap);
        const double ng = spectrum(g).spectral_norm;
        json wj;
        wj["d"] = w.d;
        wj["l1"] = num(b.l1);
        wj["correlation"] = num(b.correlation);
        wj["spectral_norm"] = num(b.spectral_norm);
        if (!mu) wj["spectral_bound"] = num(witness_norm_bound(ng, g.size(), w.d, comp.n));
        wj["l1_ok"] = b.l1_ok;
        wj["correlation_ok"] = b.correlation_ok;
        const auto tl = approx_trace_lower(comp.matrix, b, c.epsilon);
        wj["trace_lower_bound"] = num(tl.trace_lb);
        wj["gamma2_lower_bound"] = num(tl.gamma2_lb);
        wj["qcc_main_term"] = tl.qcc_main_term ? num(*tl.qcc_main_term) : json(nullptr);
        r["witness"] = std::move(wj);
    }
    return {r, code};
}

Outcome lower_bound_cmd(const RunConfig& c) {
    const BoolFunction f = load_function(c.function);
    const SignMatrix g = load_matrix(c.inner);
    BoundReport b;
    if (c.theorem == "sherstov") {
        b = sherstov_bound(f, g, c.epsilon0);
    } else if (c.theorem == "disc") {
        b = disc_bound(f, g, c.enumeration_cap);
    } else {
        const DistributionMatrix mu = c.mu.empty() ? DistributionMatrix::uniform(g.rows(), g.cols())
                                                   : DistributionMatrix(read_real_grid(c.mu));
        b = shizhu_bound(f, g, mu, c.epsilon0, c.enumeration_cap);
    }
    return {bound_json(b), bound_useful(b) ? kOk : kInapplicable};
}

std::vector<std::size_t> all_but_identity(const group::CharacterTable& t) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.h; ++i)
        if (i != t.identity()) out.push_back(i);
    return out;
}

json gmap_checks(const group::GroupMapMatrix& gmap, const group::CharacterTable& table,
                 const std::vector<std::size_t>& hard) {
    json j;
    j["rows"] = gmap.rows;
    j["cols"] = gmap.cols;
    j["order"] = gmap.order;
    const auto reg = group::regularity_check(gmap);
    j["regularity"] = {{"regular", reg.regular}, {"counts", reg.counts}};
    if (!reg.reason.empty()) j["regularity"]["reason"] = reg.reason;
    if (reg.rows_diagonal_invariant) j["regularity"]["rows_diagonal_invariant"] = *reg.rows_diagonal_invariant;
    if (reg.cols_diagonal_invariant) j["regularity"]["cols_diagonal_invariant"] = *reg.cols_diagonal_invariant;
    const auto orth = group::orthogonality_general(gmap, table, hard);
    j["orthogonality"] = {{"hard", hard},
                          {"max_row_sum", num(orth.max_row_sum)},
                          {"max_col_sum", num(orth.max_col_sum)},
                          {"passed", orth.passed()}};
    const auto pm = group::pair_multisets(gmap);
    std::size_t tprime_disagree = 0, tprime_checked = 0;
    for (const auto* side : {&pm.row_pairs, &pm.col_pairs})
        for (const auto& t : *side) {
            ++tprime_checked;
            tprime_disagree += !group::tprime_check(t, table).agree();
        }
    j["tprime"] = {{"checked", tprime_checked}, {"disagreements", tprime_disagree}};
    if (gmap.abelian) {
        std::size_t bad_rows = 0, bad_cols = 0;
        for (const auto& t : pm.row_pairs) bad_rows += !group::g_invariant(t, *gmap.abelian);
        for (const auto& t : pm.col_pairs) bad_cols += !group::g_invariant(t, *gmap.abelian);
        j["invariance"] = {{"non_invariant_row_pairs", bad_rows},
                           {"non_invariant_col_pairs", bad_cols},
                           {"all_invariant", bad_rows + bad_cols == 0}};
    }
    return j;
}

// Whitespace- or comma-separated reals; '#' starts a comment.
std::vector<double> load_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open values file: " + path);
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw ArgumentError("values file: bad number '" + tok + "'");
            out.push_back(v);
        }
    }
    return out;
}

Outcome group_check_cmd(const RunConfig& c) {
    json r;
    int code = kOk;
    if (!c.gmaps.empty()) {
        std::vector<group::GroupMapMatrix> maps;
        std::vector<group::CharacterTable> tables;
        for (const auto& path : c.gmaps) {
            auto gmap = group::read_group_map(path);
            if (!c.table.empty()) {
                auto table = group::read_character_table(c.table);
                if (table.order != gmap.order)
                    throw ArgumentError("--table: group order " + std::to_string(table.order) +
                                        " does not match the map's " + std::to_string(gmap.order));
                gmap = group::GroupMapMatrix(gmap.order, gmap.rows, gmap.cols, gmap.entries);
                tables.push_back(std::move(table));
            } else {
                tables.push_back(group::characters_abelian(*gmap.abelian));
            }
            maps.push_back(std::move(gmap));
        }
        for (std::size_t h : c.hard)
            if (maps.size() == 1 && h >= tables[0].h)
                throw ArgumentError("--hard: character " + std::to_string(h) + " out of range");
        json blocks = json::array();
        for (std::size_t i = 0; i < maps.size(); ++i) {
            const auto hard = (maps.size() == 1 && !c.hard.empty()) ? c.hard : all_but_identity(tables[i]);
            blocks.push_back(gmap_checks(maps[i], tables[i], hard));
        }
        r["maps"] = std::move(blocks);
        if (!c.values.empty()) {
            const auto f = load_values(c.values);
            if (maps.size() == 1) {
                const auto& table = tables[0];
                group::HardnessPartition part;
                part.hard = c.hard.empty() ? all_but_identity(table) : c.hard;
                for (std::size_t i = 0; i < table.h; ++i)
                    if (std::find(part.hard.begin(), part.hard.end(), i) == part.hard.end()) part.easy.push_back(i);
                const auto dist = group::distance_to_easy(f, table, part.easy);
                r["delta"] = num(dist.delta);
                const auto h = group::dual_h(f, table, part.easy);
                r["dual_h"] = {{"l1", num(h.l1)},
                               {"correlation", num(h.correlation)},
                               {"max_easy_coefficient", num(h.max_easy_coefficient)},
                               {"passed", h.passed()},
                               {"warnings", h.warnings}};
                const auto b = group::general_bound(maps[0], f, table, part, c.epsilon);
                r["bound"] = bound_json(b);
                if (!bound_useful(b)) code = kInapplicable;
            } else {
                const auto b = group::block_group_bound(maps, f, tables);
                r["bound"] = bound_json(b);
                if (!bound_useful(b)) code = kInapplicable;
            }
        }
    }
    if (c.search_modulus > 0) {
        const auto found = group::invariance_search(c.search_modulus, c.rows, c.cols, c.trials, c.seed);
        json a = json::array();
        for (const auto& ce : found) {
            std::ostringstream text;
            group::write_group_map(text, ce.gmap);
            json e;
            e["map"] = text.str();
            if (ce.row_pair)
                e["row_pair"] = {ce.x, ce.xp};
            else
                e["col_pair"] = {ce.y, ce.yp};
            a.push_back(std::move(e));
        }
        r["invariance_search"] = {{"modulus", c.search_modulus}, {"found", found.size()}, {"examples", a}};
    }
    return {r, code};
}

Outcome search_balanced_cmd(const RunConfig& c) {
    BalancedSearchConstraints cons;
    cons.min_rank = c.min_rank;
    cons.max_results = c.max_results;
    if (!c.forbidden.empty()) cons.forbidden = load_matrix(c.forbidden);
    const auto found = search_strongly_balanced(c.rows, c.cols, cons);
    json r;
    r["count"] = found.size();
    json ms = json::array();
    for (const auto& m : found) ms.push_back({{"rank", exact_rank(m)}, {"matrix", matrix_json(m)}});
    r["matrices"] = std::move(ms);
    return {r, kOk};
}

Outcome verify_suite_cmd(const RunConfig& c) {
    const auto selected = c.suites.empty() ? suites::names() : c.suites;
    json r = json::array();
    bool all = true;
    for (const auto& name : selected) {
        const auto s = suites::run(name, c.seed);
        json m = json::object();
        for (const auto& [k, v] : s.metrics) m[k] = num(v);
        r.push_back({{"suite", s.name},
                     {"description", s.description},
                     {"passed", s.passed()},
                     {"checks", s.checks},
                     {"failures", s.failures},
                     {"metrics", std::move(m)},
                     {"messages", s.messages}});
        all = all && s.passed();
    }
    return {json{{"all_passed", all}, {"suites", std::move(r)}}, all ? kOk : kInapplicable};
}

Outcome dispatch(const RunConfig& c) {
    switch (c.command) {
        case Command::analyze_matrix: return analyze_matrix(c);
        case Command::approx_degree: return approx_degree_cmd(c);
        case Command::compose: return compose_cmd(c);
        case Command::lower_bound: return lower_bound_cmd(c);
        case Command::group_check: return group_check_cmd(c);
        case Command::search_balanced: return search_balanced_cmd(c);
        case Command::verify_suite: return verify_suite_cmd(c);
    }
    throw ArgumentError("no command");
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Lower-bound workbench for block-composed communication problems", "commbound"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    RunConfig c;

    auto add_output = [&](CLI::App* s) { s->add_option("--output,-o", c.output, "Write the JSON report here"); };

    auto* am = app.add_subcommand("analyze-matrix", "Balance, rank, spectrum, discrepancy and pattern containment");
    am->add_option("--input,-i", c.input, "Sign matrix file or S4, S6, XOR2, H2")->required();
    am->add_option("--pattern", c.pattern, "Pattern to test for (default S4)");
    am->add_option("--tolerance", c.tolerance, "Relative numeric-rank tolerance");
    am->add_option("--cap", c.enumeration_cap, "Largest side enumerated for discrepancy");
    add_output(am);

    auto* ad = app.add_subcommand("approx-degree", "Approximate degree and dual polynomial");
    ad->add_option("--function,-f", c.function, "Truth-table file or NAME:arity")->required();
    ad->add_option("--epsilon,-e", c.epsilon, "Approximation error in [0, 1)");
    ad->add_flag("--dual", c.dual, "Also build and verify the dual polynomial");
    add_output(ad);

    auto* co = app.add_subcommand("compose", "Block composition f o g^n");
    co->add_option("--function,-f", c.function, "Outer function")->required();
    co->add_option("--inner,-g", c.inner, "Inner sign matrix")->required();
    co->add_option("--blocks,-n", c.blocks, "Number of blocks (must equal the arity of f)");
    co->add_flag("--verify-rank", c.verify_rank, "Check the rank formula exactly");
    co->add_flag("--witness", c.witness, "Build the witness matrix");
    co->add_option("--epsilon,-e", c.epsilon, "Error for the witness");
    co->add_option("--mu", c.mu, "Distribution on the inner matrix for the witness");
    co->add_option("--entry-cap", c.entry_cap, "Largest composed matrix, in entries");
    co->add_option("--matrix-out", c.matrix_out, "Write the composed matrix here");
    add_output(co);

    auto* lb = app.add_subcommand("lower-bound", "Evaluate a composition lower bound");
    lb->add_option("--theorem,-t", c.theorem, "sherstov, disc or shizhu")
        ->required()
        ->check(CLI::IsMember({"sherstov", "disc", "shizhu"}));
    lb->add_option("--function,-f", c.function, "Outer function")->required();
    lb->add_option("--inner,-g", c.inner, "Inner sign matrix")->required();
    lb->add_option("--mu", c.mu, "Distribution on the inner matrix (shizhu)");
    lb->add_option("--epsilon0", c.epsilon0, "Approximation error for the degree");
    lb->add_option("--cap", c.enumeration_cap, "Largest side enumerated for discrepancy");
    add_output(lb);

    auto* gc = app.add_subcommand("group-check", "Regularity, orthogonality and bounds for group maps");
    gc->add_option("--gmap", c.gmaps, "Group map file; repeat for block maps");
    gc->add_option("--table", c.table, "Character table JSON for a single map");
    gc->add_option("--values", c.values, "Class function values, one per group element");
    gc->add_option("--hard", c.hard, "Hard character indices (default: all non-identity)")->delimiter(',');
    gc->add_option("--epsilon,-e", c.epsilon, "Error for the general bound");
    gc->add_option("--search", c.search_modulus, "Search Z_m maps for non-invariant pair multisets");
    gc->add_option("--rows", c.rows, "Rows for --search");
    gc->add_option("--cols", c.cols, "Columns for --search");
    gc->add_option("--trials", c.trials, "Trials for --search");
    add_output(gc);

    auto* sb = app.add_subcommand("search-balanced", "Enumerate strongly balanced sign matrices");
    sb->add_option("--rows", c.rows, "Rows")->required();
    sb->add_option("--cols", c.cols, "Columns")->required();
    sb->add_option("--min-rank", c.min_rank, "Minimum rank");
    sb->add_option("--forbidden", c.forbidden, "Forbidden pattern (matrix file or name)");
    sb->add_option("--max-results", c.max_results, "Stop after this many");
    add_output(sb);

    auto* vs = app.add_subcommand("verify-suite", "Run the property suites");
    vs->add_option("--suite", c.suites, "Suite name; repeat to select several (default: all)")
        ->check(CLI::IsMember(suites::names()));
    add_output(vs);

    app.add_option("--seed", c.seed, "Seed for the random suites and searches");

    std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        c.help = (app.get_subcommands().empty() ? &app : app.get_subcommands().front())->help();
        return c;
    } catch (const CLI::CallForAllHelp&) {
        c.help = app.help("", CLI::AppFormatMode::All);
        return c;
    } catch (const CLI::CallForVersion&) {
        c.help = std::string(kVersion) + "\n";
        return c;
    } catch (const CLI::ParseError& e) {
        throw ArgumentError(e.what());
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const Command all[] = {Command::analyze_matrix, Command::approx_degree, Command::compose, Command::lower_bound,
                           Command::group_check, Command::search_balanced, Command::verify_suite};
    for (Command cmd : all)
        if (to_string(cmd) == name) c.command = cmd;

    switch (c.command) {
        case Command::analyze_matrix:
            require_matrix(c.input, "--input");
            require_matrix(c.pattern, "--pattern");
            if (!(c.tolerance > 0.0)) throw ArgumentError("--tolerance must be positive");
            break;
        case Command::approx_degree:
            require_function(c.function, "--function");
            require_epsilon(c.epsilon, "--epsilon");
            break;
        case Command::compose:
            require_function(c.function, "--function");
            require_matrix(c.inner, "--inner");
            require_epsilon(c.epsilon, "--epsilon");
            if (!c.mu.empty()) require_file(c.mu, "--mu");
            if (!c.mu.empty() && !c.witness) throw ArgumentError("--mu needs --witness");
            break;
        case Command::lower_bound:
            require_function(c.function, "--function");
            require_matrix(c.inner, "--inner");
            require_epsilon(c.epsilon0, "--epsilon0");
            if (!c.mu.empty()) {
                if (c.theorem != "shizhu") throw ArgumentError("--mu only applies to --theorem shizhu");
                require_file(c.mu, "--mu");
            }
            break;
        case Command::group_check:
            for (const auto& p : c.gmaps) require_file(p, "--gmap");
            if (!c.table.empty()) require_file(c.table, "--table");
            if (!c.values.empty()) require_file(c.values, "--values");
            if (!c.table.empty() && c.gmaps.size() != 1) throw ArgumentError("--table needs exactly one --gmap");
            if (!c.values.empty() && c.gmaps.empty()) throw ArgumentError("--values needs --gmap");
            if (!c.hard.empty() && c.gmaps.size() != 1) throw ArgumentError("--hard needs exactly one --gmap");
            require_epsilon(c.epsilon, "--epsilon");
            if (c.gmaps.empty() && c.search_modulus == 0) throw ArgumentError("group-check needs --gmap or --search");
            if (c.search_modulus == 1) throw ArgumentError("--search modulus must be at least 2");
            if (c.search_modulus > 0 && (c.rows == 0 || c.cols == 0))
                throw ArgumentError("--search needs --rows and --cols");
            break;
        case Command::search_balanced:
            if (!c.forbidden.empty()) require_matrix(c.forbidden, "--forbidden");
            break;
        case Command::verify_suite:
            break;
    }
    return c;
}

int run(const RunConfig& config, std::ostream& out) {
    json report;
    report["schema"] = kSchema;
    report["version"] = kVersion;
    report["command"] = to_string(config.command);
    report["config"] = config_json(config);
    int code = kOk;
    try {
        auto o = dispatch(config);
        report["result"] = std::move(o.result);
        code = o.code;
    } catch (const PreconditionError& e) {
        report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        code = kInapplicable;
    } catch (const ArgumentError& e) {
        report["error"] = {{"kind", "argument"}, {"message", e.what()}};
        code = kUsage;
    } catch (const ResourceError& e) {
        report["error"] = {{"kind", "resource"}, {"message", e.what()}};
        code = kResource;
    } catch (const SolverError& e) {
        report["error"] = {{"kind", "solver"}, {"message", e.what()}};
        code = kSolver;
    }
    report["exit_code"] = code;
    const std::string text = report.dump(2) + "\n";
    if (config.output.empty()) {
        out << text;
    } else {
        std::ofstream file(config.output);
        if (!file) throw ArgumentError("--output: cannot write " + config.output);
        file << text;
    }
    return code;
}

int main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    try {
        c = parse_args(argv);
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsage;
    }
    if (c.help) {
        out << *c.help;
        return kOk;
    }
    try {
        return run(c, out);
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace commbound::cli
