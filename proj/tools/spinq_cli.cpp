// spinq command-line front end: figure reproduction, criterion evaluation and
// oracle verification, emitting CSV or JSON. Identical invocations (including
// --seed) produce byte-identical files.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "spinq/bounds.hpp"
#include "spinq/collective.hpp"
#include "spinq/lhv_oracle.hpp"
#include "spinq/moment_criteria.hpp"

namespace {

using json = nlohmann::json;
using namespace spinq;

constexpr const char* kVersion = "1.0.0";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using Cell = std::variant<long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string table_to_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            if (const auto* i = std::get_if<long long>(&row[c]))
                out << *i;
            else if (const auto* d = std::get_if<double>(&row[c]))
                out << fmt_double(*d);
            else
                out << std::get<std::string>(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

json table_to_json(const Table& t, const json& meta) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const auto* i = std::get_if<long long>(&row[c]))
                obj[t.columns[c]] = *i;
            else if (const auto* d = std::get_if<double>(&row[c]))
                obj[t.columns[c]] = *d;
            else
                obj[t.columns[c]] = std::get<std::string>(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return json{{"meta", meta}, {"rows", std::move(rows)}};
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

void emit(const Table& t, const json& meta, const std::string& format,
          const std::string& out_path) {
    if (format == "json")
        write_output(table_to_json(t, meta).dump(2) + "\n", out_path);
    else
        write_output(table_to_csv(t), out_path);
}

SpinMagnitude parse_spin(const std::string& text) {
    double j;
    if (const auto slash = text.find('/'); slash != std::string::npos)
        j = std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
    else
        j = std::stod(text);
    return SpinMagnitude::from_j(j);
}

std::string spin_label(SpinMagnitude j) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%g", j.j());
    return buf;
}

// {0} followed by geometric points up to g_max; the zero point pins the
// coherent-state limit and the geometric tail covers the squeezing regime.
std::vector<double> g_grid(double g_max, int points) {
    std::vector<double> grid{0.0};
    if (points < 2 || g_max <= 0.0) return grid;
    const double lo = g_max / 1000.0;
    const int m = points - 1;
    for (int i = 0; i < m; ++i)
        grid.push_back(lo * std::pow(g_max / lo, m == 1 ? 1.0 : double(i) / (m - 1)));
    return grid;
}

// ---------------------------------------------------------------------------

int run_fig2(const std::string& j_text, std::size_t n_max, const std::string& t_mode,
             std::uint64_t seed, const std::string& format, const std::string& out_path) {
    const SpinMagnitude j = parse_spin(j_text);
    const CJValue cj = compute_cj(j, UnitConvention::Standard);

    Table t;
    t.columns = {"n", "t", "lhs", "rhs", "ratio"};
    for (std::size_t k = 0; k < j.dimension(); ++k) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "r_%g", -j.j() + static_cast<double>(k));
        t.columns.push_back(buf);
    }

    for (std::size_t n = 2; n <= n_max; ++n) {
        const std::size_t part = t_mode == "bell" ? 0 : (t_mode == "steer" ? 1 : n);
        const OptimizedCriterion o = optimize_amplitudes(n, j, {part}, cj, seed);
        std::vector<Cell> row{static_cast<long long>(n), static_cast<long long>(part),
                              o.result.lhs, o.result.rhs, o.result.ratio};
        for (double r : o.r) row.push_back(r);
        t.add_row(std::move(row));
    }

    const json meta{{"command", "fig2"}, {"version", kVersion}, {"j", spin_label(j)},
                    {"n_max", n_max},    {"t_mode", t_mode},    {"seed", seed}};
    emit(t, meta, format, out_path);
    return 0;
}

int run_fig4(std::size_t n, double g_max, int grid, const std::string& format,
             const std::string& out_path) {
    Table t;
    t.columns = {"ng_over_kappa", "var_z_over_j", "var_x_over_j", "xi"};
    for (double ng : g_grid(g_max, grid)) {
        const BECParams p{n, 1.0, ng / static_cast<double>(n)};
        const CollectiveMoments m = schwinger_moments(bec_ground_state(p));
        t.add_row({ng, m.var_z / m.j_tot, m.var_x / m.j_tot, xi_parameter(m, Axis::Z, Axis::X)});
    }
    const json meta{{"command", "fig4"}, {"version", kVersion}, {"n", n},
                    {"g_max", g_max},    {"grid", grid}};
    emit(t, meta, format, out_path);
    return 0;
}

int run_fig6(std::vector<std::size_t> n_list, double g_max, int grid, double j0_max,
             const std::string& format, const std::string& out_path) {
    std::size_t n_top = 0;
    for (std::size_t n : n_list) n_top = std::max(n_top, n);
    const int bank_two_j =
        std::min(static_cast<int>(2.0 * j0_max + 1e-9), static_cast<int>(n_top) - 1);
    const FJCurveBank bank = build_fj_bank(std::max(bank_two_j, 1), 501);

    Table t;
    t.columns = {"n", "ng_over_kappa", "mean_x_over_j", "var_z_over_j", "n0"};
    for (std::size_t n : n_list) {
        for (double ng : g_grid(g_max, grid)) {
            const BECParams p{n, 1.0, ng / static_cast<double>(n)};
            const CollectiveMoments m = schwinger_moments(bec_ground_state(p));
            const DepthResult d = depth_of_entanglement(m, bank);
            t.add_row({static_cast<long long>(n), ng, std::abs(m.mean_x) / m.j_tot,
                       m.var_z / m.j_tot, static_cast<long long>(d.n0)});
        }
    }
    const json meta{{"command", "fig6"}, {"version", kVersion}, {"n_list", n_list},
                    {"g_max", g_max},    {"grid", grid},        {"j0_max", j0_max}};
    emit(t, meta, format, out_path);
    return 0;
}

int run_bounds(const std::string& j_max_text, int grid, const std::string& format,
               const std::string& out_dir) {
    const SpinMagnitude j_max = parse_spin(j_max_text);
    if (j_max.two_j() > 8) throw std::invalid_argument("bounds: --j-max must be <= 4");
    const std::string dir = out_dir.empty() ? "." : out_dir;

    Table cj_table;
    cj_table.columns = {"j", "convention", "c_j", "dual_gap"};
    for (int two_j = 1; two_j <= j_max.two_j(); ++two_j) {
        const SpinMagnitude j = SpinMagnitude::from_two_j(two_j);
        if (two_j == 1) {
            const CJValue c = compute_cj(j, UnitConvention::Pauli);
            cj_table.add_row({j.j(), std::string("pauli"), c.value, c.dual_gap});
        }
        const CJValue c = compute_cj(j, UnitConvention::Standard);
        cj_table.add_row({j.j(), std::string("standard"), c.value, c.dual_gap});
    }
    const json meta{{"command", "bounds"}, {"version", kVersion}, {"j_max", spin_label(j_max)},
                    {"grid", grid}};
    const std::string ext = format == "json" ? ".json" : ".csv";
    emit(cj_table, meta, format, dir + "/cj" + ext);
    std::cout << "wrote " << dir << "/cj" << ext << "\n";

    for (int two_j = 1; two_j <= j_max.two_j(); ++two_j) {
        const SpinMagnitude j = SpinMagnitude::from_two_j(two_j);
        const FJCurve curve = compute_fj_curve(j, static_cast<std::size_t>(grid));
        Table ct;
        ct.columns = {"x", "y"};
        for (std::size_t i = 0; i < curve.x.size(); ++i) ct.add_row({curve.x[i], curve.y[i]});
        const std::string path = dir + "/fj_" + spin_label(j) + ext;
        emit(ct, json{{"command", "bounds"}, {"version", kVersion}, {"j", spin_label(j)}},
             format, path);
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

int run_mabk(std::size_t n, std::size_t t, const std::string& form_text,
             const std::string& format, const std::string& out_path) {
    const MabkForm form = form_text == "sum" ? MabkForm::Sum : MabkForm::Single;
    const MeasurementSettings settings = optimal_mabk_settings(n, form);
    CriterionResult res;
    if (n <= 12) {
        res = evaluate_mabk(ghz_state(n), settings, {t}, form);
    } else {
        const Complex moment = ghz_mabk_moment_closed(n, settings);
        res.lhs = form == MabkForm::Single ? moment.real() : moment.real() + moment.imag();
        res.rhs = mabk_threshold(n, t, form);
        res.ratio = res.lhs / res.rhs;
        res.verdict = res.ratio <= 1.0 ? Verdict::None
                      : t == 0         ? Verdict::BellNonlocality
                      : t == n         ? Verdict::Entanglement
                                       : Verdict::EPRSteering;
        res.inequality_id = std::string("mabk-") + form_text + "-t" + std::to_string(t);
    }

    Table tab;
    tab.columns = {"n", "t", "form", "lhs", "rhs", "ratio", "verdict"};
    tab.add_row({static_cast<long long>(n), static_cast<long long>(t), form_text, res.lhs,
                 res.rhs, res.ratio, std::string(verdict_name(res.verdict))});
    const json meta{{"command", "mabk"}, {"version", kVersion}, {"n", n}, {"t", t},
                    {"form", form_text}};
    emit(tab, meta, format, out_path);
    return 0;
}

int run_cfrd(const std::string& j_text, std::size_t n, std::size_t t, std::uint64_t seed,
             const std::string& format, const std::string& out_path) {
    const SpinMagnitude j = parse_spin(j_text);
    const CJValue cj = compute_cj(j, UnitConvention::Standard);
    const OptimizedCriterion o = optimize_amplitudes(n, j, {t}, cj, seed);

    Table tab;
    tab.columns = {"n", "t", "j", "lhs", "rhs", "ratio", "verdict"};
    for (std::size_t k = 0; k < j.dimension(); ++k) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "r_%g", -j.j() + static_cast<double>(k));
        tab.columns.push_back(buf);
    }
    std::vector<Cell> row{static_cast<long long>(n),
                          static_cast<long long>(t),
                          spin_label(j),
                          o.result.lhs,
                          o.result.rhs,
                          o.result.ratio,
                          std::string(verdict_name(o.result.verdict))};
    for (double r : o.r) row.push_back(r);
    tab.add_row(std::move(row));
    const json meta{{"command", "cfrd"}, {"version", kVersion}, {"j", spin_label(j)},
                    {"n", n},            {"t", t},              {"seed", seed}};
    emit(tab, meta, format, out_path);
    return 0;
}

int run_verify(std::size_t n_max, std::size_t samples, std::uint64_t seed,
               bool inject_corrupt, const std::string& out_path) {
    struct Entry {
        std::string id;
        std::size_t n, t;
        double oracle, analytic;
    };
    std::vector<Entry> entries;

    for (std::size_t n = 1; n <= n_max; ++n) {
        const OracleReport re = corner_max(n, StrategyObjective::Re);
        entries.push_back({"mabk-corner-re-n" + std::to_string(n), n, 0, re.max_value,
                           re.analytic_bound});
        const OracleReport sum = corner_max(n, StrategyObjective::RePlusIm);
        entries.push_back({"mabk-corner-sum-n" + std::to_string(n), n, 0, sum.max_value,
                           sum.analytic_bound});
        for (std::size_t t = 1; t <= n; ++t) {
            const OracleReport hre = hybrid_max(n, t, StrategyObjective::Re);
            entries.push_back({"lhs-hybrid-re-n" + std::to_string(n) + "-t" + std::to_string(t),
                               n, t, hre.max_value, hre.analytic_bound});
            const OracleReport hsum = hybrid_max(n, t, StrategyObjective::RePlusIm);
            entries.push_back({"lhs-hybrid-sum-n" + std::to_string(n) + "-t" + std::to_string(t),
                               n, t, hsum.max_value, hsum.analytic_bound});
        }
        if (n >= 2) {
            const OracleReport sv = svetlichny_max(n);
            entries.push_back({"svetlichny-n" + std::to_string(n), n, 0, sv.max_value,
                               sv.analytic_bound});
        }
    }
    if (n_max >= 2) {
        // The n = 2 Re+Im corner extremum is the CHSH bound.
        const OracleReport chsh = corner_max(2, StrategyObjective::RePlusIm);
        entries.push_back({"chsh-bell", 2, 0, chsh.max_value, 2.0});
    }

    // Cross-check the C_J duals against the refined random-state scan. These
    // rows use the scan gap tolerance (1e-3) instead of the enumeration one.
    std::vector<Entry> scan_entries;
    for (int two_j = 1; two_j <= 4; ++two_j) {
        const SpinMagnitude j = SpinMagnitude::from_two_j(two_j);
        const CJValue cj = compute_cj(j, UnitConvention::Standard);
        ScanOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        opt.refine = true;
        const ScanResult scan = random_state_min_scan(j, ScanObjective::SumVarXY, opt);
        scan_entries.push_back({"cj-scan-2j" + std::to_string(two_j), 1, 0, scan.min_value,
                                cj.value});
    }
    if (inject_corrupt && !entries.empty()) entries.back().analytic += 0.5;

    bool all_agree = true;
    json rows = json::array();
    auto push_row = [&](const Entry& e, double tol) {
        const bool sound = e.oracle >= e.analytic - 1e-9;
        const bool agrees = sound && std::abs(e.oracle - e.analytic) <= tol;
        all_agree = all_agree && agrees;
        rows.push_back(json{{"inequality_id", e.id},
                            {"n", e.n},
                            {"t", e.t},
                            {"oracle_max", e.oracle},
                            {"analytic_bound", e.analytic},
                            {"agrees", agrees}});
    };
    for (const Entry& e : entries) push_row(e, 1e-6);
    for (const Entry& e : scan_entries) push_row(e, 1e-3);
    const json report{{"meta", json{{"command", "verify"},
                                    {"version", kVersion},
                                    {"n_max", n_max},
                                    {"all_agree", all_agree}}},
                      {"rows", std::move(rows)}};
    write_output(report.dump(2) + "\n", out_path);
    return all_agree ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multipartite spin nonlocality criteria: figure reproduction, criterion "
                 "evaluation and brute-force bound verification"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 12345;
    app.add_option("--out", out_path, "Output file (default: stdout)")->capture_default_str();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "Random seed for optimizer restarts and scans")
        ->capture_default_str();

    auto* fig2 = app.add_subcommand("fig2", "Optimized C_J criterion ratios vs N");
    std::string fig2_j = "1/2";
    std::size_t fig2_nmax = 10;
    std::string fig2_mode = "ent";
    fig2->add_option("--j", fig2_j, "Site spin (1/2, 1, 3/2, 2)")->capture_default_str();
    fig2->add_option("--n-max", fig2_nmax, "Largest N")->check(CLI::Range(2, 20))
        ->capture_default_str();
    fig2->add_option("--t-mode", fig2_mode, "Partition mode")
        ->check(CLI::IsMember({"bell", "steer", "ent"}))
        ->capture_default_str();

    auto* fig4 = app.add_subcommand("fig4", "BEC ground-state squeezing sweep");
    std::size_t fig4_n = 100;
    double fig4_gmax = 200.0;
    int fig4_grid = 60;
    fig4->add_option("--n", fig4_n, "Atom number")->check(CLI::Range(1, 5000))
        ->capture_default_str();
    fig4->add_option("--g-max", fig4_gmax, "Largest Ng/kappa")->check(CLI::PositiveNumber)
        ->capture_default_str();
    fig4->add_option("--grid", fig4_grid, "Number of sweep points")->check(CLI::Range(2, 2000))
        ->capture_default_str();

    auto* fig6 = app.add_subcommand("fig6", "SM depth of entanglement for BEC ground states");
    std::vector<std::size_t> fig6_n{10, 20, 50, 100};
    double fig6_gmax = 200.0;
    int fig6_grid = 60;
    double fig6_j0max = 5.0;
    fig6->add_option("--n", fig6_n, "Atom numbers (repeatable)")->capture_default_str();
    fig6->add_option("--g-max", fig6_gmax, "Largest Ng/kappa")->check(CLI::PositiveNumber)
        ->capture_default_str();
    fig6->add_option("--grid", fig6_grid, "Number of sweep points")->check(CLI::Range(2, 2000))
        ->capture_default_str();
    fig6->add_option("--j0-max", fig6_j0max,
                     "Largest block spin J0 in the curve bank (certifies n0 up to 2 J0 + 1)")
        ->check(CLI::Range(0.5, 50.0))
        ->capture_default_str();

    auto* bounds = app.add_subcommand("bounds", "C_J table and F_J curves");
    std::string bounds_jmax = "4";
    int bounds_grid = 1001;
    bounds->add_option("--j-max", bounds_jmax, "Largest spin")->capture_default_str();
    bounds->add_option("--grid", bounds_grid, "F_J samples per curve")->check(CLI::Range(2, 20000))
        ->capture_default_str();

    auto* mabk = app.add_subcommand("mabk", "GHZ MABK-type criterion at a hybrid partition");
    std::size_t mabk_n = 3, mabk_t = 0;
    std::string mabk_form = "single";
    mabk->add_option("--n", mabk_n, "Number of qubits")->check(CLI::Range(2, 20))
        ->capture_default_str();
    mabk->add_option("--t", mabk_t, "Trusted sites")->capture_default_str();
    mabk->add_option("--form", mabk_form, "Inequality form")
        ->check(CLI::IsMember({"single", "sum"}))
        ->capture_default_str();

    auto* cfrd = app.add_subcommand("cfrd", "Optimized C_J qudit criterion at one (N, T)");
    std::string cfrd_j = "1";
    std::size_t cfrd_n = 3, cfrd_t = 0;
    cfrd->add_option("--j", cfrd_j, "Site spin")->capture_default_str();
    cfrd->add_option("--n", cfrd_n, "Number of sites")->check(CLI::Range(2, 20))
        ->capture_default_str();
    cfrd->add_option("--t", cfrd_t, "Trusted sites")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Brute-force oracle vs analytic bounds (JSON)");
    std::size_t verify_nmax = 6;
    bool verify_corrupt = false;
    verify->add_option("--n-max", verify_nmax, "Largest N")->check(CLI::Range(1, 8))
        ->capture_default_str();
    std::size_t verify_samples = 20000;
    verify->add_option("--samples", verify_samples,
                       "Haar samples for the C_J scan cross-check")
        ->check(CLI::Range(1000, 10000000))
        ->capture_default_str();
    verify->add_flag("--inject-corrupt", verify_corrupt,
                     "Corrupt one analytic bound (failure-path testing)");

    // Let --out/--format/--seed appear after the subcommand name too.
    for (CLI::App* sub : {fig2, fig4, fig6, bounds, mabk, cfrd, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (fig2->parsed()) return run_fig2(fig2_j, fig2_nmax, fig2_mode, seed, format, out_path);
        if (fig4->parsed()) return run_fig4(fig4_n, fig4_gmax, fig4_grid, format, out_path);
        if (fig6->parsed())
            return run_fig6(fig6_n, fig6_gmax, fig6_grid, fig6_j0max, format, out_path);
        if (bounds->parsed()) return run_bounds(bounds_jmax, bounds_grid, format, out_path);
        if (mabk->parsed()) {
            if (mabk_t > mabk_n) throw std::invalid_argument("--t must be <= --n");
            return run_mabk(mabk_n, mabk_t, mabk_form, format, out_path);
        }
        if (cfrd->parsed()) {
            if (cfrd_t > cfrd_n) throw std::invalid_argument("--t must be <= --n");
            return run_cfrd(cfrd_j, cfrd_n, cfrd_t, seed, format, out_path);
        }
        if (verify->parsed())
            return run_verify(verify_nmax, verify_samples, seed, verify_corrupt, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
