#include "specbound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "specbound/bounds.hpp"
#include "specbound/riemann.hpp"
#include "specbound/sturm.hpp"
#include "specbound/validate.hpp"
#include "specbound/weights.hpp"

namespace specbound::cli {

namespace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int n = 2;
    double delta = 1.0;
    double h = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> h_range;  // MIN MAX COUNT
    bool log_spacing = false;
    std::vector<int> k_list;
    std::string rule = "agol";  // figure-reproduction default
    int omega = 2;
    double tol = 0.0;  // 0 keeps per-command defaults
    std::string out_path;
    std::string format = "csv";
    std::string config_path;  // handled by the pre-pass; registered for --help
    int dump_k = 0;
    bool tau_only = false;
    std::string case_filter;

    bool has_h() const { return !std::isnan(h); }
    weights::GeometryParams geometry() const
    {
        weights::GeometryParams gp;
        gp.n = n;
        gp.delta = delta;
        gp.h = h;
        gp.rule = weights::rule_from_name(rule);
        return gp;
    }
};

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string fmt_g(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Reads a key=value config file and splices its entries into the argument
// list as flags, skipping keys the command line already provides (explicit
// flags override the file).
std::vector<std::string> apply_config_file(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw ConfigError("--config requires a path");
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty())
        return args;

    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);

    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0)
            given.insert(a.substr(0, a.find('=')));

    std::vector<std::string> injected;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line has empty key: " + line);
        if (given.count("--" + key))
            continue;
        if (value == "true") {
            injected.push_back("--" + key);
            continue;
        }
        if (value == "false")
            continue;
        injected.push_back("--" + key);
        std::istringstream split(value);
        std::string token;
        while (split >> token)
            injected.push_back(token);
    }

    // Subcommand name comes first; keep it there.
    std::size_t at = args.empty() ? 0 : 1;
    args.insert(args.begin() + at, injected.begin(), injected.end());
    return args;
}

void add_common_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--n", cfg.n, "dimension (>= 2)");
    sub->add_option("--delta", cfg.delta, "Ricci scale (curvature >= -(n-1) delta^2)");
    sub->add_option("--h", cfg.h, "Cheeger constant (single value)");
    sub->add_option("--h-range", cfg.h_range, "MIN MAX COUNT sweep grid")->expected(3);
    sub->add_flag("--log", cfg.log_spacing, "log-spaced sweep grid");
    sub->add_option("--k", cfg.k_list, "eigenvalue indices")->expected(-1);
    sub->add_option("--rule", cfg.rule, "mean-curvature rule")
        ->check(CLI::IsMember({"agol", "buser", "best"}));
    sub->add_option("--omega", cfg.omega, "problem index (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    sub->add_option("--tol", cfg.tol, "tolerance override");
    sub->add_option("--out", cfg.out_path, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "sweep output format")
        ->check(CLI::IsMember({"csv", "svg-data"}));
    sub->add_option("--config", cfg.config_path,
                    "key=value config file; explicit flags take precedence");
    sub->add_option("--dump-eigenfunction", cfg.dump_k, "write the k-th eigenfunction as CSV");
    sub->add_flag("--tau-only", cfg.tau_only, "skip the z substitution (needed at h = n-1)");
    sub->add_option("--case", cfg.case_filter, "run a single oracle case");
}

std::string echo_config(const std::string& command, const RunConfig& cfg)
{
    std::ostringstream os;
    os << "command=" << command << " n=" << cfg.n << " delta=" << fmt_g(cfg.delta)
       << " rule=" << cfg.rule;
    if (cfg.has_h())
        os << " h=" << fmt_g(cfg.h);
    if (cfg.h_range.size() == 3)
        os << " h-range=[" << fmt_g(cfg.h_range[0]) << "," << fmt_g(cfg.h_range[1])
           << "] count=" << static_cast<int>(cfg.h_range[2])
           << " spacing=" << (cfg.log_spacing ? "log" : "linear");
    if (!cfg.k_list.empty()) {
        os << " k=";
        for (std::size_t i = 0; i < cfg.k_list.size(); ++i)
            os << (i ? "," : "") << cfg.k_list[i];
    }
    return os.str();
}

std::ostream& open_sink(const RunConfig& cfg, std::ofstream& file, std::ostream& fallback)
{
    if (cfg.out_path.empty())
        return fallback;
    file.open(cfg.out_path);
    if (!file)
        throw ConfigError("cannot open output path: " + cfg.out_path);
    return file;
}

// ---------- bound ----------

int cmd_bound(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    if (!cfg.has_h() || !cfg.h_range.empty())
        throw ConfigError("bound needs --h (and no --h-range)");
    std::vector<int> ks = cfg.k_list.empty() ? std::vector<int>{1} : cfg.k_list;
    const auto report = bounds::bound_report(cfg.geometry(), ks);

    std::ofstream file;
    std::ostream& sink = open_sink(cfg, file, out);
    sink << "# " << kVersion << "\n";
    sink << "# config: " << echo_config("bound", cfg) << "\n";
    sink << "n " << report.params.n << "\n";
    sink << "delta " << fmt(report.params.delta) << "\n";
    sink << "h " << fmt(report.params.h) << "\n";
    sink << "rule " << weights::rule_name(report.params.rule) << "\n";
    sink << "upsilon " << fmt(report.upsilon) << "\n";
    sink << "T " << fmt(report.T) << "\n";
    sink << "lambda1_omega1 " << fmt(report.lambda1_omega1) << "\n";
    sink << "buser " << fmt(report.buser) << "\n";
    sink << "cheeger_lower " << fmt(report.cheeger_lower) << "\n";
    sink << "c_tilde " << fmt(report.asymptotic_c) << "\n";
    sink << "k xi lambda_xi_omega2\n";
    for (const auto& row : report.xi_map)
        sink << row.k << " " << row.xi << " " << fmt(row.bound) << "\n";
    return 0;
}

// ---------- sweep ----------

void write_sweep_csv(std::ostream& sink, const RunConfig& cfg,
                     const std::vector<bounds::BoundReport>& rows, int max_j)
{
    sink << "# " << kVersion << "\n";
    sink << "# config: " << echo_config("sweep", cfg) << "\n";
    sink << "h,T,upsilon,lambda1_omega1";
    for (int j = 1; j <= max_j; ++j)
        sink << ",lambda" << j << "_omega2";
    sink << ",buser,cheeger_lower,c_tilde\n";
    for (const auto& row : rows) {
        sink << fmt(row.params.h);
        if (row.error.empty()) {
            sink << "," << fmt(row.T) << "," << fmt(row.upsilon) << ","
                 << fmt(row.lambda1_omega1);
            for (int j = 0; j < max_j; ++j)
                sink << "," << fmt(row.lambda_omega2[j].second);
            sink << "," << fmt(row.buser) << "," << fmt(row.cheeger_lower) << ","
                 << fmt(row.asymptotic_c);
        } else {
            for (int j = 0; j < max_j + 6; ++j)
                sink << ",nan";
        }
        sink << "\n";
    }
}

void write_sweep_svg_data(std::ostream& sink, const RunConfig& cfg,
                          const std::vector<bounds::BoundReport>& rows, int max_j)
{
    sink << "# " << kVersion << "\n";
    sink << "# config: " << echo_config("sweep", cfg) << "\n";
    const auto curve = [&](const std::string& name, auto&& value) {
        sink << "# curve " << name << "\n";
        for (const auto& row : rows) {
            const double v =
                row.error.empty() ? value(row) : std::numeric_limits<double>::quiet_NaN();
            sink << fmt(row.params.h) << " " << fmt(v) << "\n";
        }
        sink << "\n";
    };
    curve("lambda1_omega1", [](const bounds::BoundReport& r) { return r.lambda1_omega1; });
    for (int j = 1; j <= max_j; ++j)
        curve("lambda" + std::to_string(j) + "_omega2",
              [j](const bounds::BoundReport& r) { return r.lambda_omega2[j - 1].second; });
    curve("buser", [](const bounds::BoundReport& r) { return r.buser; });
    curve("cheeger_lower", [](const bounds::BoundReport& r) { return r.cheeger_lower; });
    curve("c_tilde", [](const bounds::BoundReport& r) { return r.asymptotic_c; });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.h_range.size() != 3 || cfg.has_h())
        throw ConfigError("sweep needs --h-range MIN MAX COUNT (and no --h)");
    const double min = cfg.h_range[0];
    const double max = cfg.h_range[1];
    const int count = static_cast<int>(cfg.h_range[2]);
    if (!(min > 0.0) || !(min < max) || count < 1)
        throw ConfigError("sweep needs 0 < MIN < MAX and COUNT >= 1");

    weights::GeometryParams base = cfg.geometry();
    base.h = min;  // placeholder; sweep overwrites per row
    const auto grid = bounds::h_grid(min, max, count, cfg.log_spacing);
    const auto rows = bounds::sweep(base, grid, cfg.k_list);

    int max_j = 1;
    for (int k : cfg.k_list)
        max_j = std::max(max_j, bounds::xi(k));

    std::size_t failed = 0;
    for (const auto& row : rows)
        if (!row.error.empty()) {
            ++failed;
            err << "warning: row h=" << fmt_g(row.params.h) << " failed: " << row.error
                << "\n";
        }

    std::ofstream file;
    std::ostream& sink = open_sink(cfg, file, out);
    if (cfg.format == "svg-data")
        write_sweep_svg_data(sink, cfg, rows, max_j);
    else
        write_sweep_csv(sink, cfg, rows, max_j);
    return failed == rows.size() ? 1 : 0;
}

// ---------- spectrum ----------

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    if (!cfg.has_h())
        throw ConfigError("spectrum needs --h");
    if (cfg.k_list.empty())
        throw ConfigError("spectrum needs --k");
    const weights::WeightSystem ws(cfg.geometry());
    const auto problem = bounds::omega_problem(cfg.omega, ws);
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-9;

    out << "# " << kVersion << "\n";
    out << "# config: " << echo_config("spectrum", cfg) << " omega=" << cfg.omega << "\n";
    out << "k lambda lambda_over_k2\n";
    for (int k : cfg.k_list) {
        const double lam = sturm::eigenvalue(problem, k, tol);
        out << k << " " << fmt(lam) << " " << fmt(lam / (static_cast<double>(k) * k)) << "\n";
    }

    if (cfg.dump_k > 0) {
        const double lam = sturm::eigenvalue(problem, cfg.dump_k, tol);
        const auto pair = sturm::eigenfunction(problem, lam);
        std::ofstream file;
        std::ostream& sink = open_sink(cfg, file, out);
        sink << "# " << kVersion << "\n";
        sink << "# eigenfunction k=" << pair.k << " lambda=" << fmt(pair.lambda)
             << " zeros=" << pair.zeros << "\n";
        sink << "tau,u,du\n";
        for (std::size_t i = 0; i < pair.grid.size(); ++i)
            sink << fmt(pair.grid[i]) << "," << fmt(pair.u[i]) << "," << fmt(pair.du[i])
                 << "\n";
    }
    return 0;
}

// ---------- riemann-check ----------

int cmd_riemann_check(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (!cfg.has_h())
        throw ConfigError("riemann-check needs --h");
    if (cfg.delta != 1.0)
        throw ConfigError("riemann-check is defined for delta = 1");
    const double threshold = cfg.tol > 0.0 ? cfg.tol : 1e-4;
    const double ups = cfg.h / (cfg.n - 1);
    const bool singular = std::abs(ups - 1.0) < 1e-12;
    if (singular && !cfg.tau_only) {
        err << "error: upsilon = 1 (h = n - 1) degenerates the z substitution; "
               "rerun with --tau-only\n";
        return 1;
    }

    weights::GeometryParams gp;
    gp.n = cfg.n;
    gp.delta = 1.0;
    gp.h = cfg.h;
    gp.rule = weights::CurvatureRule::Agol;
    const weights::WeightSystem ws(gp);
    const auto om1 = bounds::omega_problem(1, ws);
    const double lambda = sturm::eigenvalue(om1, 1);
    const auto pair = sturm::eigenfunction(om1, lambda);
    auto sol = riemann::liouville_transform(pair, cfg.h, cfg.n, cfg.tau_only);

    out << "# " << kVersion << "\n";
    out << "# config: " << echo_config("riemann-check", cfg) << "\n";
    out << "lambda1_omega1 " << fmt(lambda) << "\n";
    out << "upsilon " << fmt(ups) << "\n";
    out << "T " << fmt(sol.T) << "\n";

    bool pass = sol.tau_residual <= threshold;
    if (!cfg.tau_only) {
        const auto par = riemann::riemann_params(cfg.n, lambda, ups, sol.T);
        const auto exps = riemann::local_exponents(par);
        out << "q " << fmt_g(par.q) << "\n";
        out << "r " << fmt_g(par.r) << "\n";
        out << "s " << fmt_g(par.s) << "\n";
        out << "a " << fmt_g(par.a) << "\n";
        out << "b " << fmt_g(par.b) << "\n";
        const auto pair_line = [&](const char* name,
                                   const std::array<std::complex<double>, 2>& e) {
            out << name << " " << fmt_g(e[0].real()) << " " << fmt_g(e[0].imag()) << " "
                << fmt_g(e[1].real()) << " " << fmt_g(e[1].imag()) << "\n";
        };
        pair_line("exponents_at_0", exps.at_zero);
        pair_line("exponents_at_1", exps.at_one);
        pair_line("exponents_at_inf", exps.at_infinity);
        out << "exponent_sum " << fmt_g(exps.sum().real()) << " " << fmt_g(exps.sum().imag())
            << "\n";
        out << "fuchsian " << (riemann::fuchsian_check(par) ? "ok" : "bad") << "\n";
        sol.z_residual = riemann::verify_riem2(sol, par);
        out << "z_residual " << fmt(sol.z_residual) << "\n";
        pass = pass && sol.z_residual <= threshold;
    }
    out << "tau_residual " << fmt(sol.tau_residual) << "\n";
    out << "y0_defect " << fmt(sol.y0_defect) << "\n";
    out << "yT_defect " << fmt(sol.yT_defect) << "\n";
    out << "dyT_defect " << fmt(sol.dyT_defect) << "\n";
    out << "status " << (pass ? "pass" : "fail") << "\n";
    return pass ? 0 : 1;
}

// ---------- validate ----------

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    validate::Report report;
    try {
        report = validate::run_all(cfg.tol, cfg.case_filter);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    out << "# " << kVersion << "\n";
    out << "case k expected computed rel_error status\n";
    const auto oracles = {validate::circle_case(), validate::sphere2_case(),
                          validate::torus_case()};
    for (const auto& result : report.cases) {
        const auto oracle =
            std::find_if(oracles.begin(), oracles.end(),
                         [&](const validate::OracleCase& c) { return c.name == result.name; });
        for (std::size_t j = 0; j < result.computed.size(); ++j) {
            const double expected = oracle->expected[j];
            const double rel = std::abs(result.computed[j] - expected) / std::abs(expected);
            out << result.name << " " << j + 1 << " " << fmt(expected) << " "
                << fmt(result.computed[j]) << " " << fmt(rel) << " "
                << (rel <= (cfg.tol > 0.0 ? cfg.tol : oracle->tol) ? "pass" : "fail") << "\n";
        }
        if (!result.error.empty())
            out << result.name << " - - - - error(" << result.error << ")\n";
        for (const auto& w : result.warnings)
            out << "# warning (" << result.name << "): " << w << "\n";
    }

    std::size_t passed = 0;
    for (const auto& c : report.cases)
        if (c.passed)
            ++passed;
    out << "# summary: " << passed << "/" << report.cases.size() << " cases passed\n";
    if (!report.all_passed()) {
        for (const auto& c : report.cases)
            if (!c.passed)
                err << "failed case: " << c.name << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Eigenvalue upper bounds from the Cheeger constant via "
                 "one-dimensional Sturm-Liouville problems"};
    app.name("specbound");
    app.require_subcommand(1);
    // --h is a domain flag, so help must not claim the -h short name.
    app.set_help_flag("--help", "print help");

    CLI::App* bound = app.add_subcommand("bound", "bounds at a single h");
    CLI::App* sweep = app.add_subcommand("sweep", "bounds over an h grid, CSV output");
    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of omega_1 / omega_2");
    CLI::App* riemann_check =
        app.add_subcommand("riemann-check", "transform the first eigenfunction and verify");
    CLI::App* validate_cmd = app.add_subcommand("validate", "run the oracle regression cases");
    for (CLI::App* sub : {bound, sweep, spectrum, riemann_check, validate_cmd}) {
        sub->set_help_flag("--help", "print help");
        add_common_options(sub, cfg);
    }

    try {
        const auto effective = apply_config_file(args);
        std::vector<const char*> argv;
        argv.push_back("specbound");
        for (const auto& a : effective)
            argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (bound->parsed())
            return cmd_bound(cfg, out, err);
        if (sweep->parsed())
            return cmd_sweep(cfg, out, err);
        if (spectrum->parsed())
            return cmd_spectrum(cfg, out, err);
        if (riemann_check->parsed())
            return cmd_riemann_check(cfg, out, err);
        if (validate_cmd->parsed())
            return cmd_validate(cfg, out, err);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace specbound::cli
