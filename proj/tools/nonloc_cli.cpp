// Command-line front end. Config is a flat key=value file; flags override
// file values. Every run writes CSV outputs plus a JSON manifest with a
// checksum per file. All randomness flows from --seed, so identical config
// and seed reproduce identical bytes.
//
// Exit codes: 0 ok, 1 config, 2 non-convergence, 3 oracle mismatch, 4 I/O.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nonloc/beta.hpp"
#include "nonloc/eigen.hpp"
#include "nonloc/oracle.hpp"
#include "nonloc/parabolic.hpp"

using json = nlohmann::ordered_json;
using namespace nonloc;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct RunContext {
    std::map<std::string, std::string> config; // effective key=value view
    std::string out_prefix = "nonloc";
    std::uint64_t seed = 1;
    std::vector<std::pair<std::string, std::uint64_t>> outputs;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void write_csv(const std::string& suffix, const std::string& header,
                   const std::vector<std::vector<double>>& rows) {
        std::ostringstream os;
        os << header << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << fmt(row[i]);
            os << "\n";
        }
        const std::string path = out_prefix + "_" + suffix + ".csv";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw io_error("cannot open " + path + " for writing");
        f << os.str();
        if (!f) throw io_error("short write to " + path);
        outputs.emplace_back(path, fnv1a64(os.str()));
    }

    void write_manifest(const std::string& subcommand, const json& results) {
        json m;
        m["subcommand"] = subcommand;
        m["seed"] = seed;
        m["config"] = json::object();
        for (const auto& [k, v] : config) m["config"][k] = v;
        m["results"] = results;
        m["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        m["outputs"] = json::array();
        for (const auto& [path, sum] : outputs) {
            char hex[20];
            std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)sum);
            m["outputs"].push_back({{"path", path}, {"fnv1a64", hex}});
        }
        const std::string path = out_prefix + "_manifest.json";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw io_error("cannot open " + path + " for writing");
        f << m.dump(2) << "\n";
        if (!f) throw io_error("short write to " + path);
    }
};

// key=value lines; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        const size_t v0 = val.find_first_not_of(" \t");
        val = v0 == std::string::npos ? "" : val.substr(v0);
        kv[key] = val;
    }
    return kv;
}

double to_double(const std::string& key, const std::string& val) {
    try {
        size_t used = 0;
        const double v = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': not a number: " + val);
    }
}

struct RunConfig {
    double lambda_lo = 1.0, lambda_hi = 1.0, s = 0.5, cplus = 0.0;
    double dom_a = -1.0, dom_b = 1.0;
    int n_nodes = 128;
    std::string family = "extremal_plus";
    std::string sign = "plus";
    std::string source = "const1"; // const1 | bump
    double tol = 1e-8;
    double beta = 0.0;   // 0: derive from the kernel where a beta is needed
    double delta = 0.2;
    double rho_lo = 0.0, rho_hi = 0.0; // 0,0: derive from lambda1+
    int rho_steps = 100;
    double horizon = 0.0; // 0: derive from lambda1+
    int beta_samples = 33;

    KernelClass kernel() const { return {lambda_lo, lambda_hi, s, cplus}; }

    std::shared_ptr<const Grid> grid() const {
        return std::make_shared<const Grid>(interval_grid(dom_a, dom_b, n_nodes));
    }

    ExtremalSign eigen_sign() const {
        if (sign == "plus") return ExtremalSign::Plus;
        if (sign == "minus") return ExtremalSign::Minus;
        throw config_error("config key 'sign': expected plus or minus, got " + sign);
    }

    // family spec: extremal_plus | extremal_minus | control lists, where
    // outer (inf) lists are split by ';', inner (sup) controls by ',' and a
    // control is kappa[:drift], e.g. "1:0,2:0;1.5:0.2".
    ControlFamily family_spec() const {
        if (family == "extremal_plus") return ControlFamily::extremal_plus();
        if (family == "extremal_minus") return ControlFamily::extremal_minus();
        std::vector<std::vector<Control>> lists;
        std::stringstream outer(family);
        std::string part;
        while (std::getline(outer, part, ';')) {
            std::vector<Control> inner;
            std::stringstream ss(part);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty()) continue;
                Control c;
                const size_t colon = tok.find(':');
                c.kappa = to_double("family", tok.substr(0, colon));
                if (colon != std::string::npos)
                    c.drift = to_double("family", tok.substr(colon + 1));
                inner.push_back(c);
            }
            if (!inner.empty()) lists.push_back(std::move(inner));
        }
        if (lists.empty()) throw config_error("config key 'family': empty control spec");
        ControlFamily f = ControlFamily::inf_sup(std::move(lists));
        f.validate(kernel());
        return f;
    }

    GridFunction source_fn(const std::shared_ptr<const Grid>& g) const {
        GridFunction f(g);
        const double mid = 0.5 * (dom_a + dom_b), w = 0.5 * (dom_b - dom_a);
        for (int i = 0; i < f.size(); ++i) {
            const double x = g->nodes[i][0];
            if (source == "const1") f[i] = 1.0;
            else if (source == "bump") {
                const double r = (x - mid) / w;
                f[i] = std::max(0.0, 1.0 - 4.0 * r * r);
            } else
                throw config_error("config key 'source': expected const1 or bump, got " + source);
        }
        return f;
    }
};

void apply_config(RunConfig& rc, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, val] : kv) {
        if (key == "lambda") rc.lambda_lo = to_double(key, val);
        else if (key == "Lambda") rc.lambda_hi = to_double(key, val);
        else if (key == "s") rc.s = to_double(key, val);
        else if (key == "cplus") rc.cplus = to_double(key, val);
        else if (key == "domain") {
            const size_t comma = val.find(',');
            if (comma == std::string::npos)
                throw config_error("config key 'domain': expected a,b");
            rc.dom_a = to_double(key, val.substr(0, comma));
            rc.dom_b = to_double(key, val.substr(comma + 1));
        } else if (key == "n") rc.n_nodes = (int)to_double(key, val);
        else if (key == "spacing") {
            const double len = rc.dom_b - rc.dom_a;
            rc.n_nodes = (int)std::lround(len / to_double(key, val)) - 1;
        } else if (key == "family") rc.family = val;
        else if (key == "sign") rc.sign = val;
        else if (key == "source") rc.source = val;
        else if (key == "tol") rc.tol = to_double(key, val);
        else if (key == "beta") rc.beta = to_double(key, val);
        else if (key == "delta") rc.delta = to_double(key, val);
        else if (key == "rho_lo") rc.rho_lo = to_double(key, val);
        else if (key == "rho_hi") rc.rho_hi = to_double(key, val);
        else if (key == "rho_steps") rc.rho_steps = (int)to_double(key, val);
        else if (key == "horizon") rc.horizon = to_double(key, val);
        else if (key == "beta_samples") rc.beta_samples = (int)to_double(key, val);
        else throw config_error("unknown config key '" + key + "'");
    }
}

EigenResult principal(const RunConfig& rc, ExtremalSign sign, std::uint64_t seed) {
    EigenConfig cfg;
    cfg.sign = sign;
    cfg.cw_gap_tol = rc.tol;
    cfg.seed = seed;
    EigenResult res = inverse_power(rc.family_spec(), rc.kernel(), rc.grid(), cfg);
    if (!res.converged) throw convergence_error("eigen iteration did not converge");
    return res;
}

int run_beta(const RunConfig& rc, RunContext& ctx) {
    BetaProfile p = profile(rc.kernel(), rc.beta_samples);
    std::vector<std::vector<double>> rows;
    for (const BetaSample& s : p.samples) rows.push_back({s.beta, s.c_plus, s.c_minus});
    ctx.write_csv("beta", "beta,c_plus,c_minus", rows);
    ctx.write_manifest("beta", {{"beta1", p.beta1}, {"beta2", p.beta2}});
    return 0;
}

int run_solve(const RunConfig& rc, RunContext& ctx) {
    auto g = rc.grid();
    SolveConfig cfg;
    cfg.residual_tol = rc.tol;
    SolveReport rep = solve(rc.source_fn(g), rc.family_spec(), rc.kernel(), cfg);
    if (!rep.converged) throw convergence_error("dirichlet solve did not converge");
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < rep.u.size(); ++i) rows.push_back({g->nodes[i][0], rep.u[i]});
    ctx.write_csv("solution", "x,u", rows);
    ctx.write_manifest("solve", {{"iterations", rep.iterations},
                                 {"final_residual", rep.residual_history.back()},
                                 {"sup_u", rep.u.sup_norm()}});
    return 0;
}

int run_eigen(const RunConfig& rc, RunContext& ctx) {
    EigenResult res = principal(rc, rc.eigen_sign(), ctx.seed);
    auto g = res.phi.grid;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < res.phi.size(); ++i) rows.push_back({g->nodes[i][0], res.phi[i]});
    ctx.write_csv("eigenfunction", "x,phi", rows);
    ctx.write_manifest("eigen", {{"lambda", res.lambda},
                                 {"cw_lo", res.cw_lo},
                                 {"cw_hi", res.cw_hi},
                                 {"cw_gap", res.cw_hi - res.cw_lo},
                                 {"outer_iters", res.outer_iters}});
    return 0;
}

int run_parabolic(const RunConfig& rc, RunContext& ctx) {
    EigenResult res = principal(rc, ExtremalSign::Plus, ctx.seed);
    EigenRef ref{res.lambda, res.phi};
    auto g = rc.grid();
    const KernelClass k = rc.kernel();
    QuadratureTable q = build_quadrature(*g, k);
    const double tau = 0.9 / center_dependence_bound(q, k);
    const double horizon = rc.horizon > 0.0 ? rc.horizon : 6.0 / res.lambda;
    DecaySeries series =
        decay_ratio_series(rc.source_fn(g), ref, rc.family_spec(), k, tau, horizon);
    std::vector<std::vector<double>> rows;
    for (const DecaySample& s : series.samples) rows.push_back({s.t, s.sup_h, s.ratio});
    ctx.write_csv("decay", "t,sup_h,ratio", rows);
    ctx.write_manifest("parabolic",
                       {{"lambda", res.lambda},
                        {"fitted_slope", decay_rate_fit(series, 0.3 * horizon)},
                        {"r0_plus", series.r0_plus},
                        {"ratio_max", series.ratio_max},
                        {"ratio_bound_holds", series.ratio_bound_holds}});
    return 0;
}

int run_abp(const RunConfig& rc, RunContext& ctx) {
    SolveConfig cfg;
    cfg.residual_tol = rc.tol;
    const KernelClass k = rc.kernel();
    std::vector<std::vector<double>> rows;
    for (int n : {rc.n_nodes, 2 * rc.n_nodes + 1}) { // h and h/2
        auto g = std::make_shared<const Grid>(interval_grid(rc.dom_a, rc.dom_b, n));
        rows.push_back({g->h, abp_ratio(rc.source_fn(g), k, cfg)});
    }
    ctx.write_csv("abp", "h,abp_ratio", rows);
    const double drift = std::abs(rows[0][1] - rows[1][1]) / std::max(rows[0][1], rows[1][1]);
    ctx.write_manifest("abp", {{"ratio_h", rows[0][1]},
                               {"ratio_h_half", rows[1][1]},
                               {"relative_drift", drift}});
    return 0;
}

int run_barrier(const RunConfig& rc, RunContext& ctx) {
    const KernelClass k = rc.kernel();
    const double b1 = find_beta_root(k, ExtremalSign::Plus, 1e-6);
    const double b2 = find_beta_root(k, ExtremalSign::Minus, 1e-6);
    std::vector<double> betas;
    if (rc.beta > 0.0) betas.push_back(rc.beta);
    else betas = {b1 - 0.1, b1 + 0.1, b2 - 0.1, b2 + 0.1};
    auto g = rc.grid();
    BarrierSignReport rep = barrier_sign_check(g, k, betas, rc.delta, 12.0 * g->h);
    std::vector<std::vector<double>> rows;
    for (const BarrierSignRow& r : rep.rows)
        rows.push_back({r.beta, r.sign == ExtremalSign::Plus ? 1.0 : -1.0, r.min_value,
                        r.max_value, r.fitted_slope, r.one_signed ? 1.0 : 0.0});
    ctx.write_csv("barrier", "beta,extremal_sign,min_value,max_value,fitted_slope,one_signed",
                  rows);
    ctx.write_manifest("barrier", {{"beta1", b1}, {"beta2", b2}});
    return 0;
}

int run_threshold(const RunConfig& rc, RunContext& ctx) {
    EigenResult res = principal(rc, ExtremalSign::Plus, ctx.seed);
    double lo = rc.rho_lo, hi = rc.rho_hi;
    if (!(hi > lo)) {
        lo = 0.5 * res.lambda;
        hi = 1.1 * res.lambda;
    }
    std::vector<double> rho_grid;
    for (int i = 0; i <= rc.rho_steps; ++i)
        rho_grid.push_back(lo + (hi - lo) * i / rc.rho_steps);
    SolveConfig cfg;
    cfg.residual_tol = rc.tol;
    ThresholdResult thr =
        max_principle_threshold(rc.family_spec(), rc.kernel(), rc.grid(), rho_grid, cfg);
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < thr.tested_rho.size(); ++i)
        rows.push_back({thr.tested_rho[i], thr.positive[i] ? 1.0 : 0.0});
    ctx.write_csv("threshold", "rho,positive", rows);
    json results = {{"lambda1_plus", res.lambda}};
    if (thr.breakdown_rho) results["breakdown_rho"] = *thr.breakdown_rho;
    ctx.write_manifest("threshold", results);
    return 0;
}

// Oracle gates: the iterative eigenvalue against the dense-matrix route, and
// the profile constants against the independent quadrature. Exit 3 on any
// disagreement beyond the pinned bounds.
int run_check(const RunConfig& rc, RunContext& ctx) {
    auto g = std::make_shared<const Grid>(interval_grid(-1.0, 1.0, 256));
    KernelClass klin(1.0, 1.0, 0.5);
    EigenConfig ecfg;
    ecfg.cw_gap_tol = 1e-10;
    ecfg.seed = ctx.seed;
    EigenResult it = inverse_power(ControlFamily::single({1.0, 0.0}), klin, g, ecfg);
    QuadratureTable q = build_quadrature(*g, klin);
    auto dense =
        oracle::dense_principal_eigen(oracle::assemble_dense({1.0, 0.0}, g, q, klin), 1e-12);
    const double eigen_gap = std::abs(it.lambda - dense.lambda);

    const KernelClass k = rc.kernel();
    double worst_c = 0.0;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 8; ++i) {
        const double b = 2.0 * k.s * (0.05 + 0.9 * i / 7.0);
        for (ExtremalSign sg : {ExtremalSign::Plus, ExtremalSign::Minus}) {
            const double a = oracle::quadrature_oracle(b, k, sg, 1e-10);
            const double c = c_constant(b, k, sg, 1e-10);
            worst_c = std::max(worst_c, std::abs(a - c) / std::max(1.0, std::abs(c)));
            rows.push_back({b, sg == ExtremalSign::Plus ? 1.0 : -1.0, c, a});
        }
    }
    ctx.write_csv("check", "beta,extremal_sign,c_constant,quadrature_oracle", rows);
    const bool ok = it.converged && eigen_gap <= 1e-8 && worst_c <= 1e-8;
    ctx.write_manifest("check", {{"eigen_gap", eigen_gap},
                                 {"worst_c_mismatch", worst_c},
                                 {"ok", ok}});
    if (!ok) {
        std::fprintf(stderr, "oracle mismatch: eigen gap %.3e, c mismatch %.3e\n", eigen_gap,
                     worst_c);
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal Bellman-Isaacs discretization toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_prefix = "nonloc";
    std::uint64_t seed = 1;
    int workers = 1; // results are independent of the worker count
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--out", out_prefix, "output path prefix");
    app.add_option("--seed", seed, "seed for all randomness");
    app.add_option("--workers", workers, "worker threads (results are identical for any value)");

    std::map<std::string, std::string> flag_kv;
    const std::vector<std::string> keys = {
        "lambda", "Lambda", "s",      "cplus",  "domain",    "n",      "spacing",
        "family", "sign",   "source", "tol",    "beta",      "delta",  "rho_lo",
        "rho_hi", "rho_steps", "horizon", "beta_samples"};
    std::map<std::string, int (*)(const RunConfig&, RunContext&)> dispatch = {
        {"beta", run_beta},         {"solve", run_solve},   {"eigen", run_eigen},
        {"parabolic", run_parabolic}, {"abp", run_abp},     {"barrier", run_barrier},
        {"threshold", run_threshold}, {"check", run_check}};
    std::map<std::string, CLI::App*> subs;
    std::map<std::string, std::map<std::string, std::string>> sub_flags;
    for (const auto& [name, fn] : dispatch) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough(); // global flags may follow the subcommand
        subs[name] = sub;
        for (const std::string& key : keys)
            sub->add_option_function<std::string>(
                "--" + key,
                [&sub_flags, name = name, key](const std::string& v) { sub_flags[name][key] = v; },
                "config key '" + key + "'");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& [name, sub] : subs) {
            if (!sub->parsed()) continue;
            RunConfig rc;
            std::map<std::string, std::string> kv;
            if (!config_path.empty()) kv = parse_config_file(config_path);
            for (const auto& [k, v] : sub_flags[name]) kv[k] = v; // flags win
            apply_config(rc, kv);
            rc.kernel(); // validate early: lambda/s ranges, drift needs s > 1/2

            RunContext ctx;
            ctx.config = kv;
            ctx.out_prefix = out_prefix;
            ctx.seed = seed;
            return dispatch[name](rc, ctx);
        }
        return 1;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const convergence_error& e) {
        std::fprintf(stderr, "non-convergence: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
