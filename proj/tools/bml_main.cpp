// Command-line laboratory: field generation, norm evaluation, heat flow,
// estimate verification, and the full iteration scheme.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "bml/bmf.hpp"
#include "bml/inequality.hpp"
#include "bml/scheme.hpp"

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";
const double kPi = std::numbers::pi;

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("BML_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

ordered_json grid_json(const bml::GridSpec& g) {
    return {{"n", g.n}, {"N", g.N}, {"L", g.L}};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bml::IoError("cannot open " + path.string());
    out << text;
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const ordered_json& config, const bml::GridSpec& grid,
                    int j_lo, int j_hi, int threads) {
    ordered_json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["config"] = config;
    m["grid"] = grid_json(grid);
    m["truncation_range"] = {j_lo, j_hi};
    m["threads"] = threads;
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------- gen

int run_gen(const std::string& kind, int n, int N, double L, int comps,
            double k0, double amplitude, int shell_j, std::uint64_t seed,
            const std::string& out_path) {
    bml::GridSpec grid(n, N, L);
    bml::FieldFamily fam{grid, seed};
    bml::SpectralField f;
    if (kind == "zero") {
        f = bml::SpectralField(grid, comps);
    } else if (kind == "random_bandlimited") {
        f = fam.random_bandlimited(comps, k0, amplitude);
    } else if (kind == "solenoidal") {
        f = fam.random_solenoidal(n, k0, amplitude);
    } else if (kind == "single_shell") {
        bml::DyadicPartition part = bml::build_partition(grid);
        f = fam.single_shell(part, shell_j, comps, amplitude);
    } else {
        throw bml::ConfigError("unknown field kind: " + kind);
    }
    bml::write_bmf(out_path, bml::fft_inverse(f));
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------- norms

int run_norms(const std::string& in_path, const std::string& norm_kind,
              double p, double q, double r, double s, int stride) {
    bml::PhysicalField u = bml::read_bmf(in_path);
    bml::MorreyConfig mc;
    mc.center_stride = stride;
    ordered_json rec;
    rec["norm_kind"] = norm_kind;
    ordered_json params = {{"n", u.grid.n}, {"p", p}, {"q", q}};
    if (norm_kind == "morrey") {
        double v = bml::morrey_norm(u, p, q, mc);
        rec["params"] = params;
        rec["value"] = v;
        rec["truncation_range"] = nullptr;
    } else if (norm_kind == "besov" || norm_kind == "besov_inhomogeneous") {
        bml::SpaceParams sp;
        sp.n = u.grid.n;
        sp.p = p;
        sp.q = q;
        sp.r = r;
        sp.s = s;
        sp.mode = norm_kind == "besov" ? bml::LpMode::homogeneous
                                       : bml::LpMode::inhomogeneous;
        bml::DyadicPartition part = bml::build_partition(u.grid);
        bml::NormResult res = bml::besov_morrey_norm(u, sp, part, mc);
        params["r"] = r == bml::inf ? json("inf") : json(r);
        params["s"] = s;
        params["mode"] =
            sp.mode == bml::LpMode::homogeneous ? "homogeneous" : "inhomogeneous";
        rec["params"] = params;
        rec["value"] = res.value;
        rec["truncation_range"] = {res.j_lo, res.j_hi};
    } else {
        throw bml::ConfigError("unknown norm kind: " + norm_kind);
    }
    std::cout << rec.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------- heat

int run_heat(const std::string& in_path, double t, const std::string& out_path) {
    if (t < 0.0) throw bml::ConfigError("heat time must be nonnegative");
    bml::PhysicalField u = bml::read_bmf(in_path);
    bml::PhysicalField v =
        bml::fft_inverse(bml::heat_evolve(bml::fft_forward(u), t));
    bml::write_bmf(out_path, v);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------- verify

ordered_json report_json(const bml::InequalityReport& rep) {
    ordered_json j;
    j["id"] = rep.id;
    j["fitted_constant"] = rep.fitted_constant;
    j["stability"] = rep.stability;
    j["stability_limit"] = rep.stability_limit;
    j["pass"] = rep.pass;
    ordered_json levels = ordered_json::object();
    for (const auto& [k, v] : rep.level_constants)
        levels[std::to_string(k)] = v;
    j["level_constants"] = levels;
    ordered_json extras = ordered_json::object();
    for (const auto& [k, v] : rep.extras) extras[k] = v;
    j["extras"] = extras;
    j["samples"] = rep.samples.size();
    return j;
}

void write_report(const fs::path& dir, const bml::InequalityReport& rep) {
    write_text(dir / (rep.id + ".json"), report_json(rep).dump(2) + "\n");
    std::string csv = "sample,lhs,rhs\n";
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        char line[96];
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i,
                      rep.samples[i].first, rep.samples[i].second);
        csv += line;
    }
    write_text(dir / (rep.id + ".csv"), csv);
}

int run_verify(const std::string& which, int n, int N, double L, double p,
               double q, double r, double s, int count, std::uint64_t seed,
               const std::string& out_dir, int threads) {
    bml::GridSpec grid(n, N, L);
    bml::DyadicPartition part = bml::build_partition(grid);
    bml::SpaceParams sp;
    sp.n = n;
    sp.p = p;
    sp.q = q;
    sp.r = r;
    sp.s = s;
    fs::create_directories(out_dir);

    std::vector<std::string> ids;
    const std::vector<std::string> all = {
        "bernstein",         "commutator_uv", "commutator_pi", "heat_localized",
        "heat_chemin",       "transport_stokes_linns",         "product_estimates"};
    if (which == "all")
        ids = all;
    else if (std::find(all.begin(), all.end(), which) != all.end())
        ids = {which};
    else
        throw bml::ConfigError("unknown inequality id: " + which);

    bool all_pass = true;
    for (const std::string& id : ids) {
        bml::InequalityReport rep;
        if (id == "bernstein") {
            rep = bml::verify_bernstein(grid, part.j_min, part.j_max, 1, p, q,
                                        count, seed);
        } else if (id == "commutator_uv") {
            rep = bml::verify_commutator_uv(grid, sp, count, seed);
        } else if (id == "commutator_pi") {
            bml::SpaceParams spp = sp;  // this lemma needs s below n/p
            if (!(spp.s > 0.0 && spp.s < n / spp.p)) spp.s = 0.5 * n / spp.p;
            rep = bml::verify_commutator_pi(grid, spp, count, seed);
        } else if (id == "heat_localized") {
            rep = bml::verify_heat_localized(grid, part.j_min, part.j_max, p, q,
                                             count, seed);
        } else if (id == "heat_chemin") {
            rep = bml::verify_heat_chemin(grid, sp, 1.0, count, seed);
        } else if (id == "transport_stokes_linns") {
            rep = bml::verify_transport_stokes_linns(grid, sp, count, seed);
        } else {
            rep = bml::verify_product_estimates(grid, sp, count, seed);
        }
        write_report(out_dir, rep);
        all_pass = all_pass && rep.pass;
        std::cout << rep.id << ": " << (rep.pass ? "pass" : "FAIL")
                  << "  fitted=" << rep.fitted_constant
                  << "  stability=" << rep.stability << "\n";
    }
    ordered_json cfg = {{"inequality", which}, {"p", p},       {"q", q},
                        {"r", r},              {"s", s},       {"count", count},
                        {"seed", seed}};
    write_manifest(out_dir, "verify", cfg, grid, part.j_min, part.j_max, threads);
    std::cout << (all_pass ? "all estimates passed" : "some estimates FAILED")
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- solve

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw bml::ConfigError("unknown config key '" + it.key() + "' in " +
                                   where);
}

bml::SchemeConfig parse_scheme_config(const json& root, bml::GridSpec& grid) {
    require_keys(root, {"grid", "space", "scheme", "seed"}, "config");
    if (!root.contains("grid") || !root.contains("space"))
        throw bml::ConfigError("config needs 'grid' and 'space' sections");
    const json& g = root.at("grid");
    require_keys(g, {"n", "N", "L"}, "grid");
    grid = bml::GridSpec(g.value("n", 2), g.value("N", 32), g.value("L", 2 * kPi));

    bml::SchemeConfig cfg;
    const json& sp = root.at("space");
    require_keys(sp, {"p", "q", "r", "s"}, "space");
    cfg.sp.n = grid.n;
    cfg.sp.p = sp.value("p", 2.0);
    cfg.sp.q = sp.value("q", 4.0 / 3.0);
    cfg.sp.s = sp.value("s", 1.0);
    if (sp.contains("r")) {
        if (sp.at("r").is_string() && sp.at("r") == "inf")
            cfg.sp.r = bml::inf;
        else
            cfg.sp.r = sp.at("r").get<double>();
    }

    if (root.contains("scheme")) {
        const json& sc = root.at("scheme");
        require_keys(sc,
                     {"T", "dt", "m_max", "eps", "smallness_c",
                      "smallness_c_prime", "cauchy_tol", "mode", "init",
                      "norm_stride"},
                     "scheme");
        cfg.T = sc.value("T", cfg.T);
        cfg.dt = sc.value("dt", cfg.dt);
        cfg.m_max = sc.value("m_max", cfg.m_max);
        cfg.eps = sc.value("eps", cfg.eps);
        cfg.smallness_c = sc.value("smallness_c", cfg.smallness_c);
        cfg.smallness_c_prime =
            sc.value("smallness_c_prime", cfg.smallness_c_prime);
        cfg.cauchy_tol = sc.value("cauchy_tol", cfg.cauchy_tol);
        cfg.norm_stride = sc.value("norm_stride", cfg.norm_stride);
        std::string mode = sc.value("mode", "local");
        if (mode == "local")
            cfg.mode = bml::SchemeMode::local;
        else if (mode == "global")
            cfg.mode = bml::SchemeMode::global;
        else
            throw bml::ConfigError("scheme.mode must be local or global");
        std::string init = sc.value("init", "by_mode");
        if (init == "by_mode")
            cfg.init = bml::SchemeInit::by_mode;
        else if (init == "zero")
            cfg.init = bml::SchemeInit::zero;
        else if (init == "heat")
            cfg.init = bml::SchemeInit::heat;
        else
            throw bml::ConfigError("scheme.init must be by_mode, zero, or heat");
    }
    cfg.validate();
    return cfg;
}

int run_solve(const std::string& config_path, const std::string& a0_path,
              const std::string& u0_path, const std::string& out_dir,
              int threads) {
    std::ifstream in(config_path);
    if (!in) throw bml::ConfigError("cannot open config " + config_path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw bml::ConfigError(std::string("config parse error: ") + e.what());
    }
    bml::GridSpec grid;
    bml::SchemeConfig cfg = parse_scheme_config(root, grid);

    bml::PhysicalField a0 = bml::read_bmf(a0_path);
    bml::PhysicalField u0p = bml::read_bmf(u0_path);
    if (!(a0.grid == grid) || !(u0p.grid == grid))
        throw bml::ConfigError("field grids do not match the config grid");
    bml::SpectralField u0 = bml::fft_forward(u0p);

    fs::create_directories(out_dir);
    bml::ConvergenceReport rep = bml::run_scheme(a0, u0, cfg);

    // per-iterate series
    std::string csv = "m,F_norm,gamma,delta_weak_norm,linf_a\n";
    for (std::size_t i = 0; i < rep.F_norms.size(); ++i) {
        char line[160];
        double delta = i < 1 || i - 1 >= rep.deltas.size()
                           ? std::nan("")
                           : rep.deltas[i - 1];
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g\n", i + 1,
                      rep.F_norms[i], rep.gammas[i], delta, rep.linf_a[i]);
        csv += line;
    }
    write_text(fs::path(out_dir) / "iterates.csv", csv);

    // final fields
    const bml::IterationState& st = rep.final_state;
    if (!st.a_series.empty())
        bml::write_bmf((fs::path(out_dir) / "a_final.bmf").string(),
                       st.a_series.back());
    if (!st.u_series.empty())
        bml::write_bmf((fs::path(out_dir) / "u_final.bmf").string(),
                       bml::fft_inverse(st.u_series.back()));
    if (!st.grad_pi_series.empty())
        bml::write_bmf((fs::path(out_dir) / "grad_pi_final.bmf").string(),
                       bml::fft_inverse(st.grad_pi_series.back()));

    ordered_json jr;
    jr["converged"] = rep.converged;
    jr["iterations"] = rep.iterations;
    jr["rho"] = rep.rho;
    jr["r2"] = rep.r2;
    jr["F_norms"] = rep.F_norms;
    jr["gammas"] = rep.gammas;
    jr["deltas"] = rep.deltas;
    jr["linf_a"] = rep.linf_a;
    jr["dt_a_norms"] = rep.dt_a_norms;
    jr["dt_u_norms"] = rep.dt_u_norms;
    jr["gate"] = {{"pass", rep.gate.pass},
                  {"a_norm", rep.gate.a_norm},
                  {"u_norm", rep.gate.u_norm},
                  {"c", rep.gate.c},
                  {"c_prime", rep.gate.c_prime}};
    jr["truncation_range"] = {rep.j_lo, rep.j_hi};
    write_text(fs::path(out_dir) / "report.json", jr.dump(2) + "\n");
    write_manifest(out_dir, "solve", ordered_json(root), grid, rep.j_lo,
                   rep.j_hi, threads);

    std::cout << (rep.converged ? "converged" : "stopped") << " after "
              << rep.iterations << " iterates, rho=" << rep.rho << "\n";
    return 0;
}

// ---------------------------------------------------------------- info

int run_info() {
    ordered_json j;
    j["version"] = kVersion;
    j["defaults"] = {{"grid", {{"n", 2}, {"N", 32}, {"L", 2 * kPi}}},
                     {"smallness_c", 0.25},
                     {"smallness_c_prime", 0.1},
                     {"cauchy_tol", 0.75},
                     {"inner_tol", 1e-11},
                     {"a_max", 0.95},
                     {"dealias_rule", "2/3"}};
    j["parameter_windows"] = {
        {"local", "n/p - 1 < s <= n/p with n/p >= 1 (subcritical horizon)"},
        {"global", "s = n/p - 1 with n/p > 1 (critical, small data)"},
        {"morrey", "1 <= q <= p < inf"},
        {"summability", "1 <= r <= inf"}};
    j["exit_codes"] = {{"0", "success"},
                       {"2", "configuration error"},
                       {"3", "smallness gate or contraction failure"}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"besov-morrey laboratory"};
    app.require_subcommand(1);
    int threads_flag = 0;
    app.add_option("--threads", threads_flag, "worker count (default BML_THREADS or 1)");

    // info
    CLI::App* info = app.add_subcommand("info", "print version and parameter windows");

    // gen
    CLI::App* gen = app.add_subcommand("gen", "generate a deterministic test field");
    std::string gen_kind = "random_bandlimited", gen_out = "field.bmf";
    int gen_n = 2, gen_N = 32, gen_comps = 1, gen_j = 1;
    double gen_L = 2 * kPi, gen_k0 = 3.0, gen_amp = 1.0;
    std::uint64_t gen_seed = 1;
    gen->add_option("--kind", gen_kind,
                    "zero | random_bandlimited | solenoidal | single_shell");
    gen->add_option("--n", gen_n, "dimension");
    gen->add_option("--N", gen_N, "points per axis");
    gen->add_option("--L", gen_L, "period");
    gen->add_option("--comps", gen_comps, "components");
    gen->add_option("--k0", gen_k0, "spectral shape width");
    gen->add_option("--amplitude", gen_amp, "target sup norm");
    gen->add_option("--j", gen_j, "shell index for single_shell");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output BMF1 path");

    // norms
    CLI::App* norms = app.add_subcommand("norms", "evaluate a norm of a BMF1 field");
    std::string norms_in, norms_kind = "besov", norms_r = "1";
    double norms_p = 2.0, norms_q = 4.0 / 3.0, norms_s = 1.0;
    int norms_stride = 1;
    norms->add_option("--in", norms_in, "input BMF1 path")->required();
    norms->add_option("--kind", norms_kind, "morrey | besov | besov_inhomogeneous");
    norms->add_option("--p", norms_p, "Morrey p");
    norms->add_option("--q", norms_q, "Morrey q");
    norms->add_option("--r", norms_r, "summability (number or inf)");
    norms->add_option("--s", norms_s, "regularity");
    norms->add_option("--stride", norms_stride, "Morrey center stride");

    // heat
    CLI::App* heat = app.add_subcommand("heat", "apply the heat semigroup to a field");
    std::string heat_in, heat_out = "heat.bmf";
    double heat_t = 0.1;
    heat->add_option("--in", heat_in, "input BMF1 path")->required();
    heat->add_option("--t", heat_t, "time");
    heat->add_option("--out", heat_out, "output BMF1 path");

    // verify
    CLI::App* verify = app.add_subcommand("verify", "measure both sides of the estimates");
    std::string ver_id = "all", ver_out = "verify_out";
    int ver_n = 2, ver_N = 32, ver_count = 3;
    double ver_L = 2 * kPi, ver_p = 2.0, ver_q = 4.0 / 3.0, ver_s = 1.0;
    std::string ver_r = "1";
    std::uint64_t ver_seed = 1;
    verify->add_option("--inequality", ver_id,
                       "bernstein | commutator_uv | commutator_pi | heat_localized |"
                       " heat_chemin | transport_stokes_linns | product_estimates | all");
    verify->add_option("--n", ver_n, "dimension");
    verify->add_option("--grid", ver_N, "points per axis");
    verify->add_option("--L", ver_L, "period");
    verify->add_option("--p", ver_p, "Morrey p");
    verify->add_option("--q", ver_q, "Morrey q");
    verify->add_option("--r", ver_r, "summability (number or inf)");
    verify->add_option("--s", ver_s, "regularity");
    verify->add_option("--count", ver_count, "samples per level");
    verify->add_option("--seed", ver_seed, "rng seed");
    verify->add_option("--out", ver_out, "output directory");

    // solve
    CLI::App* solve = app.add_subcommand("solve", "run the iteration scheme");
    std::string solve_cfg, solve_a0, solve_u0, solve_out = "run";
    solve->add_option("--config", solve_cfg, "config JSON path")->required();
    solve->add_option("--a0", solve_a0, "density BMF1 path")->required();
    solve->add_option("--u0", solve_u0, "velocity BMF1 path")->required();
    solve->add_option("--out", solve_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    auto parse_r = [](const std::string& text) {
        return text == "inf" ? bml::inf : std::stod(text);
    };

    const int threads = resolve_threads(threads_flag);
    try {
        if (info->parsed()) return run_info();
        if (gen->parsed())
            return run_gen(gen_kind, gen_n, gen_N, gen_L, gen_comps, gen_k0,
                           gen_amp, gen_j, gen_seed, gen_out);
        if (norms->parsed())
            return run_norms(norms_in, norms_kind, norms_p, norms_q,
                             parse_r(norms_r), norms_s, norms_stride);
        if (heat->parsed()) return run_heat(heat_in, heat_t, heat_out);
        if (verify->parsed())
            return run_verify(ver_id, ver_n, ver_N, ver_L, ver_p, ver_q,
                              parse_r(ver_r), ver_s, ver_count, ver_seed, ver_out,
                              threads);
        if (solve->parsed())
            return run_solve(solve_cfg, solve_a0, solve_u0, solve_out, threads);
    } catch (const bml::SmallnessGateFailed& e) {
        std::cerr << "gate failure: " << e.what() << "\n";
        return 3;
    } catch (const bml::ContractionFailure& e) {
        std::cerr << "contraction failure: " << e.what() << "\n";
        return 3;
    } catch (const bml::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
