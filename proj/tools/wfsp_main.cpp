// =============================================================================
// wfsp_main.cpp — Command-line front end.
//
// Subcommands: psi, phase-diagram, exact, simulate, verify, discovery,
// hitting.  Scalar results print as JSON; sweeps and trajectories stream as
// CSV with a header comment carrying the config hash and the seed, so every
// number in an output file can be traced to the invocation that produced it.
//
// Exit codes: 0 success, 1 usage error, 2 numerical non-convergence,
// 3 verification failure.
// =============================================================================
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wfsp/coupling.hpp"
#include "wfsp/io_util.hpp"
#include "wfsp/kernels.hpp"
#include "wfsp/markov.hpp"
#include "wfsp/neutral.hpp"
#include "wfsp/occupancy.hpp"
#include "wfsp/params.hpp"
#include "wfsp/quasipotential.hpp"
#include "wfsp/rate_functions.hpp"
#include "wfsp/rng.hpp"
#include "wfsp/simulate.hpp"
#include "wfsp/two_type.hpp"
#include "wfsp/verify.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string out = "-";
    int threads = 1;  // accepted for interface stability; kernels run serial
    bool force_json = false;
    bool force_csv = false;
};

std::string fmt17(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string phase_name(wfsp::Phase ph) {
    switch (ph) {
        case wfsp::Phase::Disordered: return "Disordered";
        case wfsp::Phase::Quasispecies: return "Quasispecies";
        default: return "NearCritical";
    }
}

void attach_model_options(CLI::App* cmd, wfsp::ModelParams& mp, bool with_sigma = true) {
    if (with_sigma) cmd->add_option("--sigma", mp.sigma, "peak fitness advantage (>= 1)");
    cmd->add_option("--ell", mp.ell, "chromosome length")->required();
    cmd->add_option("--m", mp.m, "population size")->required();
    cmd->add_option("--kappa", mp.kappa, "alphabet size (>= 2)");
    cmd->add_option("--q", mp.q, "per-locus mutation probability")->required();
}

json model_config(const wfsp::ModelParams& mp, const std::string& command,
                  const GlobalOpts& g) {
    json cfg = mp;
    cfg["command"] = command;
    cfg["seed"] = g.seed;
    return cfg;
}

void print_scalar(const GlobalOpts& g, const json& cfg, json values) {
    values["command"] = cfg.at("command");
    values["config_hash"] = wfsp::config_hash(cfg);
    values["seed"] = g.seed;
    wfsp::OutputTarget target(g.out);
    target.stream() << values.dump(2) << "\n";
}

// ── psi ──────────────────────────────────────────────────────────────────────

int run_psi(const GlobalOpts& g, const wfsp::RateParams& rp, const wfsp::PsiOptions& opt) {
    rp.validate();
    const wfsp::PsiResult res = wfsp::psi(rp, opt);
    json cfg = {{"command", "psi"},          {"a", rp.a},
                {"sigma", rp.sigma},         {"kappa", rp.kappa},
                {"grid", opt.grid},          {"tol", opt.tol},
                {"max_doublings", opt.max_doublings},
                {"variational_check", opt.variational_check},
                {"check_grid", opt.check_grid},
                {"seed", g.seed}};
    print_scalar(g, cfg,
                 json{{"a", res.a},
                      {"sigma", res.sigma},
                      {"psi", res.value},
                      {"grid", res.grid},
                      {"converged", res.converged},
                      {"delta", res.delta}});
    return res.converged ? 0 : 2;
}

// ── phase-diagram ────────────────────────────────────────────────────────────

struct SweepSpec {
    std::vector<double> range;  // lo hi
    int points = 1;

    std::vector<double> values() const {
        std::vector<double> v;
        if (points <= 1 || range[0] == range[1]) {
            v.push_back(range[0]);
            return v;
        }
        for (int i = 0; i < points; ++i) {
            v.push_back(range[0] + (range[1] - range[0]) * i / (points - 1));
        }
        return v;
    }
};

int run_phase_diagram(const GlobalOpts& g, const wfsp::RateParams& base, const SweepSpec& a_spec,
                      const SweepSpec& alpha_spec, const wfsp::PsiOptions& opt) {
    json cfg = {{"command", "phase-diagram"},
                {"sigma", base.sigma},
                {"kappa", base.kappa},
                {"a_range", a_spec.range},
                {"a_points", a_spec.points},
                {"alpha_range", alpha_spec.range},
                {"alpha_points", alpha_spec.points},
                {"grid", opt.grid},
                {"seed", g.seed}};
    wfsp::OutputTarget target(g.out);
    wfsp::CsvWriter csv(target.stream(), cfg, g.seed,
                        {"a", "alpha", "psi", "ln_kappa_over_alpha", "phase"});
    const double ln_kappa = std::log(static_cast<double>(base.kappa));
    bool all_converged = true;
    for (double a : a_spec.values()) {
        wfsp::RateParams rp{a, base.sigma, base.kappa};
        rp.validate();
        const wfsp::PsiResult ps = wfsp::psi(rp, opt);
        all_converged = all_converged && ps.converged;
        for (double alpha : alpha_spec.values()) {
            const auto cls = wfsp::classify_phase(alpha, ps, base.kappa);
            std::ostringstream line;
            line << fmt17(a) << ',' << fmt17(alpha) << ',' << fmt17(ps.value) << ','
                 << fmt17(ln_kappa / alpha) << ',' << phase_name(cls.phase);
            csv.row_raw(line.str());
        }
    }
    return all_converged ? 0 : 2;
}

// ── exact ────────────────────────────────────────────────────────────────────

int run_exact(const GlobalOpts& g, const wfsp::ModelParams& mp, const std::string& theta_name,
              bool dump_kernel, bool log_space) {
    mp.validate();
    const wfsp::Theta theta =
        theta_name == "lower" ? wfsp::Theta::Lower : wfsp::Theta::Upper;
    const auto K = wfsp::build_two_type_kernel(mp, theta);
    json cfg = model_config(mp, "exact", g);
    cfg["theta"] = theta_name;

    if (dump_kernel) {
        wfsp::OutputTarget target(g.out);
        wfsp::CsvWriter csv(target.stream(), cfg, g.seed, {"h", "k", log_space ? "log_p" : "p"});
        for (int h = 0; h <= K.m; ++h) {
            for (int k = 0; k <= K.m; ++k) {
                csv.row({static_cast<double>(h), static_cast<double>(k),
                         log_space ? K.log_p[h][k] : K.p[h][k]});
            }
        }
        return 0;
    }

    const auto tau = wfsp::expected_hitting_time(K);
    const auto occ = wfsp::occupation_functional(K, [](double x) { return x; });
    const auto mu = wfsp::stationary_distribution(K);

    if (g.force_csv) {
        wfsp::OutputTarget target(g.out);
        wfsp::CsvWriter csv(target.stream(), cfg, g.seed,
                            {"i", "e_tau0", "occupation_linear", "stationary_p"});
        for (int i = 0; i <= K.m; ++i) {
            csv.row({static_cast<double>(i), tau[i], occ[i], mu[i]});
        }
        return 0;
    }

    double mean_frac = 0.0;
    for (int i = 0; i <= K.m; ++i) mean_frac += mu[i] * i / K.m;
    print_scalar(g, cfg,
                 json{{"theta", theta_name},
                      {"m", K.m},
                      {"keep_prob", K.keep_prob},
                      {"entry_prob", K.entry_prob},
                      {"e_tau0_from_m", tau[K.m]},
                      {"log_e_tau0_over_m", std::log(tau[K.m]) / K.m},
                      {"occupation_ratio_at_m", occ[K.m] / tau[K.m]},
                      {"stationary_master_mean", mean_frac}});
    return 0;
}

// ── simulate ─────────────────────────────────────────────────────────────────

int run_simulate(const GlobalOpts& g, const wfsp::ModelParams& mp, const std::string& chain,
                 const std::string& theta_name, long long steps, const std::string& start_name) {
    mp.validate();
    json cfg = model_config(mp, "simulate", g);
    cfg["chain"] = chain;
    cfg["steps"] = steps;
    cfg["start"] = start_name;
    if (chain == "two-type") cfg["theta"] = theta_name;

    wfsp::Occupancy start(mp.ell + 1, 0);
    if (start_name == "peak") {
        start[0] = mp.m;
    } else {
        start[mp.ell] = mp.m;
    }
    wfsp::SplitRng rng(g.seed, 0);
    wfsp::OutputTarget target(g.out);

    if (chain == "occupancy") {
        std::vector<std::string> cols = {"step"};
        for (int k = 0; k <= mp.ell; ++k) cols.push_back("o" + std::to_string(k));
        wfsp::CsvWriter csv(target.stream(), cfg, g.seed, cols);
        const wfsp::LumpedSampler sampler(mp);
        wfsp::Occupancy o = start;
        for (long long n = 0; n <= steps; ++n) {
            std::vector<double> row = {static_cast<double>(n)};
            for (int v : o) row.push_back(v);
            csv.row(row);
            if (n < steps) o = sampler.step_occupancy(o, rng);
        }
        return 0;
    }
    if (chain == "two-type") {
        const wfsp::Theta theta =
            theta_name == "lower" ? wfsp::Theta::Lower : wfsp::Theta::Upper;
        wfsp::CsvWriter csv(target.stream(), cfg, g.seed, {"step", "z"});
        int z = start_name == "peak" ? mp.m : 0;
        for (long long n = 0; n <= steps; ++n) {
            csv.row({static_cast<double>(n), static_cast<double>(z)});
            if (n < steps) {
                const auto r = wfsp::RandomInputMatrix::draw(mp.m, mp.ell, rng);
                z = wfsp::two_type_step(mp, z, r, theta);
            }
        }
        return 0;
    }
    if (chain == "sandwich") {
        wfsp::CsvWriter csv(target.stream(), cfg, g.seed,
                            {"step", "lower_master", "mid_master", "upper_master", "ordered"});
        wfsp::SandwichState st = wfsp::sandwich_start(mp, start);
        bool ok = true;
        for (long long n = 0; n <= steps; ++n) {
            csv.row({static_cast<double>(n), static_cast<double>(st.lower[0]),
                     static_cast<double>(st.mid[0]), static_cast<double>(st.upper[0]),
                     ok ? 1.0 : 0.0});
            if (n < steps) ok = wfsp::sandwich_step(mp, st, rng);
        }
        return 0;
    }
    throw CLI::ValidationError("--chain must be occupancy, two-type, or sandwich");
}

// ── verify ───────────────────────────────────────────────────────────────────

int run_verify(const GlobalOpts& g, bool full) {
    const auto level = full ? wfsp::VerifyLevel::Full : wfsp::VerifyLevel::Quick;
    const wfsp::VerifyReport rep = wfsp::run_verification(level, g.seed);
    wfsp::OutputTarget target(g.out);
    auto& os = target.stream();
    for (const auto& c : rep.checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    os << (rep.all_pass() ? "verification OK" : "verification FAILED") << "  ["
       << rep.checks.size() << " checks, level " << (full ? "full" : "quick") << ", seed "
       << g.seed << "]\n";
    return rep.all_pass() ? 0 : 3;
}

// ── discovery ────────────────────────────────────────────────────────────────

int run_discovery(const GlobalOpts& g, const wfsp::ModelParams& mp, int replicas,
                  long long horizon) {
    mp.validate();
    json cfg = model_config(mp, "discovery", g);
    cfg["replicas"] = replicas;
    cfg["horizon"] = horizon;
    wfsp::Occupancy start(mp.ell + 1, 0);
    start[mp.ell] = mp.m;
    const auto est =
        wfsp::discovery_time_mc(mp, start, replicas, horizon, wfsp::SplitRng(g.seed, 0));
    print_scalar(g, cfg,
                 json{{"mean", est.mean},
                      {"se", est.se},
                      {"censored_fraction", est.censored_fraction},
                      {"lower_bound_flag", est.lower_bound_flag},
                      {"bound_m_times_Etau0", est.bound},
                      {"bound_satisfied", est.bound_satisfied},
                      {"replicas", est.replicas}});
    return 0;
}

// ── hitting ──────────────────────────────────────────────────────────────────

int run_hitting(const GlobalOpts& g, const wfsp::ModelParams& mp, const std::string& chain,
                const std::string& theta_name) {
    mp.validate();
    json cfg = model_config(mp, "hitting", g);
    cfg["chain"] = chain;

    if (chain == "single") {
        // One neutral chromosome's distance class, absorbed at the peak.
        const auto tau = wfsp::expected_hitting_time_single(mp);
        if (g.force_csv) {
            wfsp::OutputTarget target(g.out);
            wfsp::CsvWriter csv(target.stream(), cfg, g.seed, {"b", "e_tau0"});
            for (int b = 0; b <= mp.ell; ++b) csv.row({static_cast<double>(b), tau[b]});
            return 0;
        }
        print_scalar(g, cfg,
                     json{{"chain", chain},
                          {"e_tau0_from_ell", tau[mp.ell]},
                          {"log_e_tau0_over_ell", std::log(tau[mp.ell]) / mp.ell}});
        return 0;
    }

    cfg["theta"] = theta_name;
    const wfsp::Theta theta =
        theta_name == "lower" ? wfsp::Theta::Lower : wfsp::Theta::Upper;
    const auto K = wfsp::build_two_type_kernel(mp, theta);
    const auto tau = wfsp::expected_hitting_time(K);
    if (g.force_csv) {
        wfsp::OutputTarget target(g.out);
        wfsp::CsvWriter csv(target.stream(), cfg, g.seed, {"i", "e_tau0"});
        for (int i = 0; i <= K.m; ++i) csv.row({static_cast<double>(i), tau[i]});
        return 0;
    }
    print_scalar(g, cfg,
                 json{{"chain", chain},
                      {"theta", theta_name},
                      {"e_tau0_from_1", tau[1]},
                      {"e_tau0_from_m", tau[K.m]},
                      {"log_e_tau0_over_m", std::log(tau[K.m]) / K.m}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wright-Fisher sharp-peak simulator and large-deviation numerics"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed (unsigned 64-bit)")->capture_default_str();
    app.add_option("--out", g.out, "output file, or - for stdout")->capture_default_str();
    app.add_option("--threads", g.threads,
                   "reserved; all kernels currently run single-threaded")
        ->check(CLI::PositiveNumber);
    auto* json_flag = app.add_flag("--json", g.force_json, "prefer JSON output");
    app.add_flag("--csv", g.force_csv, "prefer CSV output (vector exports)")
        ->excludes(json_flag);

    // psi
    wfsp::RateParams rp;
    wfsp::PsiOptions psi_opt;
    bool no_check = false;
    auto* c_psi = app.add_subcommand("psi", "barrier height psi(a) via grid dynamic programming");
    c_psi->fallthrough();
    c_psi->add_option("--a", rp.a, "mutation intensity a = ell*q")->required();
    c_psi->add_option("--sigma", rp.sigma, "peak fitness advantage")->required();
    c_psi->add_option("--kappa", rp.kappa, "alphabet size (enters phase queries only)");
    c_psi->add_option("--grid", psi_opt.grid, "starting grid resolution")
        ->capture_default_str();
    c_psi->add_option("--tol", psi_opt.tol, "refinement stop |psi_N - psi_2N|")
        ->capture_default_str();
    c_psi->add_option("--max-doublings", psi_opt.max_doublings, "refinement budget")
        ->capture_default_str();
    c_psi->add_flag("--no-cross-check", no_check, "skip the value-iteration cross-check");

    // phase-diagram
    wfsp::RateParams pd_base;
    SweepSpec a_spec, alpha_spec;
    a_spec.range = {0.1, 0.6};
    a_spec.points = 11;
    alpha_spec.range = {2.0, 2.0};
    alpha_spec.points = 1;
    wfsp::PsiOptions pd_opt;
    bool pd_no_check = false;
    auto* c_pd = app.add_subcommand("phase-diagram",
                                    "sweep (a, alpha): psi and phase classification as CSV");
    c_pd->fallthrough();
    c_pd->add_option("--sigma", pd_base.sigma, "peak fitness advantage")->required();
    c_pd->add_option("--kappa", pd_base.kappa, "alphabet size")->capture_default_str();
    c_pd->add_option("--a-range", a_spec.range, "a sweep endpoints lo hi")
        ->expected(2);
    c_pd->add_option("--a-points", a_spec.points, "a sweep resolution")->capture_default_str();
    c_pd->add_option("--alpha-range", alpha_spec.range, "alpha sweep endpoints lo hi")
        ->expected(2);
    c_pd->add_option("--alpha-points", alpha_spec.points, "alpha sweep resolution")
        ->capture_default_str();
    c_pd->add_option("--grid", pd_opt.grid, "psi grid resolution")->capture_default_str();
    c_pd->add_flag("--no-cross-check", pd_no_check, "skip the value-iteration cross-check");

    // exact
    wfsp::ModelParams ex_mp;
    std::string ex_theta = "upper";
    bool ex_kernel = false, ex_log_space = false;
    auto* c_ex = app.add_subcommand("exact",
                                    "two-type bounding chain: kernel, hitting times, "
                                    "occupation ratios, stationary law");
    c_ex->fallthrough();
    attach_model_options(c_ex, ex_mp);
    c_ex->add_option("--theta", ex_theta, "background class: upper (class 1) or lower (class ell)")
        ->check(CLI::IsMember({"upper", "lower"}))
        ->capture_default_str();
    c_ex->add_flag("--kernel", ex_kernel, "dump the (m+1)x(m+1) kernel as CSV");
    c_ex->add_flag("--log-space", ex_log_space, "with --kernel, dump natural logs");

    // simulate
    wfsp::ModelParams sim_mp;
    std::string sim_chain = "occupancy";
    std::string sim_theta = "upper";
    std::string sim_start = "far";
    long long sim_steps = 1000;
    auto* c_sim = app.add_subcommand("simulate", "trajectory CSV for one seeded run");
    c_sim->fallthrough();
    attach_model_options(c_sim, sim_mp);
    c_sim->add_option("--chain", sim_chain, "occupancy, two-type, or sandwich")
        ->check(CLI::IsMember({"occupancy", "two-type", "sandwich"}))
        ->capture_default_str();
    c_sim->add_option("--theta", sim_theta, "two-type background class")
        ->check(CLI::IsMember({"upper", "lower"}))
        ->capture_default_str();
    c_sim->add_option("--steps", sim_steps, "number of steps")->capture_default_str();
    c_sim->add_option("--start", sim_start, "far (everyone at distance ell) or peak")
        ->check(CLI::IsMember({"far", "peak"}))
        ->capture_default_str();

    // verify
    bool verify_full = false;
    auto* c_ver = app.add_subcommand("verify", "run the property battery; nonzero exit on failure");
    c_ver->fallthrough();
    c_ver->add_flag("--full", verify_full, "larger instances and trial counts");

    // discovery
    wfsp::ModelParams disc_mp;
    int disc_replicas = 200;
    long long disc_horizon = 1000000;
    auto* c_disc = app.add_subcommand("discovery",
                                      "Monte Carlo first-appearance time of the peak "
                                      "(neutral dynamics) with its exact upper bound");
    c_disc->fallthrough();
    attach_model_options(c_disc, disc_mp, /*with_sigma=*/false);
    c_disc->add_option("--replicas", disc_replicas, "independent runs")->capture_default_str();
    c_disc->add_option("--horizon", disc_horizon, "censoring horizon (steps)")
        ->capture_default_str();

    // hitting
    wfsp::ModelParams hit_mp;
    std::string hit_chain = "two-type";
    std::string hit_theta = "upper";
    auto* c_hit = app.add_subcommand("hitting", "exact expected absorption times");
    c_hit->fallthrough();
    attach_model_options(c_hit, hit_mp);
    c_hit->add_option("--chain", hit_chain, "two-type or single (one neutral chromosome)")
        ->check(CLI::IsMember({"two-type", "single"}))
        ->capture_default_str();
    c_hit->add_option("--theta", hit_theta, "two-type background class")
        ->check(CLI::IsMember({"upper", "lower"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Collapse CLI11's fine-grained exit codes onto the documented 0/1.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (c_psi->parsed()) {
            psi_opt.variational_check = !no_check;
            return run_psi(g, rp, psi_opt);
        }
        if (c_pd->parsed()) {
            pd_opt.variational_check = !pd_no_check;
            return run_phase_diagram(g, pd_base, a_spec, alpha_spec, pd_opt);
        }
        if (c_ex->parsed()) return run_exact(g, ex_mp, ex_theta, ex_kernel, ex_log_space);
        if (c_sim->parsed()) return run_simulate(g, sim_mp, sim_chain, sim_theta, sim_steps,
                                                 sim_start);
        if (c_ver->parsed()) return run_verify(g, verify_full);
        if (c_disc->parsed()) return run_discovery(g, disc_mp, disc_replicas, disc_horizon);
        if (c_hit->parsed()) return run_hitting(g, hit_mp, hit_chain, hit_theta);
    } catch (const wfsp::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
