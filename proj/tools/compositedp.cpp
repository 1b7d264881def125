// Command-line front end: benchmark sweeps, parameter optimization, privacy
// certification, and raw sampling for the composite bounded DP mechanism.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "compositedp/bench/runner.hpp"
#include "compositedp/compositedp.hpp"

namespace {

using namespace compositedp;

ActivationKind parse_activation(const std::string &s) {
    if (s == "a1" || s == "A1") return ActivationKind::a1();
    if (s == "a2" || s == "A2") return ActivationKind::a2();
    if (s == "a3" || s == "A3") return ActivationKind::a3();
    throw ConfigError("unknown activation '" + s + "' (expected a1, a2 or a3)");
}

BaseKind parse_base(const std::string &s) {
    if (s == "b1" || s == "B1") return BaseKind::b1();
    if (s == "b2" || s == "B2") return BaseKind::b2();
    throw ConfigError("unknown base '" + s + "' (expected b1 or b2)");
}

int exit_code_for(const Error &e) {
    const std::string &c = e.category();
    if (c == "FileNotFound" || c == "ColumnMissing" || c == "NoNumericRows") return 2;
    if (c == "Infeasible" || c == "InfeasibleRegion" || c == "TargetUnreachable" || c == "CertificationFailed" ||
        c == "NumericNonconvergence") {
        return 3;
    }
    if (c == "ConfigError") return 1;
    return 4;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"composite bounded and unbiased differential privacy toolkit"};
    app.require_subcommand(1);

    // ---- bench ----
    auto *bench_cmd = app.add_subcommand("bench", "run a benchmark sweep over queries, mechanisms and epsilons");
    std::string config_path, output_path;
    std::vector<std::string> overrides;
    bench_cmd->add_option("--config", config_path, "flat key=value config file");
    bench_cmd->add_option("--set", overrides, "override a config entry, key=value (repeatable)");
    bench_cmd->add_option("-o,--output", output_path, "write the report to a file instead of stdout");

    // ---- optimize ----
    auto *opt_cmd = app.add_subcommand("optimize", "print the optimizer result for an (activation, base, eps, L)");
    std::string opt_act = "a1", opt_base = "b1";
    double opt_eps = 1.0, opt_L = 1.0;
    std::vector<double> opt_steps;
    opt_cmd->add_option("--activation", opt_act, "a1|a2|a3")->capture_default_str();
    opt_cmd->add_option("--base", opt_base, "b1|b2")->capture_default_str();
    opt_cmd->add_option("--epsilon", opt_eps, "privacy budget")->capture_default_str();
    opt_cmd->add_option("--half-width", opt_L, "canonical half-width L")->capture_default_str();
    opt_cmd->add_option("--steps", opt_steps, "grid refinement steps (default 0.1 0.01 0.001)");

    // ---- certify ----
    auto *cert_cmd = app.add_subcommand("certify", "DP ratio certification plus an empirical epsilon probe");
    std::string cert_act = "a1", cert_base = "b1";
    double cert_eps = 1.0, cert_L = 1.0, cert_k = 0.2, cert_m = 0.5;
    long cert_n = 200000;
    int cert_bins = 64;
    std::uint64_t cert_seed = 42;
    cert_cmd->add_option("--activation", cert_act)->capture_default_str();
    cert_cmd->add_option("--base", cert_base)->capture_default_str();
    cert_cmd->add_option("--epsilon", cert_eps)->capture_default_str();
    cert_cmd->add_option("--half-width", cert_L)->capture_default_str();
    cert_cmd->add_option("--k", cert_k, "activation height")->capture_default_str();
    cert_cmd->add_option("--m", cert_m, "activation width")->capture_default_str();
    cert_cmd->add_option("--probe-samples", cert_n)->capture_default_str();
    cert_cmd->add_option("--bins", cert_bins)->capture_default_str();
    cert_cmd->add_option("--seed", cert_seed)->capture_default_str();

    // ---- sample ----
    auto *sample_cmd = app.add_subcommand("sample", "emit N draws from a perturbation density to stdout");
    std::string smp_act = "a1", smp_base = "b1";
    double smp_eps = 1.0, smp_L = 1.0, smp_k = 0.2, smp_m = 0.5, smp_cp = 0.0;
    long smp_n = 1000;
    std::uint64_t smp_seed = 42;
    sample_cmd->add_option("--activation", smp_act)->capture_default_str();
    sample_cmd->add_option("--base", smp_base)->capture_default_str();
    sample_cmd->add_option("--epsilon", smp_eps)->capture_default_str();
    sample_cmd->add_option("--half-width", smp_L)->capture_default_str();
    sample_cmd->add_option("--k", smp_k)->capture_default_str();
    sample_cmd->add_option("--m", smp_m)->capture_default_str();
    sample_cmd->add_option("--cp", smp_cp, "mapped input in [Cp_min, Cp_max]")->capture_default_str();
    sample_cmd->add_option("-n,--count", smp_n)->capture_default_str();
    sample_cmd->add_option("--seed", smp_seed)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench_cmd->parsed()) {
            bench::BenchConfig cfg = config_path.empty() ? bench::BenchConfig{} : bench::load_config(config_path);
            for (const auto &ov : overrides) {
                const auto eq = ov.find('=');
                if (eq == std::string::npos) throw ConfigError("override must be key=value: " + ov);
                bench::apply_config_entry(cfg, ov.substr(0, eq), ov.substr(eq + 1));
            }
            if (const char *env_seed = std::getenv("COMPOSITEDP_SEED")) {
                cfg.seed = std::stoull(env_seed);
            }
            const bench::BenchReport report = bench::run_benchmark(cfg);
            const std::string text = report.serialize(cfg.format);
            if (output_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(output_path);
                out << text;
            }
        } else if (opt_cmd->parsed()) {
            OptimizerConfig cfg;
            if (!opt_steps.empty()) cfg.steps = opt_steps;
            const OptimizerResult r =
                optimize_enumeration(parse_activation(opt_act), parse_base(opt_base), opt_eps, opt_L, cfg);
            const PerturbationSpec spec =
                solve_normalization(parse_activation(opt_act), parse_base(opt_base), r.best_k, r.best_m, opt_L, opt_eps);
            std::printf("k=%.6f m=%.6f y=%.9f t=%.9f variance=%.9g h1=%.6f evaluations=%ld\n", r.best_k, r.best_m,
                        r.best_y, spec.params.t, r.best_variance, h1_rate(spec), r.evaluations);
        } else if (cert_cmd->parsed()) {
            const PerturbationSpec spec =
                solve_normalization(parse_activation(cert_act), parse_base(cert_base), cert_k, cert_m, cert_L, cert_eps);
            const double ratio = certify_dp(spec);
            const auto [cp_min, cp_max] = cp_bounds(spec);
            const auto probe = empirical_epsilon_probe(spec, cp_min, cp_max, cert_bins, cert_n, cert_seed);
            std::printf("dp_ratio=%.9f exp_eps=%.9f certified=yes\n", ratio, std::exp(cert_eps));
            std::printf("epsilon_hat=%.6f band=%.6f argmax_bin=%d\n", probe.epsilon_hat, probe.band, probe.argmax_bin);
        } else if (sample_cmd->parsed()) {
            const PerturbationSpec spec =
                solve_normalization(parse_activation(smp_act), parse_base(smp_base), smp_k, smp_m, smp_L, smp_eps);
            const double a = solve_activation_offset(spec, smp_cp);
            const PiecewiseCdf cdf(spec, a);
            UniformStream stream(smp_seed);
            for (long i = 0; i < smp_n; ++i) {
                std::printf("%.12g\n", sample(cdf, stream));
            }
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
