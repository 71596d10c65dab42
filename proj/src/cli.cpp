#include "qtheta/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "qtheta/harness.hpp"

namespace qtheta {

namespace {

std::string json_number(Real value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void print_known_identities(std::ostream& err) {
    err << "known identities:\n";
    for (const IdentitySpec& spec : identity_registry())
        err << "  " << spec.id << "\n";
}

// Reads the THETA_MAX_TERMS override.  Returns false (and reports) when the
// variable is set but not a positive integer.
bool apply_max_terms_override(TruncationPolicy& policy, std::ostream& err) {
    const char* raw = std::getenv("THETA_MAX_TERMS");
    if (raw == nullptr)
        return true;
    char* end = nullptr;
    const long parsed = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || parsed <= 0) {
        err << "THETA_MAX_TERMS must be a positive integer, got '" << raw << "'\n";
        return false;
    }
    policy.max_terms = parsed;
    return true;
}

struct EvalOptions {
    Real q_re = 0, q_im = 0;
    Real w_re = 0, w_im = 0;
    std::string method = "product";
    Real tol = 1e-14;
};

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err) {
    TruncationPolicy policy;
    policy.target_abs_error = options.tol;
    if (!apply_max_terms_override(policy, err))
        return 2;
    try {
        const Nome nome(Complex(options.q_re, options.q_im));
        const Complex w(options.w_re, options.w_im);
        const Evaluated result = options.method == "series" ? theta_series(w, nome, policy)
                                                            : theta_product(w, nome, policy);
        out << "{\n";
        out << "  \"value_re\": " << json_number(result.value.real()) << ",\n";
        out << "  \"value_im\": " << json_number(result.value.imag()) << ",\n";
        out << "  \"method\": \"" << options.method << "\",\n";
        out << "  \"terms_used\": " << result.terms_used << ",\n";
        out << "  \"error_bound\": " << json_number(result.error_bound) << "\n";
        out << "}\n";
        return 0;
    } catch (const std::exception& e) {
        err << "eval failed: " << e.what() << "\n";
        return 2;
    }
}

struct VerifyOptions {
    std::string identity;
    long trials = 1000;
    std::uint64_t seed = 0;
    Real tol = 1e-9;
    Real q_max = 0.9;
    std::string out_path;
};

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
    TruncationPolicy policy;
    if (!apply_max_terms_override(policy, err))
        return 2;
    const IdentitySpec* spec = find_identity(options.identity);
    if (spec == nullptr) {
        err << "unknown identity '" << options.identity << "'\n";
        print_known_identities(err);
        return 2;
    }
    if (options.q_max <= 0 || options.q_max >= 1) {
        err << "--q-max must lie strictly between 0 and 1\n";
        return 2;
    }
    SamplerConfig config;
    config.seed = options.seed;
    config.q_modulus_hi = options.q_max;
    try {
        const ResidualReport report = run_trials(*spec, config, options.trials, options.tol, policy);
        const std::string json = report.to_json();
        out << json;
        if (!options.out_path.empty()) {
            std::ofstream file(options.out_path);
            if (!file) {
                err << "cannot open '" << options.out_path << "' for writing\n";
                return 2;
            }
            file << json;
        }
        return report.failures.empty() ? 0 : 1;
    } catch (const std::exception& e) {
        err << "verification run aborted: " << e.what() << "\n";
        return 1;
    }
}

int cmd_list(std::ostream& out) {
    for (const IdentitySpec& spec : identity_registry()) {
        out << spec.id << "  arity=" << spec.arity() << "  ";
        out << (spec.side_condition.empty() ? "unconditional" : spec.side_condition);
        out << "  " << spec.reference << "\n";
    }
    return 0;
}

struct SweepOptions {
    std::string identity;
    std::string q_grid;
    long trials_per_q = 100;
    std::uint64_t seed = 0;
    Real tol = 1e-9;
};

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
    TruncationPolicy policy;
    if (!apply_max_terms_override(policy, err))
        return 2;
    const IdentitySpec* spec = find_identity(options.identity);
    if (spec == nullptr) {
        err << "unknown identity '" << options.identity << "'\n";
        print_known_identities(err);
        return 2;
    }

    double lo = 0, hi = 0;
    long steps = 0;
    char extra = 0;
    const int fields =
        std::sscanf(options.q_grid.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &steps, &extra);
    if (fields != 3) {
        err << "--q-grid must look like lo:hi:steps, got '" << options.q_grid << "'\n";
        return 2;
    }
    if (hi < lo) {
        err << "--q-grid is descending; want lo <= hi\n";
        return 2;
    }
    if (steps < 1 || lo <= 0 || hi >= 1) {
        err << "--q-grid needs steps >= 1 and moduli strictly inside (0, 1)\n";
        return 2;
    }

    out << "q_modulus,max_normalized_residual,mean_normalized_residual,trials\n";
    for (long i = 0; i < steps; ++i) {
        const Real q_modulus =
            steps == 1 ? lo : lo + (hi - lo) * static_cast<Real>(i) / static_cast<Real>(steps - 1);
        SamplerConfig config;
        config.seed = options.seed;
        config.q_modulus_lo = q_modulus;
        config.q_modulus_hi = q_modulus;
        try {
            const ResidualReport report =
                run_trials(*spec, config, options.trials_per_q, options.tol, policy);
            out << json_number(q_modulus) << "," << json_number(report.max_normalized_residual)
                << "," << json_number(report.mean_normalized_residual) << "," << report.trials_run
                << "\n";
        } catch (const std::exception& e) {
            err << "sweep aborted at q_modulus=" << json_number(q_modulus) << ": " << e.what()
                << "\n";
            return 1;
        }
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"verified evaluation of theta functions and their identities"};
    app.name("qtheta");
    app.require_subcommand(1);

    EvalOptions eval_options;
    CLI::App* eval = app.add_subcommand("eval", "evaluate theta(w; q) with an error bound");
    eval->add_option("--q-re", eval_options.q_re, "real part of the nome")->required();
    eval->add_option("--q-im", eval_options.q_im, "imaginary part of the nome");
    eval->add_option("--w-re", eval_options.w_re, "real part of the argument")->required();
    eval->add_option("--w-im", eval_options.w_im, "imaginary part of the argument");
    eval->add_option("--method", eval_options.method, "evaluation route")
        ->check(CLI::IsMember({"product", "series"}));
    eval->add_option("--tol", eval_options.tol, "target absolute error");

    VerifyOptions verify_options;
    CLI::App* verify = app.add_subcommand("verify", "run randomized residual trials");
    verify->add_option("--identity", verify_options.identity, "identity id (see list)")->required();
    verify->add_option("--trials", verify_options.trials, "number of trials");
    verify->add_option("--seed", verify_options.seed, "sampler seed");
    verify->add_option("--tol", verify_options.tol, "normalized residual tolerance");
    verify->add_option("--q-max", verify_options.q_max, "largest nome modulus sampled");
    verify->add_option("--out", verify_options.out_path, "also write the JSON report here");

    CLI::App* list = app.add_subcommand("list", "list the identity catalog");

    SweepOptions sweep_options;
    CLI::App* sweep = app.add_subcommand("sweep", "scan residuals across nome moduli");
    sweep->add_option("--identity", sweep_options.identity, "identity id (see list)")->required();
    sweep->add_option("--q-grid", sweep_options.q_grid, "modulus grid as lo:hi:steps")->required();
    sweep->add_option("--trials-per-q", sweep_options.trials_per_q, "trials at each modulus");
    sweep->add_option("--seed", sweep_options.seed, "sampler seed");
    sweep->add_option("--tol", sweep_options.tol, "normalized residual tolerance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (eval->parsed())
            return cmd_eval(eval_options, out, err);
        if (verify->parsed())
            return cmd_verify(verify_options, out, err);
        if (list->parsed())
            return cmd_list(out);
        if (sweep->parsed())
            return cmd_sweep(sweep_options, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace qtheta
