#include "qtheta/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qtheta {

namespace {

constexpr Real kPi = 3.14159265358979323846;
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 output scrambler
std::uint64_t scramble(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t trial_index)
    : state_(scramble(seed ^ scramble(trial_index + kGamma))) {}

std::uint64_t RandomStream::next_u64() {
    state_ += kGamma;
    return scramble(state_);
}

Real RandomStream::next_unit() {
    return static_cast<Real>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

Real uniform(RandomStream& stream, Real lo, Real hi) {
    return lo + (hi - lo) * stream.next_unit();
}

Complex draw_on_annulus(RandomStream& stream, Real modulus_lo, Real modulus_hi) {
    const Real modulus = std::exp(uniform(stream, std::log(modulus_lo), std::log(modulus_hi)));
    const Real phase = uniform(stream, 0, 2 * kPi);
    return std::polar(modulus, phase);
}

} // namespace

IdentityCase sample_case(const IdentitySpec& spec, const SamplerConfig& config,
                         std::uint64_t trial_index) {
    RandomStream stream(config.seed, trial_index);
    for (int attempt = 0; attempt < config.max_resamples_per_trial; ++attempt) {
        const Real q_modulus = uniform(stream, config.q_modulus_lo, config.q_modulus_hi);
        const Real q_phase = uniform(stream, 0, 2 * kPi);
        const Nome nome(std::polar(q_modulus, q_phase));

        std::vector<Complex> free_params;
        free_params.reserve(spec.params.size());
        for (const ParamSlot& slot : spec.params) {
            switch (slot.kind) {
            case ParamKind::FreeComplex:
                free_params.push_back(
                    draw_on_annulus(stream, config.param_modulus_lo, config.param_modulus_hi));
                break;
            case ParamKind::IntegerInRange: {
                const std::uint64_t span = static_cast<std::uint64_t>(slot.hi - slot.lo) + 1;
                free_params.push_back(
                    Complex(slot.lo + static_cast<int>(stream.next_u64() % span), 0));
                break;
            }
            case ParamKind::Sign:
                free_params.push_back(Complex((stream.next_u64() & 1) != 0 ? 1 : -1, 0));
                break;
            }
        }

        std::vector<Complex> completed = spec.complete(free_params, nome);
        if (spec.admissible(completed, nome))
            return {nome, std::move(completed)};
    }
    throw AdmissibilityExhausted("no admissible point for '" + spec.id + "' at trial "
                                 + std::to_string(trial_index) + " after "
                                 + std::to_string(config.max_resamples_per_trial) + " draws");
}

ResidualReport run_trials(const IdentitySpec& spec, const SamplerConfig& config, long trials,
                          Real tolerance, const TruncationPolicy& policy) {
    ResidualReport report;
    report.identity_id = spec.id;
    report.trials_run = trials;
    report.config_echo = config;
    report.tolerance = tolerance;

    Real sum_normalized = 0;
    for (long trial = 0; trial < trials; ++trial) {
        const IdentityCase instance = sample_case(spec, config, static_cast<std::uint64_t>(trial));
        const ResidualValue rv = spec.residual(instance.params, instance.nome, policy);
        const Real normalized = std::abs(rv.residual) / rv.scale;
        sum_normalized += normalized;
        report.max_normalized_residual = std::max(report.max_normalized_residual, normalized);
        if (normalized > tolerance) {
            TrialFailure failure;
            failure.trial_index = trial;
            failure.q = instance.nome.q();
            for (std::size_t i = 0; i < instance.params.size(); ++i) {
                std::string name = i < spec.params.size()
                                       ? spec.params[i].name
                                       : spec.derived_names[i - spec.params.size()];
                failure.params.emplace_back(std::move(name), instance.params[i]);
            }
            failure.normalized_residual = normalized;
            failure.scale = rv.scale;
            report.failures.push_back(std::move(failure));
        }
    }
    if (trials > 0)
        report.mean_normalized_residual = sum_normalized / static_cast<Real>(trials);
    return report;
}

ResidualReport run_trials(const std::string& identity_id, const SamplerConfig& config, long trials,
                          Real tolerance, const TruncationPolicy& policy) {
    return run_trials(require_identity(identity_id), config, trials, tolerance, policy);
}

// --- serialization ------------------------------------------------------------
//
// Hand-rolled on purpose: the report must serialize to identical bytes on
// every rerun, so we fix the key order, the numeral format (%.17g round-trips
// doubles exactly), and the whitespace ourselves.

namespace {

std::string json_number(Real value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string json_complex(Complex value) {
    return "{\"re\": " + json_number(value.real()) + ", \"im\": " + json_number(value.imag())
           + "}";
}

} // namespace

std::string ResidualReport::to_json() const {
    std::string out;
    out += "{\n";
    out += "  \"identity_id\": \"" + identity_id + "\",\n";
    out += "  \"trials_run\": " + std::to_string(trials_run) + ",\n";
    out += "  \"max_normalized_residual\": " + json_number(max_normalized_residual) + ",\n";
    out += "  \"mean_normalized_residual\": " + json_number(mean_normalized_residual) + ",\n";
    out += "  \"failures\": [";
    for (std::size_t i = 0; i < failures.size(); ++i) {
        const TrialFailure& failure = failures[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"trial_index\": " + std::to_string(failure.trial_index);
        out += ", \"q\": " + json_complex(failure.q);
        out += ", \"params\": {";
        for (std::size_t j = 0; j < failure.params.size(); ++j) {
            if (j > 0)
                out += ", ";
            out += "\"" + failure.params[j].first + "\": " + json_complex(failure.params[j].second);
        }
        out += "}";
        out += ", \"normalized_residual\": " + json_number(failure.normalized_residual);
        out += ", \"scale\": " + json_number(failure.scale);
        out += "}";
    }
    out += failures.empty() ? "],\n" : "\n  ],\n";
    out += "  \"config_echo\": {\n";
    out += "    \"seed\": " + std::to_string(config_echo.seed) + ",\n";
    out += "    \"prng\": \"splitmix64-counter\",\n";
    out += "    \"q_modulus_lo\": " + json_number(config_echo.q_modulus_lo) + ",\n";
    out += "    \"q_modulus_hi\": " + json_number(config_echo.q_modulus_hi) + ",\n";
    out += "    \"param_modulus_lo\": " + json_number(config_echo.param_modulus_lo) + ",\n";
    out += "    \"param_modulus_hi\": " + json_number(config_echo.param_modulus_hi) + ",\n";
    out += "    \"max_resamples_per_trial\": " + std::to_string(config_echo.max_resamples_per_trial)
           + "\n";
    out += "  },\n";
    out += "  \"tolerance\": " + json_number(tolerance) + "\n";
    out += "}\n";
    return out;
}

} // namespace qtheta
