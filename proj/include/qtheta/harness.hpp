// Randomized verification harness.
//
// Each identity in the catalog is exercised at randomly sampled admissible
// points: the nome gets a uniformly drawn modulus and phase, free parameters
// get log-uniform moduli and uniform phases, side conditions are solved
// exactly, and inadmissible draws are rejected and retried.  A trial passes
// when |residual| <= tolerance * scale, where scale is the largest termwise
// magnitude of the identity at that point.
//
// Sampling is counter-based: trial k of a run is a pure function of
// (seed, k), so reports are reproducible byte for byte and individual
// trials can be replayed in isolation.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qtheta/identities.hpp"

namespace qtheta {

struct SamplerConfig {
    std::uint64_t seed = 0;
    Real q_modulus_lo = 0.05;
    Real q_modulus_hi = 0.9;
    Real param_modulus_lo = 0.5;
    Real param_modulus_hi = 2.0;
    int max_resamples_per_trial = 100;
};

// One fully instantiated evaluation point: nome plus the complete parameter
// vector (free parameters followed by solved ones).
struct IdentityCase {
    Nome nome;
    std::vector<Complex> params;
};

// Deterministic stream of draws for one trial, derived from (seed, trial).
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t trial_index);

    std::uint64_t next_u64();
    Real next_unit(); // uniform in [0, 1)

private:
    std::uint64_t state_;
};

// Draws an admissible case for the identity, retrying inadmissible points up
// to config.max_resamples_per_trial times before throwing
// AdmissibilityExhausted.
IdentityCase sample_case(const IdentitySpec& spec, const SamplerConfig& config,
                         std::uint64_t trial_index);

struct TrialFailure {
    long trial_index = 0;
    Complex q;
    std::vector<std::pair<std::string, Complex>> params; // named, derived included
    Real normalized_residual = 0;
    Real scale = 0;
};

struct ResidualReport {
    std::string identity_id;
    long trials_run = 0;
    Real max_normalized_residual = 0;
    Real mean_normalized_residual = 0;
    std::vector<TrialFailure> failures;
    SamplerConfig config_echo;
    Real tolerance = 0;

    // Deterministic serialization: fixed key order, %.17g numerals, stable
    // whitespace.  Reruns with identical inputs produce identical bytes.
    std::string to_json() const;
};

ResidualReport run_trials(const IdentitySpec& spec, const SamplerConfig& config, long trials,
                          Real tolerance, const TruncationPolicy& policy = {});
ResidualReport run_trials(const std::string& identity_id, const SamplerConfig& config, long trials,
                          Real tolerance, const TruncationPolicy& policy = {});

} // namespace qtheta
