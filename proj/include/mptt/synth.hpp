#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mptt/panel.hpp"

namespace mptt {

/// Deterministic generator for Gaussian regression noise: splitmix64 driving
/// a Box-Muller transform. Fixed algorithm so that a (spec, seed) pair
/// reproduces the same panel bit-for-bit on any platform.
class NoiseGenerator {
public:
    explicit NoiseGenerator(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double next_uniform();  // in (0, 1)
    double next_gaussian();

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Planted two-phase data-generating process used as the recovery oracle.
struct SyntheticSpec {
    int start_year = 1500;
    int end_year = 1700;
    double a = 0.0;
    double beta1 = 0.0;
    double gamma = 0.0;
    int tau = 1600;
    double ln_m_start = 0.0;       // ln M at start_year (linear-log-drift path)
    double money_drift = 0.0;      // d ln M per year
    std::optional<std::vector<double>> custom_ln_m;  // one entry per year if set
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

AnnualPanel generate(const SyntheticSpec& spec);

/// Canonical test spec: 1500-1700, P(1500)=100, beta1=0.949, gamma=-0.812,
/// tau=1600, log-money drift ln(3.733)/100 per year, sigma=0.02 (a test
/// design choice, not an estimated value), fixed seed.
SyntheticSpec paper_like_spec();

std::string to_json(const SyntheticSpec& spec);
SyntheticSpec spec_from_json(const std::string& text);
SyntheticSpec load_spec_file(const std::string& path);

}  // namespace mptt
