#include "mptt/synth.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace mptt {

std::uint64_t NoiseGenerator::next_u64() {
    // splitmix64 (Steele, Lea, Flood 2014 reference constants).
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double NoiseGenerator::next_uniform() {
    // 53 random bits into (0, 1); offset by half an ulp to exclude 0.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseGenerator::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

namespace {

void validate(const SyntheticSpec& spec) {
    if (spec.start_year >= spec.end_year)
        throw SpecError("start_year must be < end_year");
    if (!(spec.tau > spec.start_year && spec.tau < spec.end_year))
        throw SpecError("tau must lie strictly inside (start_year, end_year)");
    if (spec.noise_sigma < 0.0) throw SpecError("noise_sigma must be >= 0");
    if (spec.custom_ln_m) {
        const std::size_t n =
            static_cast<std::size_t>(spec.end_year - spec.start_year) + 1;
        if (spec.custom_ln_m->size() != n)
            throw SpecError("custom_ln_m must have one entry per year (" +
                            std::to_string(n) + ")");
    }
}

}  // namespace

AnnualPanel generate(const SyntheticSpec& spec) {
    validate(spec);
    const int n = spec.end_year - spec.start_year + 1;

    std::vector<double> ln_m(n);
    for (int i = 0; i < n; ++i) {
        ln_m[i] = spec.custom_ln_m ? (*spec.custom_ln_m)[i]
                                   : spec.ln_m_start + spec.money_drift * i;
    }
    const double ln_m_tau = ln_m[spec.tau - spec.start_year];

    NoiseGenerator rng(spec.seed);
    AnnualPanel panel;
    panel.rows.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int year = spec.start_year + i;
        const double phase = year > spec.tau ? ln_m[i] - ln_m_tau : 0.0;
        double ln_p = spec.a + spec.beta1 * ln_m[i] + spec.gamma * phase;
        if (spec.noise_sigma > 0.0) ln_p += spec.noise_sigma * rng.next_gaussian();
        panel.rows.push_back({year, std::exp(ln_p), std::exp(ln_m[i])});
    }
    return panel;
}

SyntheticSpec paper_like_spec() {
    SyntheticSpec spec;
    spec.start_year = 1500;
    spec.end_year = 1700;
    spec.beta1 = 0.949;
    spec.gamma = -0.812;
    spec.tau = 1600;
    spec.ln_m_start = std::log(100.0);
    spec.money_drift = std::log(3.733) / 100.0;
    // a such that ln P(1500) = ln 100.
    spec.a = std::log(100.0) * (1.0 - spec.beta1);
    spec.noise_sigma = 0.02;
    spec.seed = 1600;
    return spec;
}

std::string to_json(const SyntheticSpec& spec) {
    nlohmann::ordered_json j{{"start_year", spec.start_year},
                             {"end_year", spec.end_year},
                             {"a", spec.a},
                             {"beta1", spec.beta1},
                             {"gamma", spec.gamma},
                             {"tau", spec.tau},
                             {"ln_m_start", spec.ln_m_start},
                             {"money_drift", spec.money_drift},
                             {"noise_sigma", spec.noise_sigma},
                             {"seed", spec.seed}};
    if (spec.custom_ln_m) j["custom_ln_m"] = *spec.custom_ln_m;
    return j.dump(2) + "\n";
}

SyntheticSpec spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("spec JSON parse error: ") + e.what());
    }
    SyntheticSpec spec;
    try {
        spec.start_year = j.at("start_year").get<int>();
        spec.end_year = j.at("end_year").get<int>();
        spec.a = j.at("a").get<double>();
        spec.beta1 = j.at("beta1").get<double>();
        spec.gamma = j.at("gamma").get<double>();
        spec.tau = j.at("tau").get<int>();
        spec.ln_m_start = j.value("ln_m_start", 0.0);
        spec.money_drift = j.value("money_drift", 0.0);
        spec.noise_sigma = j.value("noise_sigma", 0.0);
        spec.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("custom_ln_m"))
            spec.custom_ln_m = j.at("custom_ln_m").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("spec JSON field error: ") + e.what());
    }
    validate(spec);
    return spec;
}

SyntheticSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return spec_from_json(buf.str());
}

}  // namespace mptt
