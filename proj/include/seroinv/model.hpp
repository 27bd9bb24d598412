#pragma once

// Forward mixture model: a vaccinated fraction v is seropositive to disease i
// with probability q_i, the rest with probability e_i, independently across
// diseases.

#include "seroinv/counts.hpp"
#include "seroinv/errors.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>

namespace seroinv {

template <class T = double>
struct BasicModelParams {
    T v{};
    std::array<T, kDiseases> e{};
    std::array<T, kDiseases> s{};

    friend bool operator==(const BasicModelParams&, const BasicModelParams&) = default;
};

using ModelParams = BasicModelParams<double>;

template <class T>
std::array<T, kDiseases> q_of(const BasicModelParams<T>& p) {
    std::array<T, kDiseases> q;
    for (int i = 0; i < kDiseases; ++i) q[i] = p.e[i] + (T(1) - p.e[i]) * p.s[i];
    return q;
}

/// Cell probabilities from coverage and the two per-disease positivity rates
/// (vaccinated `q`, unvaccinated `e`). No range checks: out-of-range inputs
/// yield the algebraic value, which still sums to one.
template <class T>
Cells<T> forward_vq(const T& v, const std::array<T, kDiseases>& e, const std::array<T, kDiseases>& q) {
    Cells<T> p;
    for (int k = 0; k < kCells; ++k) {
        T vaccinated = T(1);
        T unvaccinated = T(1);
        for (int d = 1; d <= kDiseases; ++d) {
            const bool pos = is_positive(k, d);
            vaccinated *= pos ? q[d - 1] : T(1) - q[d - 1];
            unvaccinated *= pos ? e[d - 1] : T(1) - e[d - 1];
        }
        p[k] = v * vaccinated + (T(1) - v) * unvaccinated;
    }
    return p;
}

template <class T>
Cells<T> forward(const BasicModelParams<T>& params) {
    return forward_vq(params.v, params.e, q_of(params));
}

template <class T>
Cells<T> expected_counts(const BasicModelParams<T>& params, const T& n) {
    auto p = forward(params);
    for (auto& x : p) x *= n;
    return p;
}

/// Marginal prevalence of one disease: v q_i + (1 - v) e_i.
template <class T>
T marginal_prevalence(const BasicModelParams<T>& params, int disease) {
    require_disease(disease);
    const auto q = q_of(params);
    return params.v * q[disease - 1] + (T(1) - params.v) * params.e[disease - 1];
}

inline bool params_in_range(const ModelParams& p) {
    auto ok = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!ok(p.v)) return false;
    for (int i = 0; i < kDiseases; ++i) {
        if (!ok(p.e[i]) || !ok(p.s[i])) return false;
    }
    return true;
}

namespace detail {

// Uniform in [0, 1) from the top 53 bits of one 64-bit draw.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Binomial(trials, p) as a count of Bernoulli successes. Linear in trials,
// but reproducible bit for bit wherever mt19937_64 is.
inline std::uint64_t binomial(std::uint64_t trials, double p, std::mt19937_64& rng) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) hits += unit_uniform(rng) < p ? 1 : 0;
    return hits;
}

}  // namespace detail

/// One multinomial(n, forward(params)) draw by conditional binomials over
/// cells 0..6. The stream is std::mt19937_64 seeded with `seed`; each
/// uniform uses the top 53 bits of one output.
inline CountVector sample_cohort(const ModelParams& params, std::uint64_t n, std::uint64_t seed) {
    if (!params_in_range(params)) {
        throw Error(ErrorCode::ParameterOutOfRange, "sampler parameters must lie in [0, 1]");
    }
    const auto p = forward(params);
    std::mt19937_64 rng(seed);
    std::array<std::uint64_t, kCells> counts{};
    std::uint64_t remaining = n;
    double mass_left = 1.0;
    for (int k = 0; k < kCells - 1; ++k) {
        if (remaining == 0) break;
        const double conditional = mass_left > 0.0 ? p[k] / mass_left : 0.0;
        counts[k] = detail::binomial(remaining, conditional, rng);
        remaining -= counts[k];
        mass_left -= p[k];
    }
    counts[kCells - 1] = remaining;
    return CountVector::from_integers(counts);
}

}  // namespace seroinv
