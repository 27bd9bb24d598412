#pragma once

#include "seroinv/seroinv.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace seroinv::testing {

// Ten age groups: observed counts a0..a7.
inline const std::array<std::array<int, kCells>, 10> kCohortCounts{{
    {156, 2, 3, 2, 1, 6, 1, 38},
    {48, 5, 1, 2, 9, 13, 7, 90},
    {42, 4, 2, 0, 6, 11, 8, 114},
    {18, 5, 1, 0, 8, 18, 9, 133},
    {17, 0, 5, 0, 7, 15, 15, 156},
    {13, 0, 2, 3, 14, 20, 30, 135},
    {11, 4, 1, 3, 16, 13, 40, 127},
    {7, 4, 3, 3, 15, 20, 25, 135},
    {6, 1, 4, 9, 11, 14, 27, 122},
    {2, 2, 1, 4, 7, 17, 28, 121},
}};

// Reference closed-form estimates per age group: v, e1, e2, e3, s1, s2, s3.
inline const std::array<std::array<double, 7>, 10> kReferenceEstimates{{
    {0.227, 0.005, 0.019, 0.011, 0.950, 0.861, 0.974},
    {0.642, 0.144, 0.017, 0.090, 0.976, 0.878, 0.922},
    {0.710, 0.112, 0.046, 0.087, 1.002, 0.912, 0.930},
    {0.824, 0.279, 0.054, 0.219, 1.003, 0.886, 0.922},
    {0.863, 0.252, 0.227, 0.000, 1.000, 0.886, 0.921},
    {0.889, 0.427, 0.094, -0.037, 0.961, 0.855, 0.830},
    {0.847, 0.550, 0.006, 0.258, 0.949, 0.938, 0.678},
    {0.794, 0.652, 0.285, 0.356, 0.969, 0.877, 0.798},
    {0.900, 0.588, 0.279, -0.007, 0.833, 0.857, 0.838},
    {0.940, 0.667, 0.049, 0.450, 0.906, 0.892, 0.660},
}};

inline constexpr std::array<double, 3> kReferenceMeanSeroconversion{0.955, 0.884, 0.847};

// Joint-fit parameters (v, e1, e2, e3) per age group; s is shared.
inline const std::array<std::array<double, 4>, 10> kJointFitParams{{
    {0.227, 0.003, 0.019, 0.014},
    {0.642, 0.122, 0.020, 0.090},
    {0.715, 0.122, 0.041, 0.090},
    {0.837, 0.251, 0.041, 0.106},
    {0.859, 0.292, 0.241, 0.106},
    {0.794, 0.621, 0.324, 0.106},
    {0.645, 0.756, 0.502, 0.256},
    {0.662, 0.764, 0.502, 0.411},
    {0.576, 0.764, 0.665, 0.481},
    {0.478, 0.906, 0.734, 0.631},
}};
inline constexpr std::array<double, 3> kJointFitSeroconversion{0.989, 0.880, 0.910};

// Expected counts under the joint-fit parameters (rounded to 1 decimal).
inline const std::array<std::array<double, kCells>, 10> kJointFitExpected{{
    {155.8, 2.3, 3.1, 0.5, 1.0, 5.0, 3.7, 37.7},
    {49.1, 5.0, 1.1, 1.0, 7.9, 12.7, 8.2, 90.2},
    {40.8, 4.2, 1.8, 1.2, 6.9, 14.6, 9.8, 107.6},
    {20.1, 2.5, 1.0, 1.2, 8.2, 17.7, 11.6, 129.7},
    {14.6, 1.8, 4.7, 1.8, 7.3, 16.1, 15.3, 153.4},
    {10.2, 1.3, 5.0, 1.2, 17.9, 14.8, 20.7, 145.9},
    {6.9, 2.4, 7.0, 2.7, 21.9, 15.1, 30.3, 128.7},
    {5.0, 3.5, 5.0, 3.8, 16.5, 19.1, 23.2, 135.9},
    {3.4, 3.1, 6.7, 6.5, 11.1, 14.4, 26.7, 122.1},
    {0.9, 1.5, 2.4, 4.2, 8.5, 17.1, 26.1, 121.2},
}};

inline ModelParams joint_fit_params(std::size_t group) {
    const auto& p = kJointFitParams[group];
    return ModelParams{p[0], {p[1], p[2], p[3]}, kJointFitSeroconversion};
}

inline CountVector cohort_counts(std::size_t group) { return CountVector::from_integers(kCohortCounts[group]); }

inline std::vector<CohortRecord> cohort_dataset() {
    std::vector<CohortRecord> out;
    for (std::size_t g = 0; g < kCohortCounts.size(); ++g) {
        out.push_back({"AG" + std::to_string(g + 1), cohort_counts(g)});
    }
    return out;
}

inline std::array<long long, kCells> random_integer_cells(std::mt19937_64& rng, long long max) {
    std::uniform_int_distribution<long long> dist(0, max);
    std::array<long long, kCells> a;
    for (auto& x : a) x = dist(rng);
    return a;
}

inline Cells<Exact> to_exact(const std::array<long long, kCells>& a) {
    Cells<Exact> out;
    for (int k = 0; k < kCells; ++k) out[k] = Exact(a[k]);
    return out;
}

inline ModelParams random_params(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    ModelParams p;
    p.v = dist(rng);
    for (int i = 0; i < kDiseases; ++i) {
        p.e[i] = dist(rng);
        p.s[i] = dist(rng);
    }
    return p;
}

/// Exact counts n * forward(params), computed in rationals from the binary
/// values of the double parameters.
inline CountVector exact_counts(const ModelParams& p, long long n) {
    BasicModelParams<Exact> ex{Exact(p.v), {Exact(p.e[0]), Exact(p.e[1]), Exact(p.e[2])},
                               {Exact(p.s[0]), Exact(p.s[1]), Exact(p.s[2])}};
    return CountVector(expected_counts(ex, Exact(n)));
}

inline double max_abs_diff(const std::array<double, 7>& a, const std::array<double, 7>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace seroinv::testing
