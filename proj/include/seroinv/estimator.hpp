#pragma once

// Closed-form inversion of the forward model. For f1, f4 and every f2i
// nonzero the system has exactly two solutions, related by v <-> 1 - v and
// e_i <-> q_i:
//
//   v   = (f1 sqrt(f4) +- f3) / (2 f1 sqrt(f4))
//   e_i = (f2i + g2i -+ sqrt(f4)) / (2 f2i)
//   q_i = (f2i + g2i +- sqrt(f4)) / (2 f2i)
//
// The top-sign solution is the canonical one; it lies in [0,1]^7 exactly
// when f4 > 0 and f2i >= sqrt(f4) + |g2i| for every i.

#include "seroinv/algebra.hpp"
#include "seroinv/counts.hpp"
#include "seroinv/errors.hpp"
#include "seroinv/exact.hpp"
#include "seroinv/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>

namespace seroinv {

enum class ValidityLevel { FullyValid, CoverageOnly, Degenerate };

constexpr std::string_view to_string(ValidityLevel level) {
    switch (level) {
        case ValidityLevel::FullyValid: return "FullyValid";
        case ValidityLevel::CoverageOnly: return "CoverageOnly";
        case ValidityLevel::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

struct ValidityReport {
    bool f1_positive = false;
    bool f4_positive = false;
    std::array<bool, kDiseases> f2_positive{};
    std::array<bool, kDiseases> strong_gate{};
    bool v_in_range = false;
    std::array<bool, kDiseases> e_in_range{};
    std::array<bool, kDiseases> s_in_range{};
    ValidityLevel level = ValidityLevel::Degenerate;
};

struct EstimateResult {
    ModelParams params;                 // canonical (top-sign) solution
    std::array<double, kDiseases> q{};
    std::array<bool, kDiseases> s_defined{};
    ModelParams mirror;                 // v -> 1 - v, e <-> q
    std::array<double, kDiseases> mirror_q{};
    std::array<bool, kDiseases> mirror_s_defined{};
    ValidityReport validity;
    InvariantSet<Exact> invariants_used;
};

namespace detail {

inline std::optional<Exact> exact_sqrt(const Exact& x) {
    if (x < 0) return std::nullopt;
    const auto num = boost::multiprecision::numerator(x);
    const auto den = boost::multiprecision::denominator(x);
    const auto rn = boost::multiprecision::sqrt(num);
    const auto rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Exact(rn, rd);
}

// Square root of a nonnegative rational: exact when it is a perfect square,
// otherwise rounded once from its double value.
struct Root {
    std::optional<Exact> exact;
    double approx = 0.0;
};

inline Root root_of(const Exact& x) {
    Root r;
    r.exact = exact_sqrt(x);
    r.approx = r.exact ? to_double(*r.exact) : std::sqrt(to_double(x));
    return r;
}

inline void require_solvable(const InvariantSet<Exact>& inv) {
    if (inv.f1 <= 0) throw Error(ErrorCode::EmptyCohort, "cohort size f1 is zero");
    if (inv.f4 <= 0) {
        throw Error(ErrorCode::DegenerateDiscriminant,
                    inv.f4 == 0 ? "hyperdeterminant f4 is zero" : "hyperdeterminant f4 is negative");
    }
    for (int i = 0; i < kDiseases; ++i) {
        if (inv.f2[i] == 0) {
            throw Error(ErrorCode::SingularLayer, "layer determinant f2" + std::to_string(i + 1) + " is zero");
        }
    }
}

// The per-disease pair (e_i, q_i) of the top-sign solution, computed from the
// scale-free ratios g2/f2 and f4/f2^2.
inline std::pair<double, double> exposure_pair(const InvariantSet<Exact>& inv, int i) {
    const Exact& f2 = inv.f2[i];
    const int sigma = sign_of(f2);
    const Exact rho = inv.g2[i] / f2;
    const Root t = root_of(inv.f4 / (f2 * f2));
    if (t.exact) {
        const Exact half(1, 2);
        return {to_double(half * (1 + rho - sigma * *t.exact)),
                to_double(half * (1 + rho + sigma * *t.exact))};
    }
    const double r = to_double(rho);
    return {0.5 * (1.0 + r - sigma * t.approx), 0.5 * (1.0 + r + sigma * t.approx)};
}

// s_i = 2 sqrt(f4) / (f2i - g2i + sqrt(f4)); nullopt when the denominator
// vanishes (e_i = 1).
inline std::optional<double> seroconversion(const InvariantSet<Exact>& inv, int i) {
    const Exact& f2 = inv.f2[i];
    const Exact diff = f2 - inv.g2[i];
    if (sign_plus_sqrt(diff, +1, inv.f4) == 0) return std::nullopt;
    const Exact abs_f2 = f2 < 0 ? Exact(-f2) : f2;
    const Root t = root_of(inv.f4 / (f2 * f2));
    if (t.exact) return to_double(2 * *t.exact / (diff / abs_f2 + *t.exact));
    return 2.0 * t.approx / (to_double(diff / abs_f2) + t.approx);
}

// (q - e) / (1 - e), the route used for both roots of solve_both.
inline std::optional<double> seroconversion_from_rates(double e, double q, int exact_sign_one_minus_e) {
    if (exact_sign_one_minus_e == 0) return std::nullopt;
    return (q - e) / (1.0 - e);
}

}  // namespace detail

/// Coverage estimate from f1, f3 and f4 alone (top sign).
inline double coverage(const InvariantSet<Exact>& inv) {
    if (inv.f1 <= 0) throw Error(ErrorCode::EmptyCohort, "cohort size f1 is zero");
    if (inv.f4 <= 0) throw Error(ErrorCode::DegenerateDiscriminant, "hyperdeterminant f4 is not positive");
    // v = (1 + f3 / (f1 sqrt f4)) / 2, with the ratio squared to stay exact.
    const Exact ratio_sq = inv.f3 * inv.f3 / (inv.f1 * inv.f1 * inv.f4);
    const detail::Root r = detail::root_of(ratio_sq);
    const int sign = sign_of(inv.f3);
    if (r.exact) return to_double((1 + sign * *r.exact) / 2);
    return 0.5 * (1.0 + sign * r.approx);
}

/// Evaluates every gate from the invariants. All comparisons are exact; no
/// square root is formed.
inline ValidityReport check_validity(const InvariantSet<Exact>& inv) {
    ValidityReport rep;
    rep.f1_positive = inv.f1 > 0;
    rep.f4_positive = inv.f4 > 0;
    bool all_f2_positive = true;
    bool all_strong = true;
    for (int i = 0; i < kDiseases; ++i) {
        const Exact& f2 = inv.f2[i];
        const Exact& g2 = inv.g2[i];
        rep.f2_positive[i] = f2 > 0;
        const Exact abs_g2 = g2 < 0 ? Exact(-g2) : g2;
        rep.strong_gate[i] = rep.f4_positive && sign_plus_sqrt(f2 - abs_g2, -1, inv.f4) >= 0;
        all_f2_positive = all_f2_positive && rep.f2_positive[i];
        all_strong = all_strong && rep.strong_gate[i];

        if (rep.f4_positive && f2 != 0) {
            const int sf = sign_of(f2);
            // e = (f2 + g2 - sqrt f4) / (2 f2),  1 - e = (f2 - g2 + sqrt f4) / (2 f2)
            const bool e_nonneg = sign_plus_sqrt(f2 + g2, -1, inv.f4) * sf >= 0;
            const bool e_le_one = sign_plus_sqrt(f2 - g2, +1, inv.f4) * sf >= 0;
            rep.e_in_range[i] = e_nonneg && e_le_one;
            // s <= 1 reduces to f2 - g2 - sqrt f4 >= 0, which also forces s > 0.
            rep.s_in_range[i] = sign_plus_sqrt(f2 - g2, -1, inv.f4) >= 0;
        }
    }
    rep.v_in_range = rep.f1_positive && rep.f4_positive && inv.f3 * inv.f3 <= inv.f1 * inv.f1 * inv.f4;

    if (rep.f4_positive && all_strong) {
        rep.level = ValidityLevel::FullyValid;
    } else if (rep.f4_positive && all_f2_positive) {
        rep.level = ValidityLevel::CoverageOnly;
    } else {
        rep.level = ValidityLevel::Degenerate;
    }
    return rep;
}

/// Both exact solutions, top sign first. Seroconversion comes from
/// (q - e) / (1 - e) for each root.
inline std::pair<ModelParams, ModelParams> solve_both(const CountVector& a) {
    const auto inv = invariants(a);
    detail::require_solvable(inv);
    ModelParams top;
    ModelParams bottom;
    top.v = coverage(inv);
    bottom.v = 1.0 - top.v;
    for (int i = 0; i < kDiseases; ++i) {
        const auto [e, q] = detail::exposure_pair(inv, i);
        const Exact diff = inv.f2[i] - inv.g2[i];
        const int sf = sign_of(inv.f2[i]);
        // 1 - e for the top root and 1 - q (the bottom root's 1 - e).
        const auto s_top = detail::seroconversion_from_rates(e, q, sign_plus_sqrt(diff, +1, inv.f4) * sf);
        const auto s_bottom = detail::seroconversion_from_rates(q, e, sign_plus_sqrt(diff, -1, inv.f4) * sf);
        if (!s_top || !s_bottom) {
            throw Error(ErrorCode::SeroconversionUndefined,
                        "exposure e" + std::to_string(i + 1) + " equals 1 in one of the solutions");
        }
        top.e[i] = e;
        top.s[i] = *s_top;
        bottom.e[i] = q;
        bottom.s[i] = *s_bottom;
    }
    return {top, bottom};
}

/// Canonical estimate with the mirror solution and the full gate report.
/// Estimates are returned even when gates fail; the flags carry the verdict.
/// A component whose exposure equals 1 has s_defined[i] == false and a
/// quiet NaN in params.s[i].
inline EstimateResult estimate(const CountVector& a) {
    EstimateResult out;
    out.invariants_used = invariants(a);
    const auto& inv = out.invariants_used;
    detail::require_solvable(inv);
    out.validity = check_validity(inv);

    out.params.v = coverage(inv);
    out.mirror.v = 1.0 - out.params.v;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < kDiseases; ++i) {
        const auto [e, q] = detail::exposure_pair(inv, i);
        out.params.e[i] = e;
        out.q[i] = q;
        const auto s = detail::seroconversion(inv, i);
        out.s_defined[i] = s.has_value();
        out.params.s[i] = s.value_or(nan);

        out.mirror.e[i] = q;
        out.mirror_q[i] = e;
        const int one_minus_q = sign_plus_sqrt(inv.f2[i] - inv.g2[i], -1, inv.f4) * sign_of(inv.f2[i]);
        const auto ms = detail::seroconversion_from_rates(q, e, one_minus_q);
        out.mirror_s_defined[i] = ms.has_value();
        out.mirror.s[i] = ms.value_or(nan);
    }
    return out;
}

/// Largest absolute gap between the counts implied by `params` and `a`.
inline double residual(const CountVector& a, const ModelParams& params) {
    const double n = to_double(a.total());
    const auto p = forward(params);
    double worst = 0.0;
    for (int k = 0; k < kCells; ++k) worst = std::max(worst, std::abs(n * p[k] - to_double(a[k])));
    return worst;
}

}  // namespace seroinv
