#pragma once

// Numerical per-cohort fit of the forward model: the iterative route the
// closed form replaces. Used to cross-check the closed form and as a
// fallback when the closed form is unavailable.

#include "seroinv/counts.hpp"
#include "seroinv/errors.hpp"
#include "seroinv/model.hpp"
#include "seroinv/nelder_mead.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace seroinv {

enum class Objective { MultinomialLogLikelihood, SumSquaredCounts };

constexpr std::string_view to_string(Objective o) {
    return o == Objective::MultinomialLogLikelihood ? "MultinomialLogLikelihood" : "SumSquaredCounts";
}

struct FitConfig {
    Objective objective = Objective::MultinomialLogLikelihood;
    int max_iterations = 20000;  // per simplex run
    double tolerance = 1e-12;
    int restarts = 8;
    std::uint64_t seed = 1;

    void validate() const {
        if (!(tolerance > 0.0)) throw std::invalid_argument("fit tolerance must be positive");
        if (restarts < 1) throw std::invalid_argument("fit restarts must be at least 1");
        if (max_iterations < 1) throw std::invalid_argument("fit max_iterations must be at least 1");
    }
};

struct FitResult {
    ModelParams params;
    double objective = 0.0;  // minimized; 0 means the counts are reproduced exactly
    bool converged = false;  // false: every restart hit the iteration cap
    int best_restart = 0;
};

inline ModelParams params_from_point(const Point<7>& x) {
    return ModelParams{x[0], {x[1], x[2], x[3]}, {x[4], x[5], x[6]}};
}

inline Point<7> point_from_params(const ModelParams& p) {
    return {p.v, p.e[0], p.e[1], p.e[2], p.s[0], p.s[1], p.s[2]};
}

/// Objective value of `params` against counts `a`. The likelihood objective
/// is the multinomial deviance sum a_k log(a_k / (n p_k)), which differs from
/// the negative log-likelihood only by a data-dependent constant.
inline double fit_objective(const std::array<double, kCells>& a, double n, const ModelParams& params,
                            Objective objective) {
    const auto p = forward(params);
    double total = 0.0;
    for (int k = 0; k < kCells; ++k) {
        if (objective == Objective::SumSquaredCounts) {
            const double d = n * p[k] - a[k];
            total += d * d;
        } else if (a[k] > 0.0) {
            const double expected = std::max(n * p[k], 1e-300);
            total += a[k] * std::log(a[k] / expected);
        }
    }
    return total;
}

inline double fit_objective(const CountVector& a, const ModelParams& params, Objective objective) {
    return fit_objective(a.to_doubles(), to_double(a.total()), params, objective);
}

/// Box-constrained fit over (v, e, s) in [0,1]^7. Restart 0 starts at the
/// box centre, later restarts at seeded uniform points; each run is polished
/// by re-seeding the simplex at its optimum until the objective stops
/// improving. Ties keep the lowest restart index.
inline FitResult fit(const CountVector& a, const FitConfig& config = {}) {
    config.validate();
    const auto counts = a.to_doubles();
    const double n = to_double(a.total());
    if (!(n > 0.0)) throw Error(ErrorCode::EmptyCohort, "cannot fit an empty cohort");

    auto f = [&](const Point<7>& x) { return fit_objective(counts, n, params_from_point(x), config.objective); };

    std::mt19937_64 rng(config.seed);
    FitResult best;
    bool have_best = false;
    for (int r = 0; r < config.restarts; ++r) {
        Point<7> start;
        for (auto& c : start) c = r == 0 ? 0.5 : detail::unit_uniform(rng);

        SimplexOptions opt;
        opt.max_iterations = config.max_iterations;
        opt.tolerance = config.tolerance;
        opt.initial_step = 0.2;
        auto run = nelder_mead<7>(f, start, opt);
        bool converged = run.converged;
        for (int polish = 0; polish < 20; ++polish) {
            opt.initial_step = std::max(1e-6, opt.initial_step * 0.25);
            auto again = nelder_mead<7>(f, run.x, opt);
            converged = converged || again.converged;
            const bool improved = again.value < run.value - config.tolerance;
            if (again.value < run.value) run = again;
            if (!improved && opt.initial_step <= 1e-4) break;
        }
        if (!have_best || run.value < best.objective) {
            best.params = params_from_point(run.x);
            best.objective = run.value;
            best.best_restart = r;
            have_best = true;
        }
        best.converged = best.converged || converged;
    }
    return best;
}

}  // namespace seroinv
