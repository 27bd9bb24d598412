#pragma once

// Nelder-Mead downhill simplex on the unit box [0,1]^N. Trial points that
// leave the box are reflected back across the violated face.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace seroinv {

template <std::size_t N>
using Point = std::array<double, N>;

template <std::size_t N>
struct SimplexResult {
    Point<N> x{};
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct SimplexOptions {
    int max_iterations = 20000;
    double tolerance = 1e-12;  // stop once max - min over the vertices drops below this
    double initial_step = 0.1;
};

inline double reflect_into_unit(double x) {
    // Fold repeatedly; large excursions are clamped.
    for (int i = 0; i < 4 && (x < 0.0 || x > 1.0); ++i) {
        if (x < 0.0) x = -x;
        if (x > 1.0) x = 2.0 - x;
    }
    return std::clamp(x, 0.0, 1.0);
}

template <std::size_t N>
Point<N> reflect_into_unit(Point<N> x) {
    for (auto& c : x) c = reflect_into_unit(c);
    return x;
}

template <std::size_t N, class Objective>
SimplexResult<N> nelder_mead(Objective&& f, const Point<N>& start, const SimplexOptions& opt) {
    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::array<Point<N>, N + 1> simplex;
    std::array<double, N + 1> values;
    simplex[0] = reflect_into_unit(start);
    for (std::size_t i = 0; i < N; ++i) {
        Point<N> p = simplex[0];
        // Step away from the nearer face so the vertex stays inside.
        p[i] += p[i] + opt.initial_step <= 1.0 ? opt.initial_step : -opt.initial_step;
        simplex[i + 1] = reflect_into_unit(p);
    }
    for (std::size_t i = 0; i <= N; ++i) values[i] = f(simplex[i]);

    std::array<std::size_t, N + 1> order;
    SimplexResult<N> out;
    for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[N];
        const std::size_t second_worst = order[N - 1];
        if (values[worst] - values[best] <= opt.tolerance) {
            out.converged = true;
            break;
        }

        Point<N> centroid{};
        for (std::size_t i = 0; i <= N; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < N; ++d) centroid[d] += simplex[i][d] / static_cast<double>(N);
        }
        auto along = [&](double t) {
            Point<N> p;
            for (std::size_t d = 0; d < N; ++d) p[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
            return reflect_into_unit(p);
        };

        const Point<N> xr = along(-alpha);
        const double fr = f(xr);
        if (fr < values[best]) {
            const Point<N> xe = along(-alpha * gamma);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                values[worst] = fe;
            } else {
                simplex[worst] = xr;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second_worst]) {
            simplex[worst] = xr;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        const Point<N> xc = along(outside ? -rho * alpha : rho);
        const double fc = f(xc);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = xc;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= N; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < N; ++d) {
                simplex[i][d] = simplex[best][d] + sigma * (simplex[i][d] - simplex[best][d]);
            }
            values[i] = f(simplex[i]);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best = static_cast<std::size_t>(best_it - values.begin());
    out.x = simplex[best];
    out.value = *best_it;
    return out;
}

}  // namespace seroinv
