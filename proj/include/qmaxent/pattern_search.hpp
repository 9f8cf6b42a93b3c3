#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace qmaxent {

struct PatternSearchResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false; // step shrank below step_tol before the eval budget ran out
    std::size_t evals = 0;
};

/// Greedy coordinate pattern search: probe +-step along every coordinate,
/// move to the best strict improvement, halve the step when none improves.
/// Deterministic for a fixed starting point. The objective owns any
/// constraint handling (e.g. renormalizing a sphere parameterization).
template <class F>
PatternSearchResult pattern_search(F&& f, std::vector<double> x0, double initial_step,
                                   double step_tol, std::size_t max_evals) {
    PatternSearchResult res;
    res.x = std::move(x0);
    res.value = f(res.x);
    res.evals = 1;

    const std::size_t n = res.x.size();
    double step = initial_step;
    std::vector<double> trial = res.x;

    while (res.evals < max_evals) {
        double best_value = res.value;
        std::size_t best_i = n;
        double best_delta = 0.0;
        for (std::size_t i = 0; i < n && res.evals < max_evals; ++i) {
            for (const double delta : {step, -step}) {
                trial[i] = res.x[i] + delta;
                const double v = f(trial);
                ++res.evals;
                if (v < best_value) {
                    best_value = v;
                    best_i = i;
                    best_delta = delta;
                }
                if (res.evals >= max_evals) break;
            }
            trial[i] = res.x[i];
        }
        if (best_i < n) {
            res.x[best_i] += best_delta;
            trial[best_i] = res.x[best_i];
            res.value = best_value;
        } else {
            step *= 0.5;
            if (step < step_tol) {
                res.converged = true;
                break;
            }
        }
    }
    return res;
}

} // namespace qmaxent
