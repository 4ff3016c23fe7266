#ifndef QLIK_OPTIMIZE_HPP_
#define QLIK_OPTIMIZE_HPP_

#include <functional>
#include <vector>

#include "qlik/noise.hpp"

namespace qlik {

// Objective value at theta; fills *grad when non-null. May return -inf.
using SmoothObjective = std::function<double(const Vector& theta, Vector* grad)>;

struct AscentOptions {
    double grad_tol = 1e-8;  // negative: never stop early
    int max_iters = 500;
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_increase = 1e-4;  // Armijo constant
    int max_backtracks = 80;
    // Start each line search from the Barzilai-Borwein step s.s / s.(g_k - g_{k+1})
    // of the previous iteration instead of initial_step.
    bool barzilai_borwein = true;
    Vector lower_bounds;  // per coordinate; -inf for free coordinates
};

struct TrajectoryPoint {
    int iteration;
    double value;
};

struct AscentResult {
    Vector theta;
    double value = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;  // norm of P(theta + g) - theta
    bool stationary = false;
    bool line_search_failed = false;
    std::vector<TrajectoryPoint> trajectory;
};

// Projected gradient ascent with Armijo backtracking onto the box
// {theta >= lower_bounds}. Every accepted step satisfies
// f(new) >= f(old) + c g.(new - old), so the trajectory is nondecreasing.
// Throws std::domain_error if f(theta0) is not finite.
AscentResult projected_gradient_ascent(const SmoothObjective& f, Vector theta0,
                                       const AscentOptions& options);

}  // namespace qlik

#endif  // QLIK_OPTIMIZE_HPP_
