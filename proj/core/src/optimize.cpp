#include "qlik/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qlik {

namespace {

Vector project(const Vector& theta, const Vector& lower)
{
    return theta.cwiseMax(lower);
}

}  // namespace

AscentResult projected_gradient_ascent(const SmoothObjective& f, Vector theta0,
                                       const AscentOptions& options)
{
    const Eigen::Index dim = theta0.size();
    const Vector lower = options.lower_bounds.size() == dim
                             ? options.lower_bounds
                             : Vector::Constant(dim, -std::numeric_limits<double>::infinity());

    AscentResult r;
    r.theta = project(theta0, lower);
    Vector grad(dim);
    r.value = f(r.theta, &grad);
    if (!std::isfinite(r.value)) throw std::domain_error("ascent: objective not finite at start");
    r.trajectory.push_back({0, r.value});

    Vector trial_grad(dim);
    double first_step = options.initial_step;
    for (int iter = 1;; ++iter) {
        r.gradient_norm = (project(r.theta + grad, lower) - r.theta).norm();
        if (r.gradient_norm <= options.grad_tol) {
            r.stationary = true;
            return r;
        }
        if (iter > options.max_iters) return r;

        double step = first_step;
        bool accepted = false;
        for (int k = 0; k < options.max_backtracks; ++k, step *= options.shrink) {
            const Vector trial = project(r.theta + step * grad, lower);
            const double value = f(trial, &trial_grad);
            const double predicted = grad.dot(trial - r.theta);
            if (std::isfinite(value) && value >= r.value + options.sufficient_increase * predicted &&
                value >= r.value) {
                if (options.barzilai_borwein) {
                    const Vector s = trial - r.theta;
                    const double curvature = s.dot(grad - trial_grad);
                    first_step = curvature > 0.0 ? std::clamp(s.squaredNorm() / curvature, 1e-12, 1e12)
                                                 : options.initial_step;
                }
                r.theta = trial;
                r.value = value;
                grad = trial_grad;
                accepted = true;
                break;
            }
        }
        r.iterations = iter;
        r.trajectory.push_back({iter, r.value});
        if (!accepted) {
            r.line_search_failed = true;
            r.gradient_norm = (project(r.theta + grad, lower) - r.theta).norm();
            return r;
        }
    }
}

}  // namespace qlik
