#ifndef QLIK_TESTS_SUPPORT_HPP_
#define QLIK_TESTS_SUPPORT_HPP_

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace qlik::test {

using Thresholds = std::vector<std::vector<double>>;

// Standard normal CDF straight from erfc.
inline double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double phi_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

// Inverse by bisection on phi_cdf.
inline double phi_inverse(double p)
{
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (phi_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                      double fb, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Simpson with a tolerance relative to a first coarse estimate.
inline double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-13)
{
    const int pieces = 64;
    double coarse = 0.0;
    const double h = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i) {
        const double x0 = a + i * h, x1 = x0 + h;
        coarse += h / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
    }
    double total = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), fm = f(xm), f1 = f(x1);
        total += detail::simpson(f, x0, x1, f0, fm, f1, h / 6.0 * (f0 + 4.0 * fm + f1),
                                 rel_tol * std::abs(coarse) / pieces, 50);
    }
    return total;
}

struct TestRng {
    std::mt19937_64 gen;
    explicit TestRng(unsigned long long seed) : gen(seed) {}
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); }
    Eigen::VectorXd normal_vector(int n)
    {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }
    Eigen::MatrixXd normal_matrix(int r, int c)
    {
        Eigen::MatrixXd m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = normal();
        return m;
    }
    Eigen::MatrixXd pd_matrix(int n)
    {
        const Eigen::MatrixXd a = normal_matrix(n, n);
        return a * a.transpose() / n + 0.3 * Eigen::MatrixXd::Identity(n, n);
    }
};

}  // namespace qlik::test

#endif  // QLIK_TESTS_SUPPORT_HPP_
