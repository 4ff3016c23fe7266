#ifndef QLIK_LINPROG_HPP_
#define QLIK_LINPROG_HPP_

#include <Eigen/Core>

namespace qlik {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double value = 0.0;
};

// maximize c.x subject to A x <= b with x free.
//
// Dense two-phase tableau simplex with Bland's rule. Intended for the
// small (n <= ~10, tens of constraints) programs the geometry code
// needs; not a general-purpose LP solver.
LpResult maximize_linear(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                         const Eigen::VectorXd& b);

}  // namespace qlik

#endif  // QLIK_LINPROG_HPP_
