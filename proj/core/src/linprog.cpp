#include "qlik/linprog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qlik {

namespace {

constexpr double kEps = 1e-11;

class Tableau {
public:
    // Rows: constraints E z = f (f >= 0) followed by the objective row.
    Tableau(Eigen::MatrixXd body, std::vector<int> basis)
        : t_(std::move(body)), basis_(std::move(basis))
    {
    }

    Eigen::Index rows() const { return t_.rows() - 1; }
    Eigen::Index cols() const { return t_.cols() - 1; }

    double rhs(Eigen::Index i) const { return t_(i, cols()); }
    double objective_value() const { return -t_(rows(), cols()); }
    const std::vector<int>& basis() const { return basis_; }

    void pivot(Eigen::Index r, Eigen::Index c)
    {
        t_.row(r) /= t_(r, c);
        for (Eigen::Index i = 0; i <= rows(); ++i) {
            if (i == r) continue;
            const double f = t_(i, c);
            if (f != 0.0) t_.row(i) -= f * t_.row(r);
        }
        basis_[static_cast<std::size_t>(r)] = static_cast<int>(c);
    }

    // Sets the objective row to reduced costs of max cost.z.
    void set_objective(const Eigen::VectorXd& cost)
    {
        t_.row(rows()).setZero();
        t_.row(rows()).head(cost.size()) = cost.transpose();
        for (Eigen::Index i = 0; i < rows(); ++i) {
            const double cb = cost[basis_[static_cast<std::size_t>(i)]];
            if (cb != 0.0) t_.row(rows()) -= cb * t_.row(i);
        }
    }

    // Returns false if unbounded. Columns >= allowed_cols never enter.
    bool optimize(Eigen::Index allowed_cols)
    {
        for (int iter = 0; iter < 100000; ++iter) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < allowed_cols; ++j) {
                if (t_(rows(), j) > kEps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            Eigen::Index leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < rows(); ++i) {
                const double a = t_(i, enter);
                if (a <= kEps) continue;
                const double ratio = rhs(i) / a;
                const bool better = ratio < best - kEps;
                const bool tie_lower_index =
                    leave >= 0 && ratio <= best + kEps &&
                    basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)];
                if (leave < 0 || better || tie_lower_index) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        throw std::runtime_error("maximize_linear: iteration limit reached");
    }

    double at(Eigen::Index i, Eigen::Index j) const { return t_(i, j); }

private:
    Eigen::MatrixXd t_;
    std::vector<int> basis_;
};

}  // namespace

LpResult maximize_linear(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                         const Eigen::VectorXd& b)
{
    const Eigen::Index k = A.rows();
    const Eigen::Index n = A.cols();
    if (c.size() != n || b.size() != k)
        throw std::invalid_argument("maximize_linear: dimension mismatch");

    // Variables: u (n), v (n), slack s (k), artificial r (k); x = u - v.
    const Eigen::Index structural = 2 * n + k;
    const Eigen::Index total = structural + k;
    Eigen::MatrixXd body = Eigen::MatrixXd::Zero(k + 1, total + 1);
    std::vector<int> basis(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        const double sign = b[i] < 0.0 ? -1.0 : 1.0;
        body.block(i, 0, 1, n) = sign * A.row(i);
        body.block(i, n, 1, n) = -sign * A.row(i);
        body(i, 2 * n + i) = sign;
        body(i, structural + i) = 1.0;
        body(i, total) = sign * b[i];
        basis[static_cast<std::size_t>(i)] = static_cast<int>(structural + i);
    }
    Tableau tab(std::move(body), std::move(basis));

    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
    phase1.tail(k).setConstant(-1.0);
    tab.set_objective(phase1);
    tab.optimize(total);

    LpResult result;
    if (tab.objective_value() < -1e-9 * (1.0 + b.cwiseAbs().maxCoeff())) {
        result.status = LpStatus::Infeasible;
        return result;
    }
    // Drive remaining artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < k; ++i) {
        if (tab.basis()[static_cast<std::size_t>(i)] < structural) continue;
        for (Eigen::Index j = 0; j < structural; ++j) {
            if (std::abs(tab.at(i, j)) > 1e-9) {
                tab.pivot(i, j);
                break;
            }
        }
    }

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total);
    phase2.head(n) = c;
    phase2.segment(n, n) = -c;
    tab.set_objective(phase2);
    if (!tab.optimize(structural)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    Eigen::VectorXd z = Eigen::VectorXd::Zero(total);
    for (Eigen::Index i = 0; i < k; ++i) z[tab.basis()[static_cast<std::size_t>(i)]] = tab.rhs(i);
    result.status = LpStatus::Optimal;
    result.x = z.head(n) - z.segment(n, n);
    result.value = c.dot(result.x);
    return result;
}

}  // namespace qlik
