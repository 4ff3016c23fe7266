#include "qlik/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qlik {

ScaleKind scale_kind(const Scale& scale)
{
    if (std::holds_alternative<FixedScale>(scale)) return ScaleKind::Fixed;
    if (std::holds_alternative<ScalarScale>(scale)) return ScaleKind::Scalar;
    return ScaleKind::Diagonal;
}

void validate_scale(const Scale& scale, int n)
{
    if (const auto* s = std::get_if<ScalarScale>(&scale)) {
        if (!(s->value > 0.0) || !std::isfinite(s->value))
            throw std::invalid_argument("scalar scale must be positive and finite");
    } else if (const auto* d = std::get_if<DiagonalScale>(&scale)) {
        if (d->values.size() != n) throw std::invalid_argument("diagonal scale has wrong length");
        for (Eigen::Index j = 0; j < n; ++j)
            if (!(d->values[j] > 0.0) || !std::isfinite(d->values[j]))
                throw std::invalid_argument("diagonal scale entries must be positive and finite");
    } else {
        const Matrix& P = std::get<FixedScale>(scale).matrix;
        if (P.rows() != n || P.cols() != n) throw std::invalid_argument("scale matrix must be n x n");
        if (!P.allFinite()) throw std::invalid_argument("scale matrix must be finite");
        const double tol = 1e-12 * (1.0 + P.cwiseAbs().maxCoeff());
        if (((P - P.transpose()).cwiseAbs().array() > tol).any())
            throw std::invalid_argument("scale matrix must be symmetric");
        if (Eigen::LLT<Matrix>(P).info() != Eigen::Success)
            throw std::invalid_argument("scale matrix must be positive definite");
    }
}

Scale combine_scales(const Scale& s0, const Scale& s1, double alpha)
{
    const auto* a = std::get_if<ScalarScale>(&s0);
    const auto* b = std::get_if<ScalarScale>(&s1);
    if (a && b) return ScalarScale{alpha * b->value + (1.0 - alpha) * a->value};
    const auto* da = std::get_if<DiagonalScale>(&s0);
    const auto* db = std::get_if<DiagonalScale>(&s1);
    if (da && db) return DiagonalScale{alpha * db->values + (1.0 - alpha) * da->values};
    auto as_matrix = [](const Scale& s, Eigen::Index n) -> Matrix {
        if (const auto* x = std::get_if<ScalarScale>(&s)) return x->value * Matrix::Identity(n, n);
        if (const auto* d = std::get_if<DiagonalScale>(&s)) return d->values.asDiagonal();
        return std::get<FixedScale>(s).matrix;
    };
    Eigen::Index n = 0;
    for (const Scale* s : {&s0, &s1}) {
        if (const auto* d = std::get_if<DiagonalScale>(s)) n = d->values.size();
        if (const auto* f = std::get_if<FixedScale>(s)) n = f->matrix.rows();
    }
    if (n == 0) throw std::invalid_argument("combine_scales: cannot infer dimension");
    return FixedScale{alpha * as_matrix(s1, n) + (1.0 - alpha) * as_matrix(s0, n)};
}

LocationScaleModel::LocationScaleModel(Matrix S, Vector x, Scale scale)
    : S_(std::move(S)), x_(std::move(x)), scale_(std::move(scale))
{
    if (S_.rows() < 1 || S_.cols() < 1) throw std::invalid_argument("S must be nonempty");
    if (x_.size() != S_.cols()) throw std::invalid_argument("x length must equal the columns of S");
    validate_scale(scale_, n());
    if (const auto* f = std::get_if<FixedScale>(&scale_)) llt_.emplace(f->matrix);
}

LocationScaleModel LocationScaleModel::with_location(Vector x) const
{
    return LocationScaleModel(S_, std::move(x), scale_);
}

LocationScaleModel LocationScaleModel::with_scale(Scale scale) const
{
    return LocationScaleModel(S_, x_, std::move(scale));
}

Matrix LocationScaleModel::scale_matrix() const
{
    if (const auto* s = std::get_if<ScalarScale>(&scale_)) return s->value * Matrix::Identity(n(), n());
    if (const auto* d = std::get_if<DiagonalScale>(&scale_)) return d->values.asDiagonal();
    return std::get<FixedScale>(scale_).matrix;
}

std::optional<Vector> LocationScaleModel::diagonal_scale() const
{
    if (const auto* s = std::get_if<ScalarScale>(&scale_)) return Vector::Constant(n(), s->value);
    if (const auto* d = std::get_if<DiagonalScale>(&scale_)) return d->values;
    const Matrix& P = std::get<FixedScale>(scale_).matrix;
    Matrix off = P;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() < 1e-12) return Vector(P.diagonal());
    return std::nullopt;
}

double LocationScaleModel::log_det_scale() const
{
    if (const auto* s = std::get_if<ScalarScale>(&scale_)) return n() * std::log(s->value);
    if (const auto* d = std::get_if<DiagonalScale>(&scale_)) return d->values.array().log().sum();
    return 2.0 * llt_->matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Vector LocationScaleModel::apply_scale(const Vector& y) const
{
    if (const auto* s = std::get_if<ScalarScale>(&scale_)) return s->value * y;
    if (const auto* d = std::get_if<DiagonalScale>(&scale_)) return d->values.cwiseProduct(y);
    return std::get<FixedScale>(scale_).matrix * y;
}

Vector LocationScaleModel::solve_scale(const Vector& v) const
{
    if (const auto* s = std::get_if<ScalarScale>(&scale_)) return v / s->value;
    if (const auto* d = std::get_if<DiagonalScale>(&scale_)) return v.cwiseQuotient(d->values);
    return llt_->solve(v);
}

Matrix LocationScaleModel::solve_scale(const Matrix& v) const
{
    if (const auto* s = std::get_if<ScalarScale>(&scale_)) return v / s->value;
    if (const auto* d = std::get_if<DiagonalScale>(&scale_))
        return d->values.cwiseInverse().asDiagonal() * v;
    return llt_->solve(v);
}

}  // namespace qlik
