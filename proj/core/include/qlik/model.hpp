#ifndef QLIK_MODEL_HPP_
#define QLIK_MODEL_HPP_

#include <optional>
#include <variant>

#include <Eigen/Cholesky>

#include "qlik/noise.hpp"

namespace qlik {

// Scale parameter Psi of y = Psi^{-1} (S x + w), in the three structures
// the logconcavity results distinguish.
struct FixedScale {
    Matrix matrix;  // symmetric positive definite
};
struct ScalarScale {
    double value;  // Psi = value * I
};
struct DiagonalScale {
    Vector values;  // Psi = diag(values)
};
using Scale = std::variant<FixedScale, ScalarScale, DiagonalScale>;

enum class ScaleKind { Fixed, Scalar, Diagonal };
ScaleKind scale_kind(const Scale& scale);

class LocationScaleModel {
public:
    // Validates shapes and positivity; FixedScale must be symmetric and
    // admit a Cholesky factorization.
    LocationScaleModel(Matrix S, Vector x, Scale scale);

    int n() const { return static_cast<int>(S_.rows()); }
    int m() const { return static_cast<int>(S_.cols()); }
    const Matrix& S() const { return S_; }
    const Vector& x() const { return x_; }
    const Scale& scale() const { return scale_; }
    ScaleKind kind() const { return scale_kind(scale_); }

    LocationScaleModel with_location(Vector x) const;
    LocationScaleModel with_scale(Scale scale) const;

    Vector location() const { return S_ * x_; }  // S x
    Matrix scale_matrix() const;
    // Diagonal of Psi when Psi is diagonal (Scalar, Diagonal, or a Fixed
    // matrix with off-diagonal magnitudes below 1e-12).
    std::optional<Vector> diagonal_scale() const;
    double log_det_scale() const;
    Vector apply_scale(const Vector& y) const;     // Psi y
    Vector solve_scale(const Vector& v) const;     // Psi^{-1} v
    Matrix solve_scale(const Matrix& v) const;     // column-wise

private:
    Matrix S_;
    Vector x_;
    Scale scale_;
    std::optional<Eigen::LLT<Matrix>> llt_;
};

// alpha * s1 + (1 - alpha) * s0, keeping the common structure (mixed
// structures combine as full matrices).
Scale combine_scales(const Scale& s0, const Scale& s1, double alpha);

// Throws std::invalid_argument unless `scale` is a valid scale of
// dimension n.
void validate_scale(const Scale& scale, int n);

}  // namespace qlik

#endif  // QLIK_MODEL_HPP_
