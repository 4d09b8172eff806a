#pragma once

#include <Eigen/Core>

#include <functional>
#include <limits>

namespace degell {

template <class Scalar_>
using vec_type = Eigen::Matrix<Scalar_, Eigen::Dynamic, 1>;

template <class Scalar_>
using mat_type = Eigen::Matrix<Scalar_, Eigen::Dynamic, Eigen::Dynamic>;

using Point = vec_type<double>;
using Vector = vec_type<double>;
using SymMatrix = mat_type<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Scalar plug-in over R^N with trusted bounds (inf and sup over the region of use).
struct ScalarField {
    std::function<double(const Point&)> eval;
    double lower = -kInf;
    double upper = kInf;

    double operator()(const Point& x) const { return eval(x); }

    static ScalarField constant(double value) {
        return {[value](const Point&) { return value; }, value, value};
    }
};

/// Matrix-valued plug-in Sigma(x); bounds refer to A(x) = Sigma^T Sigma.
struct MatrixField {
    std::function<SymMatrix(const Point&)> eval;
    double inf_lambda_max = 0.0; // inf_x lambda_N(Sigma^T Sigma)
    double sup_trace = kInf;     // sup_x Tr(Sigma^T Sigma)
    bool positive_definite = false;

    SymMatrix operator()(const Point& x) const { return eval(x); }
};

} // namespace degell
