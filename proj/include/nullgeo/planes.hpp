#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace nullgeo {

/// Orthonormal basis (columns) of the span of the leading `rank` left singular
/// directions of `vectors`.
inline Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& vectors, int rank)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeFullU);
    return svd.matrixU().leftCols(rank);
}

/// Norm of the part of v orthogonal to the span of the orthonormal columns of basis.
inline double residual_off_span(const Eigen::VectorXd& v, const Eigen::MatrixXd& basis)
{
    return (v - basis * (basis.transpose() * v)).norm();
}

/// Largest principal angle between the spans of two orthonormal frames of equal rank.
inline double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    const Eigen::MatrixXd off = b - a * (a.transpose() * b);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(off);
    return std::asin(std::clamp(svd.singularValues()(0), 0.0, 1.0));
}

/// Smallest principal angle between the spans of two orthonormal frames.
inline double min_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
    return std::acos(std::clamp(svd.singularValues()(0), 0.0, 1.0));
}

} // namespace nullgeo
