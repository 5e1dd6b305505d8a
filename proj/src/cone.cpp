#include "nullgeo/cone.hpp"

#include "nullgeo/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace nullgeo {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kNullTol = 1e-9;

} // namespace

std::pair<int, int> signature(const Eigen::Matrix3d& G)
{
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(G, Eigen::EigenvaluesOnly);
    const Eigen::Vector3d ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    int pos = 0;
    int neg = 0;
    for (int i = 0; i < 3; ++i) {
        if (ev[i] > 1e-12 * scale) {
            ++pos;
        } else if (ev[i] < -1e-12 * scale) {
            ++neg;
        }
    }
    return {pos, neg};
}

ConeQuadric metric_from_cone(std::span<const TangentVector> samples)
{
    if (samples.size() < 5) {
        throw DegenerateConeError("metric_from_cone: at least five null directions are required");
    }
    // c11 v1^2 + c22 v2^2 + c33 v3^2 + 2 c12 v1 v2 + 2 c13 v1 v3 + 2 c23 v2 v3 = 0
    Eigen::MatrixXd A(static_cast<Eigen::Index>(samples.size()), 6);
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const TangentVector v = samples[r] / samples[r].norm();
        A.row(static_cast<Eigen::Index>(r)) << v[0] * v[0], v[1] * v[1], v[2] * v[2], 2.0 * v[0] * v[1],
            2.0 * v[0] * v[2], 2.0 * v[1] * v[2];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (!(sv[4] > kRankTol * sv[0])) {
        throw DegenerateConeError("metric_from_cone: samples do not determine a unique quadric");
    }
    const Eigen::VectorXd c = svd.matrixV().col(5);

    Eigen::Matrix3d G;
    G << c[0], c[3], c[4],
         c[3], c[1], c[5],
         c[4], c[5], c[2];
    const double det = G.determinant();
    if (!(std::abs(det) > 1e-14)) {
        throw DegenerateConeError("metric_from_cone: recovered quadric is degenerate");
    }
    G /= std::cbrt(std::abs(det));

    auto [pos, neg] = signature(G);
    if (pos == 1 && neg == 2) {
        G = -G;
        std::swap(pos, neg);
    }
    if (pos != 2 || neg != 1) {
        throw NotLorentzConeError("metric_from_cone: recovered quadric is not of signature (2,1)");
    }

    for (const auto& v : samples) {
        if (std::abs(v.dot(G * v)) > kNullTol * v.squaredNorm()) {
            throw DegenerateConeError("metric_from_cone: samples do not lie on a common quadric cone");
        }
    }
    return {G};
}

} // namespace nullgeo
