#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace diffgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// Rank-3 array T(h,i,j), row-major. Used for Christoffel symbols Gamma^h_ij.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim * dim, 0.0) {}

    double& operator()(int h, int i, int j) { return data_[idx(h, i, j)]; }
    double operator()(int h, int i, int j) const { return data_[idx(h, i, j)]; }

    int dim() const { return dim_; }
    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    size_t idx(int h, int i, int j) const {
        return (static_cast<size_t>(h) * dim_ + i) * dim_ + j;
    }
    int dim_ = 0;
    std::vector<double> data_;
};

// Rank-4 array T(i,j,k,l), row-major. Used for the curvature tensor R^i_jkl.
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(int dim)
        : dim_(dim), data_(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}

    double& operator()(int i, int j, int k, int l) { return data_[idx(i, j, k, l)]; }
    double operator()(int i, int j, int k, int l) const { return data_[idx(i, j, k, l)]; }

    int dim() const { return dim_; }
    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    size_t idx(int i, int j, int k, int l) const {
        return ((static_cast<size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
    }
    int dim_ = 0;
    std::vector<double> data_;
};

} // namespace diffgeo
