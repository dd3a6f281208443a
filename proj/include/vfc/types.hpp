#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vfc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Dense rank-3 array, index order (a, b, c).
struct Tensor3 {
    int n = 0;
    std::vector<double> data;

    Tensor3() = default;
    explicit Tensor3(int n_) : n(n_), data(static_cast<size_t>(n_) * n_ * n_, 0.0) {}
    double& operator()(int a, int b, int c) { return data[(static_cast<size_t>(a) * n + b) * n + c]; }
    double operator()(int a, int b, int c) const { return data[(static_cast<size_t>(a) * n + b) * n + c]; }
};

// Dense rank-4 array, index order (a, b, c, d).
struct Tensor4 {
    int n = 0;
    std::vector<double> data;

    Tensor4() = default;
    explicit Tensor4(int n_) : n(n_), data(static_cast<size_t>(n_) * n_ * n_ * n_, 0.0) {}
    double& operator()(int a, int b, int c, int d) {
        return data[((static_cast<size_t>(a) * n + b) * n + c) * n + d];
    }
    double operator()(int a, int b, int c, int d) const {
        return data[((static_cast<size_t>(a) * n + b) * n + c) * n + d];
    }
};

}  // namespace vfc
