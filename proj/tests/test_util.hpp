#pragma once

#include <string>

#include <Eigen/Dense>

#include "sympat/rng.hpp"

namespace testutil {

// Haar-ish random orthogonal matrix: QR of a Gaussian matrix with the sign
// of R's diagonal folded into Q. Mix of rotations and reflections.
inline Eigen::MatrixXd random_orthogonal(sympat::SampleRng& rng, int n) {
    Eigen::MatrixXd g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = rng.normal();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < n; ++c)
        if (r(c, c) < 0.0) q.col(c) = -q.col(c);
    return q;
}

inline std::string scenario_path(const std::string& name) {
    return std::string(SYMPAT_SCENARIO_DIR) + "/" + name;
}

}  // namespace testutil
