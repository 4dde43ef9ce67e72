#pragma once

#include <Eigen/Core>

namespace abssim {

// Dense d-dimensional model parameters, the unit of all model math.
// Length is fixed by the problem at construction and never changes
// during a run.
using ModelVector = Eigen::VectorXd;

inline bool all_finite(const ModelVector& v) { return v.allFinite(); }

}  // namespace abssim
