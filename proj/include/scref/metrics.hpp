#pragma once

// Standard normalized error measures for a primal/dual candidate pair and
// the scalar merit used to pick the best pooled primal point.

#include <Eigen/Dense>

#include "scref/operators.hpp"

namespace scref {

struct DimacsErrors {
    double e1 = 0.0;  // ||A x - b|| / (1 + max|b_i|)
    double e2 = 0.0;  // max(0, -lambda_min(x)) / (1 + max|b_i|)
    double e3 = 0.0;  // ||c - A*y - z||_F / (1 + max|c entries|)
    double e4 = 0.0;  // max(0, -lambda_min(z)) / (1 + max|c entries|)
    double e5 = 0.0;  // (<c,x> - b'y) / (1 + |<c,x>| + |b'y|), signed
    double e6 = 0.0;  // <x,z> / (1 + |<c,x>| + |b'y|), signed

    double worst() const;
};

DimacsErrors dimacs(const ProblemData& p, const BlockVec& x, const Eigen::VectorXd& y,
                    const BlockVec& z);

// e1 + e2 + |e5| + |e6| for z = c - A*y; lower is better.
double merit(const ProblemData& p, const BlockVec& x, const Eigen::VectorXd& y,
             const BlockVec& z);

double max_abs_entry(const BlockVec& v);

}  // namespace scref
