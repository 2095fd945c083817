#include "scref/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace scref {

double max_abs_entry(const BlockVec& v) {
    double hi = 0.0;
    for (const Eigen::MatrixXd& m : v.blocks)
        hi = std::max(hi, m.cwiseAbs().maxCoeff());
    return hi;
}

double DimacsErrors::worst() const {
    return std::max({e1, e2, e3, e4, std::abs(e5), std::abs(e6)});
}

DimacsErrors dimacs(const ProblemData& p, const BlockVec& x, const Eigen::VectorXd& y,
                    const BlockVec& z) {
    const double bmax = (p.b.size() > 0) ? p.b.cwiseAbs().maxCoeff() : 0.0;
    const double cmax = max_abs_entry(p.c);
    const double cx = inner(p.c, x);
    const double by = p.b.dot(y);
    const double obj_scale = 1.0 + std::abs(cx) + std::abs(by);

    DimacsErrors e;
    e.e1 = (p.a.apply(x) - p.b).norm() / (1.0 + bmax);
    e.e2 = std::max(0.0, -lambda_min(x)) / (1.0 + bmax);
    e.e3 = norm_fro(p.c - p.a.adjoint(y) - z) / (1.0 + cmax);
    e.e4 = std::max(0.0, -lambda_min(z)) / (1.0 + cmax);
    e.e5 = (cx - by) / obj_scale;
    e.e6 = inner(x, z) / obj_scale;
    return e;
}

double merit(const ProblemData& p, const BlockVec& x, const Eigen::VectorXd& y,
             const BlockVec& z) {
    const DimacsErrors e = dimacs(p, x, y, z);
    return e.e1 + e.e2 + std::abs(e.e5) + std::abs(e.e6);
}

}  // namespace scref
