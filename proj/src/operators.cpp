#include "scref/operators.hpp"

#include <Eigen/SVD>

#include "scref/errors.hpp"

namespace scref {

Eigen::VectorXd LinearMap::apply(const BlockVec& x) const {
    Eigen::VectorXd out(m());
    for (int i = 0; i < m(); ++i) out[i] = inner(rows[i], x);
    return out;
}

BlockVec LinearMap::adjoint(const Eigen::VectorXd& y) const {
    if (y.size() != m()) throw DimensionMismatch("adjoint: multiplier length mismatch");
    BlockVec out = BlockVec::zero(domain);
    for (int i = 0; i < m(); ++i)
        for (size_t b = 0; b < out.blocks.size(); ++b)
            out.blocks[b] += y[i] * rows[i].blocks[b];
    return out;
}

Eigen::MatrixXd LinearMap::to_matrix() const {
    Eigen::MatrixXd out(m(), domain.vec_dim());
    for (int i = 0; i < m(); ++i) out.row(i) = svec(rows[i]).transpose();
    return out;
}

LinearMap homogenize(const ProblemData& p, double theta) {
    LinearMap hom;
    hom.domain = p.cone.homogenized();
    hom.rows.reserve(p.m() + 1);
    for (int i = 0; i < p.m(); ++i)
        hom.rows.push_back(append_diag2(p.a.rows[i], -p.b[i], 0.0));
    hom.rows.push_back(append_diag2(p.c, -theta, 1.0));
    return hom;
}

ProjectorPair projectors(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = (sv.size() > 0) ? 1e-13 * sv[0] : 0.0;
    int rank = 0;
    while (rank < sv.size() && sv[rank] > cutoff) ++rank;

    ProjectorPair pp;
    pp.rank = rank;
    pp.u = svd.matrixU().leftCols(rank);
    pp.v = svd.matrixV().leftCols(rank);
    pp.sigma = sv.head(rank);
    const int d = static_cast<int>(m.cols());
    pp.p_range = pp.v * pp.v.transpose();
    pp.p_kernel = Eigen::MatrixXd::Identity(d, d) - pp.p_range;
    return pp;
}

Eigen::VectorXd recover_multipliers(const ProjectorPair& pp, const Eigen::VectorXd& w) {
    const Eigen::VectorXd coef = pp.v.transpose() * w;
    const Eigen::VectorXd q = pp.u * coef.cwiseQuotient(pp.sigma);
    const Eigen::VectorXd back = pp.v * (pp.sigma.cwiseProduct(pp.u.transpose() * q));
    const double res = (back - w).norm();
    if (res > 1e-6 * w.norm())
        throw ResidualTooLarge("multiplier recovery residual " + std::to_string(res));
    return q;
}

Eigen::MatrixXd quad_rep_matrix(const ConeShape& shape, const BlockVec& v) {
    const int d = shape.vec_dim();
    Eigen::MatrixXd out(d, d);
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < d; ++j) {
        unit[j] = 1.0;
        out.col(j) = svec(quad_rep(v, smat(shape, unit)));
        unit[j] = 0.0;
    }
    return out;
}

Eigen::MatrixXd scale_operator(const Eigen::MatrixXd& m, const ConeShape& shape,
                               const std::vector<BlockVec>& trail, SubspaceModel model) {
    Eigen::MatrixXd out = m;
    for (const BlockVec& v : trail) {
        const BlockVec w = (model == SubspaceModel::Kernel) ? inverse(v) : v;
        out = out * quad_rep_matrix(shape, w);
    }
    return out;
}

BlockVec descale_feasible(const BlockVec& w, const std::vector<BlockVec>& trail) {
    BlockVec out = w;
    for (auto it = trail.rbegin(); it != trail.rend(); ++it)
        out = quad_rep(inverse(*it), out);
    return out;
}

BlockVec descale_alternative(const BlockVec& s, const std::vector<BlockVec>& trail) {
    BlockVec out = s;
    for (auto it = trail.rbegin(); it != trail.rend(); ++it)
        out = quad_rep(*it, out);
    return out;
}

}  // namespace scref
