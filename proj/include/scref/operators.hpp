#pragma once

// Constraint maps over a product cone, their homogenization, and the
// subspace projectors used by the projection solver.

#include <Eigen/Dense>
#include <vector>

#include "scref/jordan.hpp"

namespace scref {

// A : E -> R^m, x |-> (<rows[i], x>)_i, with adjoint y |-> sum_i y_i rows[i].
struct LinearMap {
    ConeShape domain;
    std::vector<BlockVec> rows;

    int m() const { return static_cast<int>(rows.size()); }
    Eigen::VectorXd apply(const BlockVec& x) const;
    BlockVec adjoint(const Eigen::VectorXd& y) const;

    // Dense m-by-vec_dim matrix with row i equal to svec(rows[i]).
    Eigen::MatrixXd to_matrix() const;
};

// Conic pair over cone K:
//   (P) inf <c,x>  s.t. A x = b, x in K
//   (D) sup b'y    s.t. c - A* y in K.
struct ProblemData {
    ConeShape cone;
    LinearMap a;
    Eigen::VectorXd b;
    BlockVec c;

    int m() const { return a.m(); }
    BlockVec dual_slack(const Eigen::VectorXd& y) const { return c - a.adjoint(y); }
    double primal_obj(const BlockVec& x) const { return inner(c, x); }
    double dual_obj(const Eigen::VectorXd& y) const { return b.dot(y); }
};

// Feasibility embedding of the pair at objective cutoff theta. The map sends
// (x, tau, rho) in E x R^2 to (A x - tau b, <c,x> - theta tau + rho); its
// adjoint sends (y, gamma) to (A* y + gamma c, -b'y - gamma theta, gamma).
// Interior kernel points yield primal solutions with objective below theta,
// interior range points yield dual solutions with objective above theta.
LinearMap homogenize(const ProblemData& p, double theta);

enum class SubspaceModel { Kernel, Range };

// Orthogonal projectors onto kernel and range of M', plus the thin SVD
// factors needed to recover multipliers.
struct ProjectorPair {
    Eigen::MatrixXd p_range;   // onto range(M')
    Eigen::MatrixXd p_kernel;  // onto ker(M)
    Eigen::MatrixXd u;         // left singular vectors of M, rank columns
    Eigen::MatrixXd v;         // right singular vectors of M, rank columns
    Eigen::VectorXd sigma;     // singular values above the rank cutoff
    int rank = 0;

    const Eigen::MatrixXd& onto(SubspaceModel model) const {
        return model == SubspaceModel::Range ? p_range : p_kernel;
    }
};

ProjectorPair projectors(const Eigen::MatrixXd& m);

// Solves M' q = w for w in range(M'); throws ResidualTooLarge when the
// reconstruction misses by more than 1e-6 * ||w||.
Eigen::VectorXd recover_multipliers(const ProjectorPair& pp, const Eigen::VectorXd& w);

// Dense matrix of Q_v acting on svec coordinates.
Eigen::MatrixXd quad_rep_matrix(const ConeShape& shape, const BlockVec& v);

// Operator of the rescaled subspace after the automorphisms Q_{trail[0]},
// Q_{trail[1]}, ... have been applied in order. Kernel model: the scaled
// kernel is ker(M * Q_{v_1}^{-1} * ... * Q_{v_t}^{-1}). Range model: the
// scaled range is range((M * Q_{v_1} * ... * Q_{v_t})').
Eigen::MatrixXd scale_operator(const Eigen::MatrixXd& m, const ConeShape& shape,
                               const std::vector<BlockVec>& trail, SubspaceModel model);

// Undoes the trail on a point of the scaled subspace (feasible side) or of
// its orthogonal complement (alternative side).
BlockVec descale_feasible(const BlockVec& w, const std::vector<BlockVec>& trail);
BlockVec descale_alternative(const BlockVec& s, const std::vector<BlockVec>& trail);

}  // namespace scref
