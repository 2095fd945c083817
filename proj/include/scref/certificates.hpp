#pragma once

// Classification of homogenized points: a kernel point either recovers a
// primal solution or certifies that the primal is unbounded/degenerate; a
// range point either recovers a dual solution or certifies the same for the
// dual side. All classification thresholds assume inputs normalized to unit
// Frobenius norm.

#include <Eigen/Dense>

#include "scref/jordan.hpp"
#include "scref/operators.hpp"

namespace scref {

enum class CertKind {
    None,
    ReducingDirPrimal,   // f with b'f = 0 and -A*f in K \ {0}: exposes a face of (P)
    ImprovingRayDual,    // f with b'f > 0 and -A*f in K: (D) unbounded or infeasible-facing ray
    ReducingDirDual,     // x in K \ {0} with A x = 0, <c,x> = 0: exposes a face of (D)
    ImprovingRayPrimal,  // x in K with A x = 0, <c,x> < 0: (P) unbounded or infeasible-facing ray
};

const char* cert_kind_name(CertKind k);

struct Certificate {
    CertKind kind = CertKind::None;
    // Dual-space certificates: direction f and its slack movement -A*f.
    Eigen::VectorXd f;
    BlockVec face;
    // Primal-space certificates: the ray or direction itself.
    BlockVec x;
    double objective = 0.0;  // b'f or <c,x>
};

enum class RayClass { None, Reducing, Improving };

// Shared scalar rule. `t` is the homogenizing coordinate (tau or gamma),
// `obj` the objective of the candidate direction (<c,x> or b'f with f = -y),
// `lmin` and `nrm` the extreme eigenvalue and Frobenius norm of the cone
// element that must stay in K.
RayClass classify_direction(double t, double obj, double lmin, double nrm);

struct KernelInterp {
    enum class Kind { PrimalPoint, Cert, None } kind = Kind::None;
    BlockVec x;              // PrimalPoint: x / tau
    double objective = 0.0;  // <c, x/tau>
    Certificate cert;
};

// w = (x, tau, rho) over the homogenized cone, unit norm.
KernelInterp interpret_kernel_point(const BlockVec& w, const ProblemData& p);

struct RangeInterp {
    enum class Kind { DualPoint, Cert, None } kind = Kind::None;
    Eigen::VectorXd y;       // DualPoint: the recovered dual solution
    BlockVec z;              // c - A*y, recomputed
    double objective = 0.0;  // b'y
    Certificate cert;
};

// s = (z, omega, kappa) in range(hom') cap K, unit norm. `pp_hom` holds the
// SVD of the homogenized operator for multiplier recovery; throws
// ResidualTooLarge when s is not recoverable.
RangeInterp interpret_range_point(const BlockVec& s, const ProjectorPair& pp_hom,
                                  const ProblemData& p);

}  // namespace scref
