#pragma once

// Refinement of warm-started conic solutions by bisection on the objective
// cutoff. Each outer iteration solves the homogenized feasibility problem at
// the current cutoff with the projection and rescaling solver: a feasible
// point tightens one side of the bracket and is pooled, the alternative
// tightens the other side or certifies unboundedness/degeneracy, and the
// final answer is selected from the pools.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "scref/certificates.hpp"
#include "scref/metrics.hpp"
#include "scref/prsolver.hpp"

namespace scref {

struct WarmStart {
    BlockVec x;
    Eigen::VectorXd y;
    BlockVec z;
};

// x = e, y = 0, z = c.
WarmStart cold_start(const ProblemData& p);

struct RefineConfig {
    double theta_acc = 1e-12;          // stop when ub - lb falls below this
    double membership_tol = 1e-12;     // lambda_min >= -tol counts as in-cone
    double accept_tol = 1e-4;          // residual gate for pooling recovered iterates
    double bracket_tol = 1e-10;        // witness quality required to move lb or ub
    int max_consecutive_incorrect = 30;
    int max_consecutive_noeps = 30;
    double stage_time_limit = 1800.0;  // seconds per stage
    long max_outer_iterations = 10000;
    PrConfig pr;
};

enum class RefineExit { Complete, CertificateFound, NumericalError, TimeOver };
const char* refine_exit_name(RefineExit e);

// A stage bisects with one subspace model: the primal stage looks for
// interior kernel points (primal solutions below the cutoff), the dual stage
// for interior range points (dual solutions above it).
enum class StageModel { Primal, Dual };
const char* stage_model_name(StageModel m);

struct TraceRecord {
    long iteration = 0;  // outer index within the stage
    int stage = 0;       // 1 or 2 inside postprocess, 0 standalone
    StageModel model = StageModel::Primal;
    double theta = 0.0;
    PrStatus pr_status = PrStatus::IncorrectOutput;
    std::string action;
    double lb = 0.0;  // bracket after this iteration's update
    double ub = 0.0;
    int rounds = 0;
    long bp_iterations = 0;
    double seconds = 0.0;  // stage clock at record time
};

struct RefineResult {
    RefineExit exit = RefineExit::Complete;
    BlockVec x;
    Eigen::VectorXd y;
    BlockVec z;
    double lb = 0.0;
    double ub = 0.0;
    Certificate cert;  // exit == CertificateFound only
    DimacsErrors errors;
    std::vector<TraceRecord> trace;
    long outer_iterations = 0;
    double seconds = 0.0;
};

// Single stages. refine_primal bisects with the kernel model, refine_dual
// with the range model; both pool every recovered candidate and return the
// selected best pair even on a degraded exit.
RefineResult refine_primal(const ProblemData& p, const WarmStart& w, const RefineConfig& cfg);
RefineResult refine_dual(const ProblemData& p, const WarmStart& w, const RefineConfig& cfg);

// Line search improving the incumbent feasible dual vector toward a
// candidate with a better objective; never leaves the cone.
struct MergeResult {
    Eigen::VectorXd y;
    BlockVec z;
};
MergeResult merge_dual(const ProblemData& p, const Eigen::VectorXd& y_tmp,
                       const Eigen::VectorXd& ybar, double membership_tol);

// Final extraction: y* maximizes b'y among pooled duals whose slack passes
// the membership tolerance; when none does, the bar drops to the warm
// start's own interiority so the result is never worse than what came in.
// The incumbent wins ties upward, and x* minimizes the merit against y*.
struct Selected {
    BlockVec x;
    Eigen::VectorXd y;
    BlockVec z;
};
Selected select_best(const std::vector<BlockVec>& sol_p,
                     const std::vector<Eigen::VectorXd>& sol_d, const Eigen::VectorXd& y0,
                     const std::optional<Eigen::VectorXd>& ybar, const ProblemData& p,
                     double membership_tol = 1e-12);

// Two-stage driver: nudges a boundary warm component into the interior,
// orders the stages accordingly, threads the triple through both stages, and
// stops early on a certificate.
RefineResult postprocess(const ProblemData& p, const WarmStart& w, const RefineConfig& cfg);

}  // namespace scref
