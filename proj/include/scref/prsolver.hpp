#pragma once

// Projection and rescaling solver for the conic feasibility problem
//   find w in L cap int K,   with alternative   s in L-perp cap K \ {0},
// where L is either the kernel or the row range of a given operator matrix.
// The basic procedure runs a von Neumann style scheme on the spectraplex
// {y in K : trace(y) = 1}; when it stalls it emits eigenvalue bounds that
// certify the feasible set is thin along some frame directions, and the
// driver rescales the subspace by the quadratic representation of
//   v = e + sum_h (u_h^{-1/2} - 1) c_h
// to fatten it before trying again.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "scref/jordan.hpp"
#include "scref/operators.hpp"

namespace scref {

struct PrConfig {
    double eps = 1e-16;  // conditioning floor; bounds the number of rescaling rounds
    double xi = 0.25;    // cut acceptance threshold for early iterations
    bool smooth = false; // smoothed averaging update instead of plain von Neumann
};

// Eigenvalue bounds emitted by one stalled round: every feasible w in the
// round's subspace with ||w||_inf <= 1 satisfies <idempotents[h], w> <= bounds[h].
struct CutRecord {
    std::vector<BlockVec> idempotents;
    std::vector<double> bounds;
};

enum class BpStatus { Solution, Alternative, Cut, Exhausted };

struct BpResult {
    BpStatus status = BpStatus::Exhausted;
    BlockVec point;      // Solution: interior point of L cap K; Alternative: y - Py
    CutRecord cut;       // Cut only
    BlockVec scaling;    // Cut only: the rescaling element v
    long iterations = 0;
};

// One run on a fixed subspace. `p_l` is the orthogonal projector onto L in
// svec coordinates; `budget` caps the iteration count.
BpResult basic_procedure(const Eigen::MatrixXd& p_l, const ConeShape& shape,
                         const PrConfig& cfg, long budget);

enum class PrStatus { Feasible, AltFeasible, NoEpsFeasible, IncorrectOutput };
const char* pr_status_name(PrStatus s);

struct PrResult {
    PrStatus status = PrStatus::IncorrectOutput;
    // Feasible: w in the original L cap int K. AltFeasible: s in L-perp cap K,
    // nonzero. Both are descaled back to original coordinates and normalized
    // to unit Frobenius norm.
    BlockVec point;
    // Scaling trail handed in, extended by this call's rounds. cuts[j] was
    // emitted in the round whose subspace had trail[0 .. trail_offset+j-1]
    // applied.
    std::vector<BlockVec> trail;
    std::vector<CutRecord> cuts;
    int trail_offset = 0;
    int rounds = 0;
    long bp_iterations = 0;
    std::string note;
};

// Full solver: repeated basic procedure with rescaling, starting from an
// inherited scaling trail. `m` is the unscaled operator matrix; the feasible
// subspace is ker(m) or range(m') per `model`. Outputs are validated against
// the unscaled subspace (1e-8 relative residual) and the cone (strict
// interior for Feasible; lambda_min >= -1e-12 * ||s||_inf for AltFeasible).
PrResult pr_main(const Eigen::MatrixXd& m, const ConeShape& shape, SubspaceModel model,
                 std::vector<BlockVec> trail, const PrConfig& cfg);

// Iteration budget of one basic procedure call and the round cap of pr_main.
long bp_budget(const ConeShape& shape, double xi);
int max_rounds(const ConeShape& shape, double eps, double xi);

// Euclidean projection onto the spectraplex, used by the smoothed update.
BlockVec project_spectraplex(const BlockVec& w);

}  // namespace scref
