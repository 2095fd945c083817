#pragma once

// Strong-feasibility status problems. Each side of the conic pair gets a
// bounded embedding whose optimal value separates strongly feasible from
// weakly feasible or infeasible, and whose optimal solutions carry the
// certificate for the degenerate case. The embeddings are solved by the
// refinement pipeline itself, cold started.

#include "scref/refine.hpp"

namespace scref {

enum class StatusSide { Primal, Dual };
const char* status_side_name(StatusSide s);

// Primal side: a minimization over (alpha, beta, gamma, s) in R^3_+ x K whose
// optimal value is always <= 1, equals 1 exactly when (P) has no interior
// feasible point, and goes below 1 otherwise; the dual multipliers at value 1
// give a direction f with -A*f in K that reduces (P) or improves (D).
// Dual side: a minimization over (x, t, w) in K x R^2_+ whose optimal value
// is 0 exactly when (D) has no interior feasible slack; the optimal x is then
// an improving ray of (P) or a reducing direction for (D).
ProblemData build_status_problem(const ProblemData& p, StatusSide side);

struct StatusResult {
    StatusSide side = StatusSide::Primal;
    bool strongly_feasible = false;
    double optimal_value = 0.0;
    Certificate cert;  // set when not strongly feasible
    BlockVec witness;  // primal side, strongly feasible: an interior feasible point of (P)
    bool has_witness = false;
    RefineResult inner;
};

StatusResult run_status(const ProblemData& p, StatusSide side, const RefineConfig& cfg);

// Mapping from a point (x1, x2, x3) of the auxiliary feasibility system onto
// the primal-side status variables; exposed for tests.
struct StatusVars {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    BlockVec s;
};
StatusVars status_vars_from_feasibility_point(const ProblemData& p, double x1, double x2,
                                              const BlockVec& x3);

}  // namespace scref
