#pragma once

// Seeded random instances with planted structure: a complementary optimal
// pair, strict interior on both sides, a weakly feasible primal with a
// planted reducing direction, or an unbounded primal with a planted
// improving ray.

#include <cstdint>

#include "scref/operators.hpp"
#include "scref/refine.hpp"

namespace scref {

enum class GenMode { KnownOptimal, StrongBoth, WeakPrimal, RayPrimal };
const char* gen_mode_name(GenMode m);

struct GeneratedInstance {
    ProblemData p;
    bool has_optimal = false;
    double optimal = 0.0;
    // KnownOptimal: a complementary optimal pair. StrongBoth: a strictly
    // feasible (not optimal) pair. Other modes: unset.
    bool has_pair = false;
    BlockVec x;
    Eigen::VectorXd y;
    BlockVec z;
    // WeakPrimal: planted f with b'f = 0 and -A*f in K.
    // RayPrimal: planted ray in K with A ray = 0 and <c, ray> < 0.
    Eigen::VectorXd planted_f;
    BlockVec planted_ray;
};

GeneratedInstance generate_instance(const ConeShape& shape, int m, std::uint64_t seed,
                                    GenMode mode);

}  // namespace scref
