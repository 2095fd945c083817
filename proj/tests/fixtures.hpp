#pragma once

// Shared hand-built instances.
//
// ex_weak3: 3x3 semidefinite pair whose primal is feasible only on a face
// (no interior point). Optimal value 1; every f = (0, -k, 0) with k > 0
// satisfies b'f = 0 and -A*f = diag(0, k, 0) in K, exposing the face.
//
// ex_lp2: two-variable linear program min x1 s.t. x1/4 + x2 = 1, x >= 0.
// Optimal value 0 at (0, 1); both sides strongly feasible.

#include "scref/operators.hpp"

namespace fixtures {

inline scref::ProblemData ex_weak3() {
    using namespace scref;
    ProblemData p;
    p.cone = ConeShape({{BlockKind::Psd, 3}});
    p.c = BlockVec::identity(p.cone);

    Eigen::MatrixXd a1(3, 3), a2(3, 3), a3(3, 3);
    a1 << 1, 1, 0,
          1, 0, 0,
          0, 0, 0;
    a2 << 0, 0, 0,
          0, 1, 0,
          0, 0, 0;
    a3 << 0, 0, 1,
          0, 0, 0,
          1, 0, 2;
    p.a.domain = p.cone;
    for (const Eigen::MatrixXd& a : {a1, a2, a3}) {
        BlockVec row;
        row.blocks.push_back(a);
        p.a.rows.push_back(std::move(row));
    }
    p.b.resize(3);
    p.b << 1, 0, 0;
    return p;
}

inline scref::ProblemData ex_lp2() {
    using namespace scref;
    ProblemData p;
    p.cone = ConeShape({{BlockKind::Diag, 2}});
    p.c = BlockVec::zero(p.cone);
    p.c.blocks[0](0, 0) = 1.0;
    BlockVec row = BlockVec::zero(p.cone);
    row.blocks[0](0, 0) = 0.25;
    row.blocks[0](1, 0) = 1.0;
    p.a.domain = p.cone;
    p.a.rows.push_back(std::move(row));
    p.b.resize(1);
    p.b << 1;
    return p;
}

}  // namespace fixtures
