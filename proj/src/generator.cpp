#include "scref/generator.hpp"

#include <random>

#include "scref/errors.hpp"

namespace scref {

namespace {

using Rng = std::mt19937_64;

Eigen::MatrixXd random_symmetric(Rng& rng, int n) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            m(i, j) = g(rng);
            m(j, i) = m(i, j);
        }
    return m;
}

BlockVec random_element(Rng& rng, const ConeShape& shape) {
    std::normal_distribution<double> g;
    BlockVec v = BlockVec::zero(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const Block& blk = shape.blocks()[b];
        if (blk.kind == BlockKind::Diag) {
            for (int i = 0; i < blk.size; ++i) v.blocks[b](i, 0) = g(rng);
        } else {
            v.blocks[b] = random_symmetric(rng, blk.size);
        }
    }
    return v;
}

// Orthonormal eigenframes of a random symmetric element, one per block.
std::vector<Eigen::MatrixXd> random_frames(Rng& rng, const ConeShape& shape) {
    std::vector<Eigen::MatrixXd> frames;
    for (const Block& blk : shape.blocks()) {
        if (blk.kind == BlockKind::Diag) {
            frames.emplace_back();
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(random_symmetric(rng, blk.size));
            frames.push_back(es.eigenvectors());
        }
    }
    return frames;
}

BlockVec from_frame_eigenvalues(const ConeShape& shape,
                                const std::vector<Eigen::MatrixXd>& frames,
                                const std::vector<Eigen::VectorXd>& lambda) {
    BlockVec v = BlockVec::zero(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) {
        if (shape.blocks()[b].kind == BlockKind::Diag)
            v.blocks[b].col(0) = lambda[b];
        else
            v.blocks[b] = frames[b] * lambda[b].asDiagonal() * frames[b].transpose();
    }
    return v;
}

Eigen::VectorXd random_vector(Rng& rng, int n) {
    std::normal_distribution<double> g;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = g(rng);
    return v;
}

GeneratedInstance gen_known_optimal(Rng& rng, const ConeShape& shape, int m) {
    const int rbar = shape.rank();
    const auto frames = random_frames(rng, shape);
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::bernoulli_distribution coin(0.5);

    // Complementary partition of the eigenvalue slots.
    std::vector<Eigen::VectorXd> lx, lz;
    std::vector<std::pair<int, int>> slots;
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const int n = shape.blocks()[b].size;
        lx.push_back(Eigen::VectorXd::Zero(n));
        lz.push_back(Eigen::VectorXd::Zero(n));
        for (int i = 0; i < n; ++i) slots.push_back({b, i});
    }
    int nx = 0;
    for (const auto& [b, i] : slots) {
        if (coin(rng)) {
            lx[b][i] = mag(rng);
            ++nx;
        } else {
            lz[b][i] = mag(rng);
        }
    }
    if (nx == 0) {
        const auto& [b, i] = slots.front();
        lx[b][i] = mag(rng);
        lz[b][i] = 0.0;
        ++nx;
    }
    if (nx == rbar) {
        const auto& [b, i] = slots.back();
        lx[b][i] = 0.0;
        lz[b][i] = mag(rng);
    }

    GeneratedInstance out;
    out.p.cone = shape;
    out.x = from_frame_eigenvalues(shape, frames, lx);
    out.z = from_frame_eigenvalues(shape, frames, lz);

    const BlockVec e = BlockVec::identity(shape);
    const BlockVec x_int = (trace(out.x) / rbar) * e;
    const BlockVec h = x_int - out.x;
    const double hh = inner(h, h);

    out.p.a.domain = shape;
    out.p.a.rows.push_back(e);
    for (int i = 1; i < m; ++i) {
        BlockVec row = random_element(rng, shape);
        if (hh > 1e-12) row -= (inner(row, h) / hh) * h;
        out.p.a.rows.push_back(std::move(row));
    }
    out.y = random_vector(rng, m);
    out.p.b = out.p.a.apply(out.x);
    out.p.c = out.p.a.adjoint(out.y) + out.z;

    out.has_optimal = true;
    out.optimal = out.p.dual_obj(out.y);
    out.has_pair = true;
    return out;
}

GeneratedInstance gen_strong_both(Rng& rng, const ConeShape& shape, int m) {
    const auto frames = random_frames(rng, shape);
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::vector<Eigen::VectorXd> lx, lz;
    for (const Block& blk : shape.blocks()) {
        Eigen::VectorXd vx(blk.size), vz(blk.size);
        for (int i = 0; i < blk.size; ++i) {
            vx[i] = mag(rng);
            vz[i] = mag(rng);
        }
        lx.push_back(vx);
        lz.push_back(vz);
    }

    GeneratedInstance out;
    out.p.cone = shape;
    out.x = from_frame_eigenvalues(shape, frames, lx);
    out.z = from_frame_eigenvalues(shape, frames, lz);
    out.p.a.domain = shape;
    for (int i = 0; i < m; ++i) out.p.a.rows.push_back(random_element(rng, shape));
    out.y = random_vector(rng, m);
    out.p.b = out.p.a.apply(out.x);
    out.p.c = out.p.a.adjoint(out.y) + out.z;
    out.has_pair = true;
    return out;
}

GeneratedInstance gen_weak_primal(Rng& rng, const ConeShape& shape, int m) {
    if (m < 1) throw DimensionMismatch("weak primal generator needs m >= 1");
    const auto frames = random_frames(rng, shape);
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::bernoulli_distribution coin(0.5);

    // Face slots carry the feasible mass; the complement builds the singular
    // constraint that pins every feasible point to the face.
    std::vector<Eigen::VectorXd> lface, lcomp;
    std::vector<std::pair<int, int>> slots;
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const int n = shape.blocks()[b].size;
        lface.push_back(Eigen::VectorXd::Zero(n));
        lcomp.push_back(Eigen::VectorXd::Zero(n));
        for (int i = 0; i < n; ++i) slots.push_back({b, i});
    }
    int nface = 0;
    for (const auto& [b, i] : slots) {
        if (coin(rng)) {
            lface[b][i] = mag(rng);
            ++nface;
        } else {
            lcomp[b][i] = mag(rng);
        }
    }
    if (nface == 0) {
        const auto& [b, i] = slots.front();
        lface[b][i] = mag(rng);
        lcomp[b][i] = 0.0;
        ++nface;
    }
    if (nface == static_cast<int>(slots.size())) {
        const auto& [b, i] = slots.back();
        lface[b][i] = 0.0;
        lcomp[b][i] = mag(rng);
    }

    GeneratedInstance out;
    out.p.cone = shape;
    const BlockVec xhat = from_frame_eigenvalues(shape, frames, lface);
    const BlockVec g = from_frame_eigenvalues(shape, frames, lcomp);

    out.p.a.domain = shape;
    for (int i = 0; i + 1 < m; ++i) out.p.a.rows.push_back(random_element(rng, shape));
    out.p.a.rows.push_back(-g);
    out.p.b = out.p.a.apply(xhat);
    out.p.b[m - 1] = 0.0;

    const Eigen::VectorXd yhat = random_vector(rng, m);
    std::vector<Eigen::VectorXd> lzh;
    for (const Block& blk : shape.blocks()) {
        Eigen::VectorXd v(blk.size);
        for (int i = 0; i < blk.size; ++i) v[i] = mag(rng);
        lzh.push_back(v);
    }
    out.p.c = out.p.a.adjoint(yhat) + from_frame_eigenvalues(shape, frames, lzh);

    out.planted_f = Eigen::VectorXd::Zero(m);
    out.planted_f[m - 1] = 1.0;
    return out;
}

GeneratedInstance gen_ray_primal(Rng& rng, const ConeShape& shape, int m) {
    const auto frames = random_frames(rng, shape);
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::bernoulli_distribution coin(0.5);

    std::vector<Eigen::VectorXd> lray, lint;
    std::vector<std::pair<int, int>> slots;
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const int n = shape.blocks()[b].size;
        lray.push_back(Eigen::VectorXd::Zero(n));
        Eigen::VectorXd vi(n);
        for (int i = 0; i < n; ++i) {
            vi[i] = mag(rng);
            slots.push_back({b, i});
        }
        lint.push_back(vi);
    }
    int nray = 0;
    for (const auto& [b, i] : slots)
        if (coin(rng)) {
            lray[b][i] = mag(rng);
            ++nray;
        }
    if (nray == 0) {
        const auto& [b, i] = slots.front();
        lray[b][i] = mag(rng);
    }

    GeneratedInstance out;
    out.p.cone = shape;
    const BlockVec ray = from_frame_eigenvalues(shape, frames, lray);
    const BlockVec xhat = from_frame_eigenvalues(shape, frames, lint);
    const double rr = inner(ray, ray);

    out.p.a.domain = shape;
    for (int i = 0; i < m; ++i) {
        BlockVec row = random_element(rng, shape);
        row -= (inner(row, ray) / rr) * ray;
        out.p.a.rows.push_back(std::move(row));
    }
    out.p.b = out.p.a.apply(xhat);

    BlockVec c = random_element(rng, shape);
    c -= ((inner(c, ray) + 1.0) / rr) * ray;
    out.p.c = std::move(c);
    out.planted_ray = ray;
    return out;
}

}  // namespace

const char* gen_mode_name(GenMode m) {
    switch (m) {
        case GenMode::KnownOptimal: return "known_optimal";
        case GenMode::StrongBoth: return "strong_both";
        case GenMode::WeakPrimal: return "weak_primal";
        case GenMode::RayPrimal: return "ray_primal";
    }
    return "unknown";
}

GeneratedInstance generate_instance(const ConeShape& shape, int m, std::uint64_t seed,
                                    GenMode mode) {
    if (m < 1) throw DimensionMismatch("generator needs m >= 1");
    Rng rng(seed);
    switch (mode) {
        case GenMode::KnownOptimal: return gen_known_optimal(rng, shape, m);
        case GenMode::StrongBoth: return gen_strong_both(rng, shape, m);
        case GenMode::WeakPrimal: return gen_weak_primal(rng, shape, m);
        case GenMode::RayPrimal: return gen_ray_primal(rng, shape, m);
    }
    throw DimensionMismatch("unknown generator mode");
}

}  // namespace scref
