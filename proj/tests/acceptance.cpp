// Acceptance gate: eight end-to-end checks with pinned tolerances, one
// PASS/FAIL line each. Exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "../tests/fixtures.hpp"
#include "scref/generator.hpp"
#include "scref/io.hpp"
#include "scref/prsolver.hpp"
#include "scref/status.hpp"

using namespace scref;

namespace {

using Clock = std::chrono::steady_clock;

double secs(const Clock::time_point& t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

BlockVec random_blockvec(std::mt19937_64& rng, const ConeShape& shape) {
    std::normal_distribution<double> g;
    BlockVec v = BlockVec::zero(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) {
        Eigen::MatrixXd& m = v.blocks[b];
        if (is_diag_block(m)) {
            for (int i = 0; i < m.rows(); ++i) m(i, 0) = g(rng);
        } else {
            for (int i = 0; i < m.rows(); ++i)
                for (int j = i; j < m.cols(); ++j) {
                    m(i, j) = g(rng);
                    m(j, i) = m(i, j);
                }
        }
    }
    return v;
}

// Direction quality bounds shared by criteria 1 and 4.
bool reducing_direction_ok(const ProblemData& p, const Eigen::VectorXd& f) {
    const double fn = f.norm();
    if (fn <= 1e-30) return false;
    if (std::abs(p.b.dot(f)) > 1e-10 * fn) return false;
    const BlockVec face = -p.a.adjoint(f);
    const double scale = norm_inf(face);
    if (scale <= 1e-30) return false;
    return lambda_min(face) >= -1e-10 * scale;
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
    const auto t0 = Clock::now();
    const ProblemData p = fixtures::ex_weak3();
    RefineConfig cfg;
    const StatusResult rs = run_status(p, StatusSide::Primal, cfg);
    const double elapsed = secs(t0);

    bool ok = !rs.strongly_feasible && rs.cert.kind == CertKind::ReducingDirPrimal;
    std::string detail = "status finds the face-exposing direction";
    if (ok) {
        const Eigen::VectorXd& f = rs.cert.f;
        const double fn = f.norm();
        ok = reducing_direction_ok(p, f);
        const double cosine = -f[1] / fn;
        ok = ok && std::abs(cosine - 1.0) <= 1e-6;
        ok = ok && elapsed <= 5.0;
        detail += " (cos=" + fmt(cosine) + ", " + fmt(elapsed) + " s)";
    } else {
        detail += " (verdict or certificate kind wrong)";
    }
    report(1, ok, detail);
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
    const ProblemData p = fixtures::ex_weak3();
    RefineConfig cfg;
    const RefineResult r = postprocess(p, cold_start(p), cfg);
    const double by = p.dual_obj(r.y);
    const double lmin = lambda_min(p.dual_slack(r.y));
    const bool ok = by >= 1.0 - 1e-6 && by <= 1.0 + 1e-8 && lmin >= -1e-12;
    report(2, ok,
           "cold refinement reaches the optimal dual value (b'y=" + fmt(by) +
               ", lmin=" + fmt(lmin) + ")");
}

// ----------------------------------------------------------- criteria 3 and 5
void criteria3and5() {
    const auto t0 = Clock::now();
    const char* shapes[5] = {"s3", "s4", "s3 d2", "d3 s3", "s5"};
    const int ms[3] = {3, 4, 5};

    int success = 0;
    bool traces_ok = true;
    bool gaps_ok = true;
    int completes = 0;

    for (int i = 0; i < 30; ++i) {
        const GeneratedInstance g = generate_instance(
            ConeShape::parse(shapes[i % 5]), ms[i % 3], 1000 + i, GenMode::KnownOptimal);

        std::mt19937_64 rng(7000 + i);
        std::normal_distribution<double> noise;
        WarmStart w{g.x, g.y, g.z};
        w.x += (1e-3 * std::max(1.0, norm_fro(g.x))) * random_blockvec(rng, g.p.cone);
        w.z += (1e-3 * std::max(1.0, norm_fro(g.z))) * random_blockvec(rng, g.p.cone);
        for (int k = 0; k < w.y.size(); ++k)
            w.y[k] += 1e-3 * std::max(1.0, g.y.norm()) * noise(rng);

        RefineConfig cfg;
        cfg.stage_time_limit = 60.0;
        const RefineResult r = postprocess(g.p, w, cfg);

        const DimacsErrors& e = r.errors;
        if (e.e1 <= 1e-9 && e.e2 <= 1e-9 && e.e3 <= 1e-9 && e.e4 <= 1e-9 &&
            std::abs(e.e5) <= 1e-8 && std::abs(e.e6) <= 1e-8)
            ++success;

        for (const TraceRecord& t : r.trace)
            traces_ok = traces_ok && g.optimal >= t.lb - 1e-9 && g.optimal <= t.ub + 1e-9;
        if (r.exit == RefineExit::Complete) {
            ++completes;
            gaps_ok = gaps_ok && (r.ub - r.lb <= cfg.theta_acc);
        }
    }
    const double elapsed = secs(t0);

    report(3, success >= 28 && elapsed <= 600.0,
           "perturbed warm starts refined to high accuracy (" + std::to_string(success) +
               "/30, " + fmt(elapsed) + " s)");
    report(5, traces_ok && gaps_ok && completes > 0,
           "optimal value stays inside every logged bracket (" + std::to_string(completes) +
               " complete runs)");
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
    const char* shapes[4] = {"s3", "s4", "s3 d2", "s4 d2"};
    int good = 0;
    for (int i = 0; i < 20; ++i) {
        const GeneratedInstance g = generate_instance(ConeShape::parse(shapes[i % 4]),
                                                      2 + (i % 3), 2000 + i, GenMode::WeakPrimal);
        RefineConfig cfg;
        cfg.stage_time_limit = 60.0;
        const StatusResult rs = run_status(g.p, StatusSide::Primal, cfg);
        const bool ok = !rs.strongly_feasible && std::abs(rs.optimal_value - 1.0) <= 1e-8 &&
                        rs.cert.kind == CertKind::ReducingDirPrimal &&
                        reducing_direction_ok(g.p, rs.cert.f);
        if (ok) ++good;
    }
    report(4, good >= 18,
           "weakly feasible instances flagged with usable directions (" +
               std::to_string(good) + "/20)");
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
    const ProblemData p = fixtures::ex_lp2();
    const ConeShape bar = p.cone.homogenized();

    bool ok = true;
    std::string detail;
    {
        const Eigen::MatrixXd m = homogenize(p, 2.0).to_matrix();
        PrConfig cfg;
        const PrResult pr = pr_main(m, bar, SubspaceModel::Kernel, {}, cfg);
        ok = pr.status == PrStatus::Feasible;
        if (ok) {
            const Eigen::VectorXd sv = svec(pr.point);
            ok = (m * sv).norm() <= 1e-10 * sv.norm() && lambda_min(pr.point) > 0.0;
        }
        detail = ok ? "interior kernel point found at the loose cutoff"
                    : "loose cutoff did not yield a validated interior point";
    }
    for (double xi : {0.125, 0.25, 0.5}) {
        for (bool smooth : {false, true}) {
            const Eigen::MatrixXd m = homogenize(p, -1.0).to_matrix();
            PrConfig cfg;
            cfg.xi = xi;
            cfg.smooth = smooth;
            const PrResult pr = pr_main(m, bar, SubspaceModel::Kernel, {}, cfg);
            if (pr.status == PrStatus::Feasible) {
                ok = false;
                detail = "infeasible cutoff produced a kernel point (xi=" + fmt(xi) + ")";
            }
        }
    }
    report(6, ok, detail + "; infeasible cutoff never does");
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(99);
    const ConeShape shape = ConeShape::parse("s3 d2 s2");
    const BlockVec e = BlockVec::identity(shape);

    long checks = 0;
    long bad = 0;
    auto expect = [&](bool cond) {
        ++checks;
        if (!cond) ++bad;
    };

    for (int k = 0; k < 1000; ++k) {
        const BlockVec g = random_blockvec(rng, shape);
        const BlockVec h = random_blockvec(rng, shape);
        const double gs = std::max(1.0, norm_fro(g));
        const double hs = std::max(1.0, norm_fro(h));

        const SpectralDecomp d = spectral(g);
        expect(norm_fro(d.recombine(d.eigenvalues) - g) <= 1e-10 * gs);
        BlockVec sum = BlockVec::zero(shape);
        for (int b = 0; b < shape.num_blocks(); ++b)
            for (int i = 0; i < shape.blocks()[b].size; ++i) {
                const BlockVec c = d.idempotent(b, i);
                sum += c;
                expect(norm_fro(jordan_product(c, c) - c) <= 1e-10);
            }
        expect(norm_fro(sum - e) <= 1e-10);

        expect(std::abs(inner(g, h) - svec(g).dot(svec(h))) <= 1e-12 * gs * hs);
        expect(norm_fro(jordan_product(g, e) - g) <= 1e-12 * gs);
        const BlockVec w = random_blockvec(rng, shape);
        expect(std::abs(inner(jordan_product(g, h), w) - inner(h, jordan_product(g, w))) <=
               1e-10 * gs * hs * std::max(1.0, norm_fro(w)));
        expect(norm_fro(quad_rep(g, e) - jordan_product(g, g)) <= 1e-10 * gs * gs);

        const BlockVec gi = jordan_product(g, g) + 0.1 * e;
        expect(norm_fro(quad_rep(inv_sqrt(gi), gi) - e) <= 1e-10 * std::max(1.0, norm_fro(gi)));
        expect(norm_fro(jordan_product(gi, inverse(gi)) - e) <=
               1e-10 * std::max(1.0, norm_fro(gi)));

        if (k % 20 == 0) {
            LinearMap a;
            a.domain = shape;
            for (int i = 0; i < 3; ++i) a.rows.push_back(random_blockvec(rng, shape));
            Eigen::VectorXd y(3);
            for (int i = 0; i < 3; ++i) y[i] = norm_fro(a.rows[i]);
            expect(std::abs(a.apply(g).dot(y) - inner(g, a.adjoint(y))) <=
                   1e-12 * gs * y.norm() * (1.0 + norm_fro(a.adjoint(y))));

            const ProjectorPair pp = projectors(a.to_matrix());
            const int n = shape.vec_dim();
            expect((pp.p_kernel + pp.p_range - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-10);
            expect((pp.p_kernel * pp.p_kernel - pp.p_kernel).norm() <= 1e-10);
            expect((a.to_matrix() * pp.p_kernel).norm() <=
                   1e-10 * std::max(1.0, a.to_matrix().norm()));
        }
        if (k % 50 == 0) {
            const GeneratedInstance gen = generate_instance(ConeShape::parse("s3 d2"), 3,
                                                            5000 + k, GenMode::KnownOptimal);
            const DimacsErrors de = dimacs(gen.p, gen.x, gen.y, gen.z);
            expect(de.worst() <= 1e-12);
        }
    }
    const double elapsed = secs(t0);
    report(7, bad == 0 && elapsed <= 60.0,
           "algebra and operator invariants hold on random probes (" + std::to_string(checks) +
               " checks, " + std::to_string(bad) + " bad, " + fmt(elapsed) + " s)");
}

// ---------------------------------------------------------------- criterion 8
// Every feasible point of the cutoff problem, pushed through the same scaling
// sequence and normalized to unit infinity norm, must respect every emitted
// eigenvalue bound.
struct CutTally {
    long points = 0;
    long checks = 0;
    long violations = 0;
    long cuts = 0;
};

void check_cuts_on_point(const PrResult& pr, BlockVec w, CutTally& tally) {
    ++tally.points;
    for (size_t i = 0; i < pr.cuts.size(); ++i) {
        const double scale = norm_inf(w);
        const BlockVec wb = (1.0 / scale) * w;
        const CutRecord& cut = pr.cuts[i];
        for (size_t h = 0; h < cut.bounds.size(); ++h) {
            ++tally.checks;
            if (inner(cut.idempotents[h], wb) > cut.bounds[h] + 1e-10) ++tally.violations;
        }
        w = quad_rep(pr.trail[pr.trail_offset + i], w);
    }
}

void criterion8() {
    CutTally tally;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // Hand-built weakly feasible instance: the feasible set at cutoff theta is
    // the exactly known one-parameter family x(t).
    {
        const ProblemData p = fixtures::ex_weak3();
        for (double theta : {1.001, 1.05}) {
            const Eigen::MatrixXd m = homogenize(p, theta).to_matrix();
            PrConfig cfg;
            const PrResult pr = pr_main(m, p.cone.homogenized(), SubspaceModel::Kernel, {}, cfg);
            tally.cuts += static_cast<long>(pr.cuts.size());
            for (int k = 0; k < 2500; ++k) {
                const double t = unif(rng) * std::min(1.0, theta - 1.0);
                BlockVec x = BlockVec::zero(p.cone);
                x.blocks[0] << 1.0, 0.0, -t, 0.0, 0.0, 0.0, -t, 0.0, t;
                check_cuts_on_point(pr, append_diag2(x, 1.0, theta - (1.0 + t)), tally);
            }
        }
    }

    // Generated instance with a known interior segment, sampled with kernel
    // direction perturbations that stay inside the cone.
    {
        const GeneratedInstance g =
            generate_instance(ConeShape::parse("s3"), 3, 777, GenMode::KnownOptimal);
        const ProblemData& p = g.p;
        const BlockVec x_int = (trace(g.x) / 3.0) * BlockVec::identity(p.cone);
        const double cx_int = p.primal_obj(x_int);
        const ProjectorPair ppa = projectors(p.a.to_matrix());

        for (double margin : {1e-3, 1e-1}) {
            const double theta = g.optimal + margin;
            const Eigen::MatrixXd m = homogenize(p, theta).to_matrix();
            PrConfig cfg;
            const PrResult pr = pr_main(m, p.cone.homogenized(), SubspaceModel::Kernel, {}, cfg);
            tally.cuts += static_cast<long>(pr.cuts.size());

            const double smax =
                (cx_int > g.optimal) ? std::min(1.0, margin / (cx_int - g.optimal)) : 1.0;
            int produced = 0;
            while (produced < 2500) {
                const double s = unif(rng) * smax;
                BlockVec x = (1.0 - s) * g.x + s * x_int;
                const double lmin = lambda_min(x);
                if (lmin > 0.0) {
                    Eigen::VectorXd dk = ppa.p_kernel * svec(random_blockvec(rng, p.cone));
                    if (dk.norm() > 1e-12) {
                        x += (0.5 * lmin / dk.norm()) * smat(p.cone, dk);
                    }
                }
                const double rho = theta - p.primal_obj(x);
                if (rho < 0.0 || lambda_min(x) < 0.0) continue;
                check_cuts_on_point(pr, append_diag2(x, 1.0, rho), tally);
                ++produced;
            }
        }
    }

    const bool ok = tally.points == 10000 && tally.cuts >= 1 && tally.violations == 0;
    report(8, ok,
           "no sampled feasible point violates an emitted bound (" +
               std::to_string(tally.points) + " points, " + std::to_string(tally.cuts) +
               " cuts, " + std::to_string(tally.checks) + " checks, " +
               std::to_string(tally.violations) + " violations)");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criteria3and5();
    criterion4();
    criterion6();
    criterion7();
    criterion8();
    return g_failures == 0 ? 0 : 1;
}
