#include "scref/prsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scref {

namespace {

// Euclidean projection onto {x >= 0, sum x = 1}.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double csum = 0.0;
    double tau = 0.0;
    for (int j = 0; j < n; ++j) {
        csum += u[j];
        const double t = (csum - 1.0) / (j + 1);
        if (u[j] - t > 0.0) tau = t;
    }
    return (v.array() - tau).cwiseMax(0.0);
}

struct EigRef {
    int block;
    int index;
};

}  // namespace

const char* pr_status_name(PrStatus s) {
    switch (s) {
        case PrStatus::Feasible: return "feasible";
        case PrStatus::AltFeasible: return "alt_feasible";
        case PrStatus::NoEpsFeasible: return "noeps";
        case PrStatus::IncorrectOutput: return "incorrect";
    }
    return "unknown";
}

BlockVec project_spectraplex(const BlockVec& w) {
    SpectralDecomp d = spectral(w);
    int total = 0;
    for (const Eigen::VectorXd& ev : d.eigenvalues) total += static_cast<int>(ev.size());
    Eigen::VectorXd flat(total);
    int k = 0;
    for (const Eigen::VectorXd& ev : d.eigenvalues) {
        flat.segment(k, ev.size()) = ev;
        k += static_cast<int>(ev.size());
    }
    flat = project_simplex(flat);
    std::vector<Eigen::VectorXd> coefs;
    coefs.reserve(d.eigenvalues.size());
    k = 0;
    for (const Eigen::VectorXd& ev : d.eigenvalues) {
        coefs.push_back(flat.segment(k, ev.size()));
        k += static_cast<int>(ev.size());
    }
    return d.recombine(coefs);
}

long bp_budget(const ConeShape& shape, double xi) {
    long pbar = shape.num_blocks();
    long rmax = 0;
    for (const Block& b : shape.blocks()) rmax = std::max<long>(rmax, b.size);
    return static_cast<long>(std::ceil(static_cast<double>(pbar * pbar * rmax * rmax) / (xi * xi)));
}

int max_rounds(const ConeShape& shape, double eps, double xi) {
    return static_cast<int>(std::ceil(shape.rank() * std::log(1.0 / eps) / std::log(1.0 / xi)));
}

BpResult basic_procedure(const Eigen::MatrixXd& p_l, const ConeShape& shape,
                         const PrConfig& cfg, long budget) {
    const int rbar = shape.rank();
    const double sqrt_rbar = std::sqrt(static_cast<double>(rbar));
    const Eigen::VectorXd ev = svec(BlockVec::identity(shape));
    Eigen::VectorXd yv = ev / rbar;
    double mu = 1.0;

    BpResult out;
    for (long k = 1; k <= budget; ++k) {
        out.iterations = k;
        const Eigen::VectorXd zv = p_l * yv;
        const BlockVec z = smat(shape, zv);
        const SpectralDecomp sdz = spectral(z);
        if (sdz.lambda_min() > 0.0) {
            out.status = BpStatus::Solution;
            out.point = z;
            return out;
        }

        const BlockVec w = smat(shape, yv - zv);
        const SpectralDecomp sdw = spectral(w);
        if (norm_fro(w) > 1e-14 && sdw.lambda_min() >= -1e-14 * sdw.norm_inf()) {
            out.status = BpStatus::Alternative;
            out.point = w;
            return out;
        }

        const SpectralDecomp sdy = spectral(smat(shape, yv));
        const double znorm = zv.norm();
        CutRecord cut;
        for (size_t b = 0; b < sdy.eigenvalues.size(); ++b) {
            for (int i = 0; i < sdy.eigenvalues[b].size(); ++i) {
                const double lam = sdy.eigenvalues[b][i];
                if (lam <= 0.0) continue;
                const double u = sqrt_rbar * znorm / lam;
                const bool accept = (k <= 100) ? (u <= cfg.xi) : (u < 1.0);
                if (accept) {
                    cut.idempotents.push_back(sdy.idempotent(static_cast<int>(b), i));
                    cut.bounds.push_back(u);
                }
            }
        }
        if (!cut.idempotents.empty()) {
            BlockVec v = BlockVec::identity(shape);
            for (size_t h = 0; h < cut.idempotents.size(); ++h)
                v += (1.0 / std::sqrt(cut.bounds[h]) - 1.0) * cut.idempotents[h];
            out.status = BpStatus::Cut;
            out.cut = std::move(cut);
            out.scaling = std::move(v);
            return out;
        }

        if (!cfg.smooth) {
            EigRef lowest{0, 0};
            double lo = std::numeric_limits<double>::infinity();
            for (size_t b = 0; b < sdz.eigenvalues.size(); ++b)
                for (int i = 0; i < sdz.eigenvalues[b].size(); ++i)
                    if (sdz.eigenvalues[b][i] < lo) {
                        lo = sdz.eigenvalues[b][i];
                        lowest = {static_cast<int>(b), i};
                    }
            const Eigen::VectorXd cv = svec(sdz.idempotent(lowest.block, lowest.index));
            const Eigen::VectorXd gv = p_l * cv;
            const Eigen::VectorXd diff = zv - gv;
            const double den = diff.squaredNorm();
            double alpha = (den > 1e-300) ? zv.dot(diff) / den : 0.5;
            alpha = std::clamp(alpha, 0.0, 1.0);
            yv = (1.0 - alpha) * yv + alpha * cv;
        } else {
            const double theta = 2.0 / (static_cast<double>(k) + 2.0);
            const BlockVec u = project_spectraplex(smat(shape, ev / rbar - zv / mu));
            yv = (1.0 - theta) * yv + theta * svec(u);
            mu *= (1.0 - theta);
        }
    }
    out.status = BpStatus::Exhausted;
    return out;
}

PrResult pr_main(const Eigen::MatrixXd& m, const ConeShape& shape, SubspaceModel model,
                 std::vector<BlockVec> trail, const PrConfig& cfg) {
    PrResult out;
    out.trail = std::move(trail);
    out.trail_offset = static_cast<int>(out.trail.size());

    const ProjectorPair pp0 = projectors(m);
    Eigen::MatrixXd s_op = scale_operator(m, shape, out.trail, model);
    const long budget = bp_budget(shape, cfg.xi);
    const int rounds_cap = max_rounds(shape, cfg.eps, cfg.xi);

    for (int round = 0; round < rounds_cap; ++round) {
        const ProjectorPair pps = projectors(s_op);
        const BpResult bp = basic_procedure(pps.onto(model), shape, cfg, budget);
        out.bp_iterations += bp.iterations;
        out.rounds = round + 1;

        if (bp.status == BpStatus::Solution) {
            BlockVec w = descale_feasible(bp.point, out.trail);
            const double nf = norm_fro(w);
            if (!(nf > 0.0) || !std::isfinite(nf)) {
                out.note = "degenerate descaled solution";
                return out;
            }
            w *= 1.0 / nf;
            const Eigen::VectorXd wv = svec(w);
            const double sub_res = (wv - pp0.onto(model) * wv).norm();
            if (lambda_min(w) > 0.0 && sub_res <= 1e-8 * wv.norm()) {
                out.status = PrStatus::Feasible;
                out.point = std::move(w);
                return out;
            }
            out.note = "descaled solution failed validation";
            return out;
        }

        if (bp.status == BpStatus::Alternative) {
            BlockVec s = descale_alternative(bp.point, out.trail);
            const double nf = norm_fro(s);
            if (!(nf > 0.0) || !std::isfinite(nf)) {
                out.note = "degenerate descaled alternative";
                return out;
            }
            s *= 1.0 / nf;
            const Eigen::VectorXd sv = svec(s);
            const Eigen::MatrixXd& p_alt =
                (model == SubspaceModel::Kernel) ? pp0.p_range : pp0.p_kernel;
            const double sub_res = (sv - p_alt * sv).norm();
            const SpectralDecomp sd = spectral(s);
            if (sub_res <= 1e-8 * sv.norm() && sd.lambda_min() >= -1e-12 * sd.norm_inf()) {
                out.status = PrStatus::AltFeasible;
                out.point = std::move(s);
                return out;
            }
            out.note = "descaled alternative failed validation";
            return out;
        }

        if (bp.status == BpStatus::Cut) {
            out.cuts.push_back(bp.cut);
            const BlockVec w =
                (model == SubspaceModel::Kernel) ? inverse(bp.scaling) : bp.scaling;
            s_op = s_op * quad_rep_matrix(shape, w);
            out.trail.push_back(bp.scaling);
            continue;
        }

        out.note = "basic procedure exhausted its budget";
        return out;
    }

    out.status = PrStatus::NoEpsFeasible;
    return out;
}

}  // namespace scref
