#include "scref/refine.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace scref {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Deterministic bisection fraction; drifts away from 1/2 while consecutive
// incorrect outputs suggest the midpoint keeps hitting a bad cutoff.
double bisection_fraction(int incorrect_chain) {
    if (incorrect_chain <= 0) return 0.5;
    const int step = ((incorrect_chain + 1) / 2 - 1) % 7 + 1;
    const double offset = static_cast<double>(step) / 16.0;
    return (incorrect_chain % 2 == 1) ? 0.5 + offset : 0.5 - offset;
}

struct StageState {
    // Certified bracket: every move is backed by a witness whose own residuals
    // meet bracket_tol, or by an exhausted search. This is what gets logged
    // and returned.
    double lb = -kInf;
    double ub = kInf;
    // Working window steering the bisection. It also moves on rounds whose
    // witness only meets the loose pooling gate, where the cutoff is reliable
    // enough to aim the next probe but not to certify a bound.
    double wlb = -kInf;
    double wub = kInf;
    std::optional<Eigen::VectorXd> ybar;
    std::vector<BlockVec> trail;
    std::vector<BlockVec> sol_p;
    std::vector<Eigen::VectorXd> sol_d;
    int incorrect_chain = 0;
    int noeps_chain = 0;
    int expand_steps = 0;
};

// Scaling that maps the anchor near the identity. A barely interior anchor
// would make the quadratic representation arbitrarily ill conditioned and the
// scaled subspace numerically useless, so the eigenvalues get a relative
// floor before inversion. The floor keeps the round trip through the scaling
// about four digits above machine precision, which is what the bracket gate
// needs from a descaled witness.
BlockVec anchored_scaling(const BlockVec& anchor) {
    const SpectralDecomp d = spectral(anchor);
    const double floor_val = 1e-4 * d.norm_inf();
    const BlockVec reg =
        d.map_eigenvalues([&](double l) { return std::max(l, floor_val); });
    return append_diag2(inv_sqrt(reg), 1.0, 1.0);
}

RefineResult run_stage(const ProblemData& p, const WarmStart& w, const RefineConfig& cfg,
                       StageModel model, int stage_index) {
    const auto t0 = std::chrono::steady_clock::now();
    const ConeShape bar = p.cone.homogenized();
    const SubspaceModel sub =
        (model == StageModel::Primal) ? SubspaceModel::Kernel : SubspaceModel::Range;

    StageState st;
    st.sol_p.push_back(w.x);
    st.sol_d.push_back(w.y);

    const BlockVec slack0 = p.dual_slack(w.y);
    if (lambda_min(slack0) >= -cfg.membership_tol) {
        st.ybar = w.y;
        st.lb = p.dual_obj(w.y);
        st.wlb = st.lb;
    }
    const BlockVec& anchor = (model == StageModel::Primal) ? w.x : w.z;
    if (lambda_min(anchor) > 0.0) st.trail = {anchored_scaling(anchor)};

    const double warm_obj =
        (model == StageModel::Primal) ? p.dual_obj(w.y) : p.primal_obj(w.x);
    const double step0 = std::max(1e-8, 1e-8 * std::abs(warm_obj));
    double theta = (model == StageModel::Primal) ? warm_obj + step0 : warm_obj - step0;
    const double expand_unit = std::max(1.0, std::abs(theta));

    RefineResult out;
    out.exit = RefineExit::Complete;

    auto set_lb = [&](double v) {
        st.lb = std::max(st.lb, v);
        st.wlb = std::max(st.wlb, v);
    };
    auto set_ub = [&](double v) {
        st.ub = std::min(st.ub, v);
        st.wub = std::min(st.wub, v);
    };
    auto steer_lb = [&](double v) { st.wlb = std::max(st.wlb, v); };
    auto steer_ub = [&](double v) { st.wub = std::min(st.wub, v); };

    long k = 0;
    while (true) {
        // The working window is never wider than the certified bracket, so a
        // closed window is the stage's stopping point. The other stage of a
        // two stage run certifies the side this one could only steer on.
        if (st.wub - st.wlb <= cfg.theta_acc) {
            out.exit = RefineExit::Complete;
            break;
        }
        if (seconds_since(t0) > cfg.stage_time_limit) {
            out.exit = RefineExit::TimeOver;
            break;
        }
        if (k >= cfg.max_outer_iterations) {
            out.exit = RefineExit::NumericalError;
            break;
        }

        const LinearMap hom = homogenize(p, theta);
        const Eigen::MatrixXd m = hom.to_matrix();
        const ProjectorPair pph = projectors(m);
        const PrResult pr = pr_main(m, bar, sub, st.trail, cfg.pr);

        std::string action = "incorrect";
        bool noeps = false;
        const double lb_before = st.lb;
        const double ub_before = st.ub;
        const double wlb_before = st.wlb;
        const double wub_before = st.wub;

        // Pooling admits any iterate within accept_tol; a bracket endpoint
        // only moves to a value the witness itself certifies, which needs the
        // much tighter bracket_tol. The solver's own feasibility validation is
        // looser than the bracket, so trusting theta here would let a
        // borderline round drag an endpoint past the true optimal value.
        const double bscale = 1.0 + (p.m() > 0 ? p.b.lpNorm<Eigen::Infinity>() : 0.0);

        auto absorb_primal_point = [&](const KernelInterp& ki) -> bool {
            const double resid = (p.a.apply(ki.x) - p.b).norm();
            const double lmin = lambda_min(ki.x);
            if (resid > cfg.accept_tol || lmin < -cfg.accept_tol) return false;
            st.sol_p.push_back(ki.x);
            steer_ub(theta);
            const bool tight = resid <= cfg.bracket_tol * bscale &&
                               lmin >= -cfg.bracket_tol * (1.0 + norm_inf(ki.x));
            if (tight) set_ub(p.primal_obj(ki.x));
            action = tight ? "primal_point" : "primal_point_loose";
            return true;
        };

        auto absorb_dual_point = [&](const RangeInterp& ri) {
            st.sol_d.push_back(ri.y);
            steer_lb(theta);
            bool tight = lambda_min(ri.z) >= -cfg.bracket_tol * (1.0 + norm_inf(ri.z));
            if (tight) set_lb(p.dual_obj(ri.y));
            if (st.ybar) {
                const MergeResult mg = merge_dual(p, ri.y, *st.ybar, cfg.membership_tol);
                st.ybar = mg.y;
                set_lb(p.dual_obj(mg.y));
                tight = true;
            } else if (lambda_min(ri.z) >= -cfg.membership_tol) {
                st.ybar = ri.y;
                set_lb(p.dual_obj(ri.y));
                tight = true;
            }
            action = tight ? "dual_point" : "dual_point_loose";
        };

        if (model == StageModel::Primal) {
            if (pr.status == PrStatus::Feasible) {
                const KernelInterp ki = interpret_kernel_point(pr.point, p);
                if (ki.kind == KernelInterp::Kind::PrimalPoint && absorb_primal_point(ki)) {
                    if (st.wub - st.wlb <= 1.0)
                        st.trail = pr.trail;
                    else if (lambda_min(ki.x) > 0.0)
                        st.trail = {anchored_scaling(ki.x)};
                }
            } else if (pr.status == PrStatus::AltFeasible) {
                try {
                    const RangeInterp ri = interpret_range_point(pr.point, pph, p);
                    if (ri.kind == RangeInterp::Kind::Cert) {
                        out.exit = RefineExit::CertificateFound;
                        out.cert = ri.cert;
                        action = "certificate";
                    } else if (ri.kind == RangeInterp::Kind::DualPoint &&
                               lambda_min(ri.z) >= -cfg.accept_tol) {
                        absorb_dual_point(ri);
                    }
                } catch (const ResidualTooLarge&) {
                }
            } else if (pr.status == PrStatus::NoEpsFeasible) {
                set_lb(theta);
                noeps = true;
                action = "noeps";
            }
        } else {
            if (pr.status == PrStatus::Feasible) {
                try {
                    const RangeInterp ri = interpret_range_point(pr.point, pph, p);
                    if (ri.kind == RangeInterp::Kind::DualPoint &&
                        lambda_min(ri.z) >= -cfg.accept_tol) {
                        absorb_dual_point(ri);
                        if (st.wub - st.wlb <= 1.0)
                            st.trail = pr.trail;
                        else if (lambda_min(ri.z) > 0.0)
                            st.trail = {anchored_scaling(ri.z)};
                    }
                } catch (const ResidualTooLarge&) {
                }
            } else if (pr.status == PrStatus::AltFeasible) {
                const KernelInterp ki = interpret_kernel_point(pr.point, p);
                if (ki.kind == KernelInterp::Kind::Cert) {
                    out.exit = RefineExit::CertificateFound;
                    out.cert = ki.cert;
                    action = "certificate";
                } else if (ki.kind == KernelInterp::Kind::PrimalPoint) {
                    absorb_primal_point(ki);
                }
            } else if (pr.status == PrStatus::NoEpsFeasible) {
                set_ub(theta);
                noeps = true;
                action = "noeps";
            }
        }

        if (st.lb > st.ub) st.lb = st.ub;
        if (st.wlb > st.wub) st.wlb = st.wub;
        const bool accepted = st.lb != lb_before || st.ub != ub_before ||
                              st.wlb != wlb_before || st.wub != wub_before;

        TraceRecord rec;
        rec.iteration = k;
        rec.stage = stage_index;
        rec.model = model;
        rec.theta = theta;
        rec.pr_status = pr.status;
        rec.action = action;
        rec.lb = st.lb;
        rec.ub = st.ub;
        rec.rounds = pr.rounds;
        rec.bp_iterations = pr.bp_iterations;
        rec.seconds = seconds_since(t0);
        out.trace.push_back(std::move(rec));
        ++k;

        if (out.exit == RefineExit::CertificateFound) break;

        if (accepted || noeps)
            st.incorrect_chain = 0;
        else
            ++st.incorrect_chain;
        if (noeps)
            ++st.noeps_chain;
        else
            st.noeps_chain = 0;
        if (st.incorrect_chain >= cfg.max_consecutive_incorrect ||
            st.noeps_chain >= cfg.max_consecutive_noeps) {
            out.exit = RefineExit::NumericalError;
            break;
        }

        if (std::isfinite(st.wlb) && std::isfinite(st.wub)) {
            st.expand_steps = 0;
            theta = st.wlb + bisection_fraction(st.incorrect_chain) * (st.wub - st.wlb);
        } else if (std::isfinite(st.wub)) {
            theta = st.wub - std::ldexp(expand_unit, st.expand_steps++);
        } else if (std::isfinite(st.wlb)) {
            theta = st.wlb + std::ldexp(expand_unit, st.expand_steps++);
        } else {
            theta += (st.incorrect_chain % 2 == 1 ? 1.0 : -1.0) *
                     st.incorrect_chain * 1e-6 * expand_unit;
        }
    }

    const Selected sel = select_best(st.sol_p, st.sol_d, w.y, st.ybar, p, cfg.membership_tol);
    out.x = sel.x;
    out.y = sel.y;
    out.z = sel.z;
    out.lb = st.lb;
    out.ub = st.ub;
    out.errors = dimacs(p, out.x, out.y, out.z);
    out.outer_iterations = k;
    out.seconds = seconds_since(t0);
    return out;
}

}  // namespace

WarmStart cold_start(const ProblemData& p) {
    WarmStart w;
    w.x = BlockVec::identity(p.cone);
    w.y = Eigen::VectorXd::Zero(p.m());
    w.z = p.c;
    return w;
}

const char* refine_exit_name(RefineExit e) {
    switch (e) {
        case RefineExit::Complete: return "complete";
        case RefineExit::CertificateFound: return "certificate";
        case RefineExit::NumericalError: return "numerical_error";
        case RefineExit::TimeOver: return "time_over";
    }
    return "unknown";
}

const char* stage_model_name(StageModel m) {
    return m == StageModel::Primal ? "primal" : "dual";
}

RefineResult refine_primal(const ProblemData& p, const WarmStart& w, const RefineConfig& cfg) {
    return run_stage(p, w, cfg, StageModel::Primal, 0);
}

RefineResult refine_dual(const ProblemData& p, const WarmStart& w, const RefineConfig& cfg) {
    return run_stage(p, w, cfg, StageModel::Dual, 0);
}

MergeResult merge_dual(const ProblemData& p, const Eigen::VectorXd& y_tmp,
                       const Eigen::VectorXd& ybar, double membership_tol) {
    Eigen::VectorXd best = ybar;
    const double by_bar = p.dual_obj(ybar);
    const double by_tmp = p.dual_obj(y_tmp);

    Eigen::VectorXd d;
    double u = 0.0;
    if (by_bar == by_tmp) {
        return {best, p.dual_slack(best)};
    } else if (by_bar > by_tmp) {
        d = ybar - y_tmp;
        u = 5.0;
    } else {
        d = y_tmp - ybar;
        if (lambda_min(p.dual_slack(y_tmp)) >= -membership_tol) {
            best = y_tmp;
            u = 5.0;
        } else {
            u = 1.0;
        }
    }

    double alpha = u;
    while (p.b.dot(alpha * d) > 1e-16) {
        const Eigen::VectorXd y = best + alpha * d;
        const BlockVec z = p.dual_slack(y);
        if (lambda_min(z) >= -membership_tol) return {y, z};
        alpha *= 0.5;
    }
    return {best, p.dual_slack(best)};
}

Selected select_best(const std::vector<BlockVec>& sol_p,
                     const std::vector<Eigen::VectorXd>& sol_d, const Eigen::VectorXd& y0,
                     const std::optional<Eigen::VectorXd>& ybar, const ProblemData& p,
                     double membership_tol) {
    Selected out;
    double best_by = -kInf;
    bool have = false;
    auto scan = [&](double thresh) {
        for (const Eigen::VectorXd& y : sol_d) {
            const BlockVec z = p.dual_slack(y);
            if (lambda_min(z) < thresh * (1.0 + norm_inf(z))) continue;
            const double by = p.dual_obj(y);
            if (!have || by > best_by) {
                out.y = y;
                best_by = by;
                have = true;
            }
        }
    };
    // A pool gathered from a loosely feasible warm start holds candidates up
    // to that looseness; picking the best objective among them would crown a
    // point as infeasible as the warm start itself. Certified candidates get
    // first refusal, the warm-relative bar is only a fallback.
    scan(-membership_tol);
    if (!have) scan(std::min(lambda_min(p.dual_slack(y0)), 0.0));
    if (!have) {
        out.y = y0;
        best_by = p.dual_obj(y0);
    }
    if (ybar && p.dual_obj(*ybar) >= best_by) out.y = *ybar;
    out.z = p.dual_slack(out.y);

    double best_merit = kInf;
    out.x = sol_p.empty() ? BlockVec::identity(p.cone) : sol_p.front();
    for (const BlockVec& x : sol_p) {
        const double f = merit(p, x, out.y, out.z);
        if (f < best_merit) {
            best_merit = f;
            out.x = x;
        }
    }
    return out;
}

RefineResult postprocess(const ProblemData& p, const WarmStart& w, const RefineConfig& cfg) {
    WarmStart cur = w;
    const double lz = lambda_min(cur.z);
    const double lx = lambda_min(cur.x);

    StageModel first = StageModel::Dual;
    if (lz >= -1e-12) {
        first = StageModel::Dual;
        if (lz <= 0.0)
            cur.z += (-lz + 1e-15) * BlockVec::identity(p.cone);
    } else if (lx >= -1e-12) {
        first = StageModel::Primal;
        if (lx <= 0.0)
            cur.x += (-lx + 1e-15) * BlockVec::identity(p.cone);
    }

    RefineResult s1 = run_stage(p, cur, cfg, first, 1);
    if (s1.exit == RefineExit::CertificateFound) {
        s1.errors = dimacs(p, s1.x, s1.y, s1.z);
        return s1;
    }

    cur.x = s1.x;
    cur.y = s1.y;
    cur.z = p.dual_slack(s1.y);
    const StageModel second =
        (first == StageModel::Dual) ? StageModel::Primal : StageModel::Dual;
    RefineResult s2 = run_stage(p, cur, cfg, second, 2);

    RefineResult out = s2;
    out.trace = std::move(s1.trace);
    out.trace.insert(out.trace.end(), s2.trace.begin(), s2.trace.end());
    out.outer_iterations = s1.outer_iterations + s2.outer_iterations;
    out.seconds = s1.seconds + s2.seconds;
    if (s2.exit == RefineExit::Complete && s1.exit != RefineExit::Complete)
        out.exit = s1.exit;
    return out;
}

}  // namespace scref
