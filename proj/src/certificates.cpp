#include "scref/certificates.hpp"

#include <cmath>

namespace scref {

namespace {
constexpr double kTol = 1e-12;
}

const char* cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::ReducingDirPrimal: return "reducing_direction_primal";
        case CertKind::ImprovingRayDual: return "improving_ray_dual";
        case CertKind::ReducingDirDual: return "reducing_direction_dual";
        case CertKind::ImprovingRayPrimal: return "improving_ray_primal";
        case CertKind::None: break;
    }
    return "none";
}

RayClass classify_direction(double t, double obj, double lmin, double nrm) {
    if (std::abs(t) > kTol) return RayClass::None;
    if (std::abs(obj) <= kTol) {
        if (lmin >= -kTol && nrm > kTol) return RayClass::Reducing;
        return RayClass::None;
    }
    if (obj < -kTol && lmin / (-obj) >= -kTol) return RayClass::Improving;
    return RayClass::None;
}

KernelInterp interpret_kernel_point(const BlockVec& w, const ProblemData& p) {
    const SplitDiag2 parts = split_diag2(w);
    const double tau = parts.a;
    const BlockVec& x = parts.head;
    const double cx = inner(p.c, x);

    KernelInterp out;
    const RayClass rc = classify_direction(tau, cx, lambda_min(x), norm_fro(x));
    if (rc != RayClass::None) {
        out.kind = KernelInterp::Kind::Cert;
        out.cert.kind = (rc == RayClass::Reducing) ? CertKind::ReducingDirDual
                                                   : CertKind::ImprovingRayPrimal;
        out.cert.x = x;
        out.cert.objective = cx;
        return out;
    }
    if (tau > kTol) {
        out.kind = KernelInterp::Kind::PrimalPoint;
        out.x = (1.0 / tau) * x;
        out.objective = inner(p.c, out.x);
        return out;
    }
    return out;
}

RangeInterp interpret_range_point(const BlockVec& s, const ProjectorPair& pp_hom,
                                  const ProblemData& p) {
    const Eigen::VectorXd q = recover_multipliers(pp_hom, svec(s));
    const int m = static_cast<int>(q.size()) - 1;
    const Eigen::VectorXd y_raw = q.head(m);
    const double gamma = q[m];
    const double kappa = split_diag2(s).b;

    RangeInterp out;
    if (std::abs(gamma - kappa) > 1e-10 * std::max(1.0, norm_inf(s)))
        return out;

    const BlockVec aty = p.a.adjoint(y_raw);
    const double by = p.b.dot(y_raw);
    const RayClass rc = classify_direction(gamma, by, lambda_min(aty), norm_fro(aty));
    if (rc != RayClass::None) {
        out.kind = RangeInterp::Kind::Cert;
        out.cert.kind = (rc == RayClass::Reducing) ? CertKind::ReducingDirPrimal
                                                   : CertKind::ImprovingRayDual;
        out.cert.f = -y_raw;
        out.cert.face = aty;
        out.cert.objective = -by;
        return out;
    }
    if (gamma > kTol) {
        out.kind = RangeInterp::Kind::DualPoint;
        out.y = (-1.0 / gamma) * y_raw;
        out.z = p.dual_slack(out.y);
        out.objective = p.b.dot(out.y);
        return out;
    }
    return out;
}

}  // namespace scref
