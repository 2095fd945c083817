#include "scref/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "scref/generator.hpp"
#include "scref/io.hpp"
#include "scref/status.hpp"

namespace scref {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int exit_code(RefineExit e) {
    switch (e) {
        case RefineExit::Complete: return 0;
        case RefineExit::CertificateFound: return 2;
        case RefineExit::NumericalError: return 3;
        case RefineExit::TimeOver: return 4;
    }
    return 3;
}

void print_errors(std::ostream& out, const DimacsErrors& e) {
    out << "err1=" << fmt(e.e1) << '\n'
        << "err2=" << fmt(e.e2) << '\n'
        << "err3=" << fmt(e.e3) << '\n'
        << "err4=" << fmt(e.e4) << '\n'
        << "err5=" << fmt(e.e5) << '\n'
        << "err6=" << fmt(e.e6) << '\n';
}

std::string trace_text(const std::vector<TraceRecord>& trace) {
    std::ostringstream out;
    for (const TraceRecord& r : trace) {
        out << "k=" << r.iteration << " stage=" << r.stage
            << " model=" << stage_model_name(r.model) << " theta=" << fmt(r.theta)
            << " status=" << pr_status_name(r.pr_status) << " action=" << r.action
            << " lb=" << fmt(r.lb) << " ub=" << fmt(r.ub) << " rounds=" << r.rounds
            << " bp=" << r.bp_iterations << " sec=" << fmt(r.seconds) << '\n';
    }
    return out.str();
}

struct CommonOpts {
    double theta_acc = 1e-12;
    double eps = 1e-16;
    double xi = 0.25;
    double time_limit = 3600.0;
    bool smooth = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--theta-acc", o.theta_acc, "stop when ub - lb falls below this");
    cmd->add_option("--eps", o.eps, "conditioning floor of the projection solver");
    cmd->add_option("--xi", o.xi, "cut acceptance threshold")->check(CLI::Range(1e-6, 0.999));
    cmd->add_option("--time-limit", o.time_limit, "total time budget in seconds");
    cmd->add_flag("--smooth", o.smooth, "use the smoothed update rule");
}

RefineConfig make_config(const CommonOpts& o, int stages) {
    RefineConfig cfg;
    cfg.theta_acc = o.theta_acc;
    cfg.pr.eps = o.eps;
    cfg.pr.xi = o.xi;
    cfg.pr.smooth = o.smooth;
    cfg.stage_time_limit = o.time_limit / stages;
    return cfg;
}

int cmd_refine(const std::string& file, const std::string& warm_file,
               const std::string& out_file, const std::string& trace_file,
               const std::string& stage, const CommonOpts& opts) {
    const ProblemData p = parse_sdpa_file(file);
    const WarmStart w =
        warm_file.empty() ? cold_start(p) : parse_warm_start_file(warm_file, p);

    RefineResult r;
    if (stage == "primal") {
        r = refine_primal(p, w, make_config(opts, 1));
    } else if (stage == "dual") {
        r = refine_dual(p, w, make_config(opts, 1));
    } else {
        r = postprocess(p, w, make_config(opts, 2));
    }

    std::cout << "problem=" << file << '\n'
              << "exit=" << refine_exit_name(r.exit) << '\n'
              << "cert=" << cert_kind_name(r.cert.kind) << '\n'
              << "primal_obj=" << fmt(p.primal_obj(r.x)) << '\n'
              << "dual_obj=" << fmt(p.dual_obj(r.y)) << '\n'
              << "lb=" << fmt(r.lb) << '\n'
              << "ub=" << fmt(r.ub) << '\n';
    print_errors(std::cout, r.errors);
    std::cout << "iterations=" << r.outer_iterations << '\n'
              << "wall_sec=" << fmt(r.seconds) << '\n';

    if (!out_file.empty()) write_text_file(out_file, write_warm_start(p, r.x, r.y, r.z));
    if (!trace_file.empty()) write_text_file(trace_file, trace_text(r.trace));
    return exit_code(r.exit);
}

int cmd_status(const std::string& file, const std::string& side_name,
               const std::string& out_file, const CommonOpts& opts) {
    const ProblemData p = parse_sdpa_file(file);
    const StatusSide side = (side_name == "primal") ? StatusSide::Primal : StatusSide::Dual;
    const StatusResult rs = run_status(p, side, make_config(opts, 2));

    std::cout << "problem=" << file << '\n'
              << "side=" << status_side_name(side) << '\n'
              << "verdict=" << (rs.strongly_feasible ? "strongly_feasible" : "not_strongly_feasible")
              << '\n'
              << "optimal_value=" << fmt(rs.optimal_value) << '\n'
              << "inner_exit=" << refine_exit_name(rs.inner.exit) << '\n'
              << "cert=" << cert_kind_name(rs.cert.kind) << '\n';
    if (rs.cert.kind == CertKind::ReducingDirPrimal ||
        rs.cert.kind == CertKind::ImprovingRayDual) {
        std::cout << "f=";
        for (int i = 0; i < rs.cert.f.size(); ++i)
            std::cout << (i ? " " : "") << fmt(rs.cert.f[i]);
        std::cout << '\n' << "bf=" << fmt(rs.cert.objective) << '\n';
    }
    if (rs.cert.kind == CertKind::ReducingDirDual ||
        rs.cert.kind == CertKind::ImprovingRayPrimal)
        std::cout << "cx=" << fmt(rs.cert.objective) << '\n';
    std::cout << "iterations=" << rs.inner.outer_iterations << '\n'
              << "wall_sec=" << fmt(rs.inner.seconds) << '\n';

    if (!out_file.empty()) {
        BlockVec x = BlockVec::zero(p.cone);
        Eigen::VectorXd f = Eigen::VectorXd::Zero(p.m());
        BlockVec zf = BlockVec::zero(p.cone);
        if (rs.has_witness) x = rs.witness;
        if (rs.cert.kind == CertKind::ReducingDirDual ||
            rs.cert.kind == CertKind::ImprovingRayPrimal)
            x = rs.cert.x;
        if (rs.cert.kind == CertKind::ReducingDirPrimal ||
            rs.cert.kind == CertKind::ImprovingRayDual) {
            f = rs.cert.f;
            zf = rs.cert.face;
        }
        write_text_file(out_file, write_warm_start(p, x, f, zf));
    }

    if (rs.inner.exit == RefineExit::NumericalError || rs.inner.exit == RefineExit::TimeOver)
        return exit_code(rs.inner.exit);
    return rs.strongly_feasible ? 0 : 2;
}

int cmd_dimacs(const std::string& file, const std::string& warm_file) {
    const ProblemData p = parse_sdpa_file(file);
    const WarmStart w =
        warm_file.empty() ? cold_start(p) : parse_warm_start_file(warm_file, p);
    const DimacsErrors e = dimacs(p, w.x, w.y, w.z);
    std::cout << "problem=" << file << '\n'
              << "primal_obj=" << fmt(p.primal_obj(w.x)) << '\n'
              << "dual_obj=" << fmt(p.dual_obj(w.y)) << '\n';
    print_errors(std::cout, e);
    return 0;
}

int cmd_gen(const std::string& shape_text, int m, unsigned long long seed,
            const std::string& mode_name, const std::string& out_file,
            const std::string& sol_file) {
    GenMode mode = GenMode::KnownOptimal;
    if (mode_name == "strong")
        mode = GenMode::StrongBoth;
    else if (mode_name == "weak-primal")
        mode = GenMode::WeakPrimal;
    else if (mode_name == "ray-primal")
        mode = GenMode::RayPrimal;
    else if (mode_name != "known")
        throw CLI::ValidationError("--mode", "unknown mode " + mode_name);

    const ConeShape shape = ConeShape::parse(shape_text);
    const GeneratedInstance inst = generate_instance(shape, m, seed, mode);

    std::cout << "shape=" << shape.to_string() << '\n'
              << "m=" << m << '\n'
              << "seed=" << seed << '\n'
              << "mode=" << gen_mode_name(mode) << '\n'
              << "has_optimal=" << (inst.has_optimal ? 1 : 0) << '\n';
    if (inst.has_optimal) std::cout << "optimal=" << fmt(inst.optimal) << '\n';

    const std::string text = write_sdpa(inst.p);
    if (out_file.empty())
        std::cout << text;
    else
        write_text_file(out_file, text);
    if (!sol_file.empty() && inst.has_pair)
        write_text_file(sol_file, write_warm_start(inst.p, inst.x, inst.y, inst.z));
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"refinement and feasibility status toolkit for conic programs"};
    app.require_subcommand(1);

    std::string file, warm_file, out_file, trace_file;
    std::string stage = "both";
    std::string side;
    CommonOpts opts;

    CLI::App* refine_cmd = app.add_subcommand("refine", "refine a warm started solution");
    refine_cmd->add_option("problem", file, "sparse problem file")->required();
    refine_cmd->add_option("--warm", warm_file, "warm start file");
    refine_cmd->add_option("--out", out_file, "write the final triple here");
    refine_cmd->add_option("--trace", trace_file, "write per-iteration records here");
    refine_cmd->add_option("--stage", stage, "both, primal, or dual")
        ->check(CLI::IsMember({"both", "primal", "dual"}));
    add_common(refine_cmd, opts);

    CLI::App* status_cmd = app.add_subcommand("status", "test strong feasibility of one side");
    status_cmd->add_option("problem", file, "sparse problem file")->required();
    status_cmd->add_option("--side", side, "primal or dual")
        ->required()
        ->check(CLI::IsMember({"primal", "dual"}));
    status_cmd->add_option("--out", out_file, "write certificate or witness here");
    add_common(status_cmd, opts);

    CLI::App* dimacs_cmd = app.add_subcommand("dimacs", "error measures of a given triple");
    dimacs_cmd->add_option("problem", file, "sparse problem file")->required();
    dimacs_cmd->add_option("--warm", warm_file, "triple to evaluate");

    std::string shape_text = "s3";
    int gen_m = 3;
    unsigned long long seed = 1;
    std::string mode_name = "known";
    std::string sol_file;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random instance");
    gen_cmd->add_option("--shape", shape_text, "cone blocks, e.g. \"s3 d2\"");
    gen_cmd->add_option("--m", gen_m, "number of constraints");
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--mode", mode_name, "known, strong, weak-primal, or ray-primal");
    gen_cmd->add_option("--out", out_file, "problem file to write");
    gen_cmd->add_option("--sol", sol_file, "write the known pair here");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*refine_cmd) return cmd_refine(file, warm_file, out_file, trace_file, stage, opts);
        if (*status_cmd) return cmd_status(file, side, out_file, opts);
        if (*dimacs_cmd) return cmd_dimacs(file, warm_file);
        if (*gen_cmd) return cmd_gen(shape_text, gen_m, seed, mode_name, out_file, sol_file);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace scref
