// Python bindings for the refinement toolkit. Block vectors cross the
// boundary as lists of 2D row-major nested lists: an n-by-n matrix per PSD
// block, an n-by-1 column per diagonal block.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "scref/generator.hpp"
#include "scref/io.hpp"
#include "scref/metrics.hpp"
#include "scref/refine.hpp"
#include "scref/status.hpp"

namespace py = pybind11;
using namespace scref;

namespace {

using PyMat = std::vector<std::vector<double>>;
using PyBlocks = std::vector<PyMat>;

PyMat mat_out(const Eigen::MatrixXd& m) {
    PyMat out(static_cast<size_t>(m.rows()), std::vector<double>(static_cast<size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

PyBlocks bv_out(const BlockVec& v) {
    PyBlocks out;
    out.reserve(v.blocks.size());
    for (const Eigen::MatrixXd& m : v.blocks) out.push_back(mat_out(m));
    return out;
}

BlockVec bv_in(const ConeShape& shape, const PyBlocks& blocks) {
    if (static_cast<int>(blocks.size()) != shape.num_blocks())
        throw std::invalid_argument("expected " + std::to_string(shape.num_blocks()) +
                                    " blocks, got " + std::to_string(blocks.size()));
    BlockVec v = BlockVec::zero(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) {
        Eigen::MatrixXd& m = v.blocks[b];
        const PyMat& src = blocks[b];
        if (static_cast<int>(src.size()) != m.rows())
            throw std::invalid_argument("block " + std::to_string(b) + ": expected " +
                                        std::to_string(m.rows()) + " rows");
        for (int i = 0; i < m.rows(); ++i) {
            if (static_cast<int>(src[i].size()) != m.cols())
                throw std::invalid_argument("block " + std::to_string(b) + ": expected " +
                                            std::to_string(m.cols()) + " columns");
            for (int j = 0; j < m.cols(); ++j) m(i, j) = src[i][j];
        }
    }
    return v;
}

std::vector<double> vec_out(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vec_in(const std::vector<double>& v, int expected) {
    if (static_cast<int>(v.size()) != expected)
        throw std::invalid_argument("expected a vector of length " + std::to_string(expected) +
                                    ", got " + std::to_string(v.size()));
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<int>(v.size()));
}

py::dict errors_out(const DimacsErrors& e) {
    py::dict d;
    d["e1"] = e.e1;
    d["e2"] = e.e2;
    d["e3"] = e.e3;
    d["e4"] = e.e4;
    d["e5"] = e.e5;
    d["e6"] = e.e6;
    d["worst"] = e.worst();
    return d;
}

py::dict cert_out(const Certificate& c) {
    py::dict d;
    d["kind"] = std::string(cert_kind_name(c.kind));
    d["f"] = vec_out(c.f);
    d["face"] = bv_out(c.face);
    d["x"] = bv_out(c.x);
    d["objective"] = c.objective;
    return d;
}

RefineConfig make_config(double theta_acc, double eps, double xi, bool smooth,
                         double time_limit, int stages) {
    RefineConfig cfg;
    cfg.theta_acc = theta_acc;
    cfg.pr.eps = eps;
    cfg.pr.xi = xi;
    cfg.pr.smooth = smooth;
    cfg.stage_time_limit = time_limit / stages;
    return cfg;
}

WarmStart warm_in(const ProblemData& p, const py::object& x, const py::object& y,
                  const py::object& z) {
    WarmStart w = cold_start(p);
    if (!x.is_none()) w.x = bv_in(p.cone, x.cast<PyBlocks>());
    if (!y.is_none()) w.y = vec_in(y.cast<std::vector<double>>(), p.m());
    if (!z.is_none()) w.z = bv_in(p.cone, z.cast<PyBlocks>());
    return w;
}

py::dict refine_out(const ProblemData& p, const RefineResult& r) {
    py::dict d;
    d["exit"] = std::string(refine_exit_name(r.exit));
    d["x"] = bv_out(r.x);
    d["y"] = vec_out(r.y);
    d["z"] = bv_out(r.z);
    d["lb"] = r.lb;
    d["ub"] = r.ub;
    d["primal_obj"] = p.primal_obj(r.x);
    d["dual_obj"] = p.dual_obj(r.y);
    d["errors"] = errors_out(r.errors);
    d["iterations"] = r.outer_iterations;
    d["seconds"] = r.seconds;
    if (r.exit == RefineExit::CertificateFound) d["cert"] = cert_out(r.cert);
    return d;
}

GenMode mode_in(const std::string& name) {
    if (name == "known") return GenMode::KnownOptimal;
    if (name == "strong") return GenMode::StrongBoth;
    if (name == "weak-primal") return GenMode::WeakPrimal;
    if (name == "ray-primal") return GenMode::RayPrimal;
    throw std::invalid_argument("unknown mode: " + name);
}

StatusSide side_in(const std::string& name) {
    if (name == "primal") return StatusSide::Primal;
    if (name == "dual") return StatusSide::Dual;
    throw std::invalid_argument("unknown side: " + name);
}

}  // namespace

PYBIND11_MODULE(pyscref, m) {
    m.doc() = "Refinement and feasibility status for symmetric cone programs";

    py::class_<ProblemData>(m, "Problem")
        .def_property_readonly("m", &ProblemData::m)
        .def_property_readonly("shape", [](const ProblemData& p) { return p.cone.to_string(); })
        .def_property_readonly("b", [](const ProblemData& p) { return vec_out(p.b); })
        .def_property_readonly("c", [](const ProblemData& p) { return bv_out(p.c); })
        .def("primal_obj",
             [](const ProblemData& p, const PyBlocks& x) {
                 return p.primal_obj(bv_in(p.cone, x));
             },
             py::arg("x"))
        .def("dual_obj",
             [](const ProblemData& p, const std::vector<double>& y) {
                 return p.dual_obj(vec_in(y, p.m()));
             },
             py::arg("y"))
        .def("dual_slack",
             [](const ProblemData& p, const std::vector<double>& y) {
                 return bv_out(p.dual_slack(vec_in(y, p.m())));
             },
             py::arg("y"))
        .def("__repr__", [](const ProblemData& p) {
            return "<Problem shape='" + p.cone.to_string() + "' m=" + std::to_string(p.m()) + ">";
        });

    m.def("parse_problem", [](const std::string& text) { return parse_sdpa(text); },
          py::arg("text"), "Parse a sparse SDPA problem from a string.");
    m.def("load_problem", [](const std::string& path) { return parse_sdpa_file(path); },
          py::arg("path"), "Parse a sparse SDPA problem from a file.");
    m.def("write_problem", [](const ProblemData& p) { return write_sdpa(p); }, py::arg("problem"),
          "Serialize a problem in sparse SDPA format.");

    m.def("cold_start",
          [](const ProblemData& p) {
              const WarmStart w = cold_start(p);
              py::dict d;
              d["x"] = bv_out(w.x);
              d["y"] = vec_out(w.y);
              d["z"] = bv_out(w.z);
              return d;
          },
          py::arg("problem"), "Default starting triple: x = e, y = 0, z = c.");

    m.def("parse_warm",
          [](const std::string& text, const ProblemData& p) {
              const WarmStart w = parse_warm_start(text, p);
              py::dict d;
              d["x"] = bv_out(w.x);
              d["y"] = vec_out(w.y);
              d["z"] = bv_out(w.z);
              return d;
          },
          py::arg("text"), py::arg("problem"), "Parse a warm start triple from a string.");
    m.def("write_warm",
          [](const ProblemData& p, const PyBlocks& x, const std::vector<double>& y,
             const PyBlocks& z) {
              return write_warm_start(p, bv_in(p.cone, x), vec_in(y, p.m()), bv_in(p.cone, z));
          },
          py::arg("problem"), py::arg("x"), py::arg("y"), py::arg("z"),
          "Serialize a solution triple in the warm start format.");

    m.def("refine",
          [](const ProblemData& p, const py::object& x, const py::object& y, const py::object& z,
             double theta_acc, double eps, double xi, bool smooth, double time_limit) {
              const RefineConfig cfg = make_config(theta_acc, eps, xi, smooth, time_limit, 2);
              return refine_out(p, postprocess(p, warm_in(p, x, y, z), cfg));
          },
          py::arg("problem"), py::arg("x") = py::none(), py::arg("y") = py::none(),
          py::arg("z") = py::none(), py::arg("theta_acc") = 1e-12, py::arg("eps") = 1e-16,
          py::arg("xi") = 0.25, py::arg("smooth") = false, py::arg("time_limit") = 3600.0,
          "Two-stage refinement of a warm (or cold) start to high accuracy.");

    m.def("status",
          [](const ProblemData& p, const std::string& side, double theta_acc, double eps,
             double xi, bool smooth, double time_limit) {
              const RefineConfig cfg = make_config(theta_acc, eps, xi, smooth, time_limit, 2);
              const StatusResult r = run_status(p, side_in(side), cfg);
              py::dict d;
              d["side"] = std::string(status_side_name(r.side));
              d["strongly_feasible"] = r.strongly_feasible;
              d["optimal_value"] = r.optimal_value;
              d["inner_exit"] = std::string(refine_exit_name(r.inner.exit));
              if (r.strongly_feasible && r.has_witness) d["witness"] = bv_out(r.witness);
              if (!r.strongly_feasible) d["cert"] = cert_out(r.cert);
              return d;
          },
          py::arg("problem"), py::arg("side"), py::arg("theta_acc") = 1e-12,
          py::arg("eps") = 1e-16, py::arg("xi") = 0.25, py::arg("smooth") = false,
          py::arg("time_limit") = 3600.0,
          "Decide strong feasibility of one side; returns a witness or a certificate.");

    m.def("dimacs",
          [](const ProblemData& p, const PyBlocks& x, const std::vector<double>& y,
             const PyBlocks& z) {
              return errors_out(
                  dimacs(p, bv_in(p.cone, x), vec_in(y, p.m()), bv_in(p.cone, z)));
          },
          py::arg("problem"), py::arg("x"), py::arg("y"), py::arg("z"),
          "Standard scaled error measures of a solution triple.");

    m.def("generate",
          [](const std::string& shape, int m_rows, std::uint64_t seed, const std::string& mode) {
              const GeneratedInstance g =
                  generate_instance(ConeShape::parse(shape), m_rows, seed, mode_in(mode));
              py::dict d;
              d["problem"] = g.p;
              d["has_optimal"] = g.has_optimal;
              if (g.has_optimal) d["optimal"] = g.optimal;
              if (g.has_pair) {
                  d["x"] = bv_out(g.x);
                  d["y"] = vec_out(g.y);
                  d["z"] = bv_out(g.z);
              }
              return d;
          },
          py::arg("shape"), py::arg("m"), py::arg("seed"), py::arg("mode") = "known",
          "Deterministic random instance; modes: known, strong, weak-primal, ray-primal.");
}
