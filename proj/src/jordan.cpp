#include "scref/jordan.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scref {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

ConeShape::ConeShape(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    offsets_.reserve(blocks_.size());
    for (const Block& b : blocks_) {
        if (b.size <= 0) throw DimensionMismatch("cone block size must be positive");
        offsets_.push_back(vec_dim_);
        rank_ += b.size;
        vec_dim_ += (b.kind == BlockKind::Psd) ? b.size * (b.size + 1) / 2 : b.size;
    }
}

ConeShape ConeShape::parse(const std::string& text) {
    std::vector<Block> blocks;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'd'))
            throw DimensionMismatch("bad cone block token: " + tok);
        int n = 0;
        try {
            n = std::stoi(tok.substr(1));
        } catch (const std::exception&) {
            throw DimensionMismatch("bad cone block token: " + tok);
        }
        blocks.push_back({tok[0] == 's' ? BlockKind::Psd : BlockKind::Diag, n});
    }
    if (blocks.empty()) throw DimensionMismatch("empty cone description");
    return ConeShape(std::move(blocks));
}

ConeShape ConeShape::homogenized() const {
    std::vector<Block> blocks = blocks_;
    blocks.push_back({BlockKind::Diag, 2});
    return ConeShape(std::move(blocks));
}

std::string ConeShape::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < blocks_.size(); ++i) {
        if (i) out << ' ';
        out << (blocks_[i].kind == BlockKind::Psd ? 's' : 'd') << blocks_[i].size;
    }
    return out.str();
}

bool ConeShape::operator==(const ConeShape& other) const {
    return blocks_ == other.blocks_;
}

BlockVec BlockVec::zero(const ConeShape& shape) {
    BlockVec v;
    v.blocks.reserve(shape.num_blocks());
    for (const Block& b : shape.blocks()) {
        if (b.kind == BlockKind::Psd)
            v.blocks.push_back(Eigen::MatrixXd::Zero(b.size, b.size));
        else
            v.blocks.push_back(Eigen::MatrixXd::Zero(b.size, 1));
    }
    return v;
}

BlockVec BlockVec::identity(const ConeShape& shape) {
    BlockVec v;
    v.blocks.reserve(shape.num_blocks());
    for (const Block& b : shape.blocks()) {
        if (b.kind == BlockKind::Psd)
            v.blocks.push_back(Eigen::MatrixXd::Identity(b.size, b.size));
        else
            v.blocks.push_back(Eigen::MatrixXd::Ones(b.size, 1));
    }
    return v;
}

BlockVec& BlockVec::operator+=(const BlockVec& rhs) {
    for (size_t i = 0; i < blocks.size(); ++i) blocks[i] += rhs.blocks[i];
    return *this;
}

BlockVec& BlockVec::operator-=(const BlockVec& rhs) {
    for (size_t i = 0; i < blocks.size(); ++i) blocks[i] -= rhs.blocks[i];
    return *this;
}

BlockVec& BlockVec::operator*=(double s) {
    for (Eigen::MatrixXd& m : blocks) m *= s;
    return *this;
}

BlockVec operator+(BlockVec lhs, const BlockVec& rhs) { return lhs += rhs; }
BlockVec operator-(BlockVec lhs, const BlockVec& rhs) { return lhs -= rhs; }
BlockVec operator*(double s, BlockVec v) { return v *= s; }
BlockVec operator*(BlockVec v, double s) { return v *= s; }
BlockVec operator-(BlockVec v) { return v *= -1.0; }

bool is_diag_block(const Eigen::MatrixXd& m) { return m.cols() == 1; }

double inner(const BlockVec& a, const BlockVec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.blocks.size(); ++i)
        s += a.blocks[i].cwiseProduct(b.blocks[i]).sum();
    return s;
}

double trace(const BlockVec& a) {
    double s = 0.0;
    for (const Eigen::MatrixXd& m : a.blocks)
        s += is_diag_block(m) ? m.sum() : m.trace();
    return s;
}

double norm_fro(const BlockVec& a) { return std::sqrt(std::max(0.0, inner(a, a))); }

BlockVec jordan_product(const BlockVec& a, const BlockVec& b) {
    BlockVec out;
    out.blocks.reserve(a.blocks.size());
    for (size_t i = 0; i < a.blocks.size(); ++i) {
        const Eigen::MatrixXd& x = a.blocks[i];
        const Eigen::MatrixXd& y = b.blocks[i];
        if (is_diag_block(x))
            out.blocks.push_back(x.cwiseProduct(y));
        else
            out.blocks.push_back(0.5 * (x * y + y * x));
    }
    return out;
}

BlockVec quad_rep(const BlockVec& v, const BlockVec& x) {
    BlockVec out;
    out.blocks.reserve(v.blocks.size());
    for (size_t i = 0; i < v.blocks.size(); ++i) {
        const Eigen::MatrixXd& vb = v.blocks[i];
        const Eigen::MatrixXd& xb = x.blocks[i];
        if (is_diag_block(vb))
            out.blocks.push_back(vb.cwiseProduct(vb).cwiseProduct(xb));
        else
            out.blocks.push_back(vb * xb * vb);
    }
    return out;
}

Eigen::VectorXd svec(const BlockVec& a) {
    int dim = 0;
    for (const Eigen::MatrixXd& m : a.blocks)
        dim += is_diag_block(m) ? static_cast<int>(m.rows())
                                : static_cast<int>(m.rows() * (m.rows() + 1) / 2);
    Eigen::VectorXd v(dim);
    int k = 0;
    for (const Eigen::MatrixXd& m : a.blocks) {
        if (is_diag_block(m)) {
            v.segment(k, m.rows()) = m.col(0);
            k += static_cast<int>(m.rows());
        } else {
            const int n = static_cast<int>(m.rows());
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    v[k++] = (i == j) ? m(i, j) : kSqrt2 * m(i, j);
        }
    }
    return v;
}

BlockVec smat(const ConeShape& shape, const Eigen::VectorXd& v) {
    if (v.size() != shape.vec_dim())
        throw DimensionMismatch("smat: vector length does not match cone");
    BlockVec out = BlockVec::zero(shape);
    int k = 0;
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const Block& blk = shape.blocks()[b];
        if (blk.kind == BlockKind::Diag) {
            out.blocks[b].col(0) = v.segment(k, blk.size);
            k += blk.size;
        } else {
            Eigen::MatrixXd& m = out.blocks[b];
            for (int i = 0; i < blk.size; ++i)
                for (int j = i; j < blk.size; ++j) {
                    const double x = v[k++];
                    if (i == j) {
                        m(i, i) = x;
                    } else {
                        m(i, j) = x / kSqrt2;
                        m(j, i) = m(i, j);
                    }
                }
        }
    }
    return out;
}

SpectralDecomp spectral(const BlockVec& a) {
    SpectralDecomp d;
    d.eigenvalues.reserve(a.blocks.size());
    d.eigenvectors.reserve(a.blocks.size());
    d.kinds.reserve(a.blocks.size());
    for (const Eigen::MatrixXd& m : a.blocks) {
        if (is_diag_block(m)) {
            const int n = static_cast<int>(m.rows());
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&m](int i, int j) { return m(i, 0) > m(j, 0); });
            Eigen::VectorXd ev(n);
            Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(n, n);
            for (int j = 0; j < n; ++j) {
                ev[j] = m(order[j], 0);
                perm(order[j], j) = 1.0;
            }
            d.eigenvalues.push_back(std::move(ev));
            d.eigenvectors.push_back(std::move(perm));
            d.kinds.push_back(BlockKind::Diag);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
            if (es.info() != Eigen::Success)
                throw EigenFailure("selfadjoint eigensolver did not converge");
            d.eigenvalues.push_back(es.eigenvalues().reverse());
            d.eigenvectors.push_back(es.eigenvectors().rowwise().reverse());
            d.kinds.push_back(BlockKind::Psd);
        }
    }
    return d;
}

double SpectralDecomp::lambda_min() const {
    double lo = std::numeric_limits<double>::infinity();
    for (const Eigen::VectorXd& ev : eigenvalues)
        lo = std::min(lo, ev.minCoeff());
    return lo;
}

double SpectralDecomp::norm_inf() const {
    double hi = 0.0;
    for (const Eigen::VectorXd& ev : eigenvalues)
        hi = std::max(hi, ev.cwiseAbs().maxCoeff());
    return hi;
}

double SpectralDecomp::trace() const {
    double s = 0.0;
    for (const Eigen::VectorXd& ev : eigenvalues) s += ev.sum();
    return s;
}

double SpectralDecomp::sum_abs() const {
    double s = 0.0;
    for (const Eigen::VectorXd& ev : eigenvalues) s += ev.cwiseAbs().sum();
    return s;
}

double SpectralDecomp::det_log() const {
    double s = 0.0;
    for (const Eigen::VectorXd& ev : eigenvalues)
        for (Eigen::Index i = 0; i < ev.size(); ++i) s += std::log(std::abs(ev[i]));
    return s;
}

BlockVec SpectralDecomp::idempotent(int block, int index) const {
    BlockVec out;
    out.blocks.reserve(eigenvalues.size());
    for (size_t b = 0; b < eigenvalues.size(); ++b) {
        const int n = static_cast<int>(eigenvalues[b].size());
        if (kinds[b] == BlockKind::Diag) {
            if (static_cast<int>(b) == block)
                out.blocks.push_back(eigenvectors[b].col(index));
            else
                out.blocks.push_back(Eigen::MatrixXd::Zero(n, 1));
        } else {
            if (static_cast<int>(b) == block) {
                const Eigen::VectorXd q = eigenvectors[b].col(index);
                out.blocks.push_back(q * q.transpose());
            } else {
                out.blocks.push_back(Eigen::MatrixXd::Zero(n, n));
            }
        }
    }
    return out;
}

BlockVec SpectralDecomp::map_eigenvalues(const std::function<double(double)>& f) const {
    std::vector<Eigen::VectorXd> coefs;
    coefs.reserve(eigenvalues.size());
    for (const Eigen::VectorXd& ev : eigenvalues)
        coefs.push_back(ev.unaryExpr(f));
    return recombine(coefs);
}

BlockVec SpectralDecomp::recombine(const std::vector<Eigen::VectorXd>& coefs) const {
    BlockVec out;
    out.blocks.reserve(eigenvalues.size());
    for (size_t b = 0; b < eigenvalues.size(); ++b) {
        if (kinds[b] == BlockKind::Diag) {
            out.blocks.push_back(eigenvectors[b] * coefs[b]);
        } else {
            const Eigen::MatrixXd& v = eigenvectors[b];
            out.blocks.push_back(v * coefs[b].asDiagonal() * v.transpose());
        }
    }
    return out;
}

double lambda_min(const BlockVec& a) { return spectral(a).lambda_min(); }
double norm_inf(const BlockVec& a) { return spectral(a).norm_inf(); }

ConeStatus cone_status(const BlockVec& a, double tol) {
    const double lo = lambda_min(a);
    if (lo < -tol) return ConeStatus::Outside;
    if (lo > tol) return ConeStatus::Interior;
    return ConeStatus::Boundary;
}

BlockVec inv_sqrt(const BlockVec& a) {
    SpectralDecomp d = spectral(a);
    if (d.lambda_min() <= 0.0)
        throw NotInterior("inv_sqrt requires an interior element");
    return d.map_eigenvalues([](double t) { return 1.0 / std::sqrt(t); });
}

BlockVec sqrt_element(const BlockVec& a) {
    SpectralDecomp d = spectral(a);
    if (d.lambda_min() < 0.0)
        throw NotInterior("sqrt requires a cone element");
    return d.map_eigenvalues([](double t) { return std::sqrt(std::max(0.0, t)); });
}

BlockVec inverse(const BlockVec& a) {
    SpectralDecomp d = spectral(a);
    double tiny = 0.0;
    for (const Eigen::VectorXd& ev : d.eigenvalues)
        tiny = std::max(tiny, ev.cwiseAbs().maxCoeff());
    for (const Eigen::VectorXd& ev : d.eigenvalues)
        if (ev.cwiseAbs().minCoeff() <= 1e-300 * std::max(1.0, tiny))
            throw NotInterior("inverse of a singular element");
    return d.map_eigenvalues([](double t) { return 1.0 / t; });
}

BlockVec append_diag2(const BlockVec& head, double a, double b) {
    BlockVec out = head;
    Eigen::MatrixXd tail(2, 1);
    tail << a, b;
    out.blocks.push_back(std::move(tail));
    return out;
}

SplitDiag2 split_diag2(const BlockVec& w) {
    if (w.blocks.empty() || w.blocks.back().rows() != 2 || w.blocks.back().cols() != 1)
        throw DimensionMismatch("split_diag2: trailing block is not a diagonal 2-block");
    SplitDiag2 out;
    out.head.blocks.assign(w.blocks.begin(), w.blocks.end() - 1);
    out.a = w.blocks.back()(0, 0);
    out.b = w.blocks.back()(1, 0);
    return out;
}

}  // namespace scref
