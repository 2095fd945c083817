#pragma once

// Euclidean Jordan algebra of a product cone: each factor is either a dense
// real symmetric PSD block or a nonnegative diagonal block.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "scref/errors.hpp"

namespace scref {

enum class BlockKind { Psd, Diag };

struct Block {
    BlockKind kind;
    int size;
    bool operator==(const Block&) const = default;
};

class ConeShape {
  public:
    ConeShape() = default;
    explicit ConeShape(std::vector<Block> blocks);

    // Parses "s3 s2 d4" style descriptions: sN = PSD block, dN = diagonal block.
    static ConeShape parse(const std::string& text);

    const std::vector<Block>& blocks() const { return blocks_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }

    // Total rank (sum of block sizes) and total svec dimension.
    int rank() const { return rank_; }
    int vec_dim() const { return vec_dim_; }

    // Offset of block b inside an svec vector.
    int svec_offset(int b) const { return offsets_[b]; }

    // Shape of the homogenized cone: this cone times a diagonal 2-block.
    ConeShape homogenized() const;

    std::string to_string() const;
    bool operator==(const ConeShape&) const;

  private:
    std::vector<Block> blocks_;
    std::vector<int> offsets_;
    int rank_ = 0;
    int vec_dim_ = 0;
};

// One algebra element: a dense symmetric matrix per PSD block, an n-by-1
// column per diagonal block.
struct BlockVec {
    std::vector<Eigen::MatrixXd> blocks;

    static BlockVec zero(const ConeShape& shape);
    static BlockVec identity(const ConeShape& shape);

    int num_blocks() const { return static_cast<int>(blocks.size()); }

    BlockVec& operator+=(const BlockVec& rhs);
    BlockVec& operator-=(const BlockVec& rhs);
    BlockVec& operator*=(double s);
};

BlockVec operator+(BlockVec lhs, const BlockVec& rhs);
BlockVec operator-(BlockVec lhs, const BlockVec& rhs);
BlockVec operator*(double s, BlockVec v);
BlockVec operator*(BlockVec v, double s);
BlockVec operator-(BlockVec v);

bool is_diag_block(const Eigen::MatrixXd& m);

// Trace inner product; on PSD blocks this is the Frobenius inner product.
double inner(const BlockVec& a, const BlockVec& b);
double trace(const BlockVec& a);
double norm_fro(const BlockVec& a);

// x o y, the Jordan product: (XY + YX)/2 on PSD blocks, elementwise on
// diagonal blocks.
BlockVec jordan_product(const BlockVec& a, const BlockVec& b);

// Quadratic representation Q_v(x) = 2 v o (v o x) - (v o v) o x, which is
// V X V on PSD blocks and v.^2 .* x on diagonal blocks.
BlockVec quad_rep(const BlockVec& v, const BlockVec& x);

// Symmetric vectorization with sqrt(2)-scaled off-diagonals, so that
// svec(a) . svec(b) == inner(a, b). PSD blocks are laid out by rows of the
// upper triangle; diagonal blocks keep their entry order.
Eigen::VectorXd svec(const BlockVec& a);
BlockVec smat(const ConeShape& shape, const Eigen::VectorXd& v);

// Eigenvalues sorted descending per block, with an orthonormal eigenvector
// frame. Diagonal blocks carry the sorting permutation as their frame.
struct SpectralDecomp {
    std::vector<Eigen::VectorXd> eigenvalues;
    std::vector<Eigen::MatrixXd> eigenvectors;
    std::vector<BlockKind> kinds;

    double lambda_min() const;
    double norm_inf() const;  // largest |eigenvalue|
    double trace() const;
    double sum_abs() const;   // sum of |eigenvalue|, the spectral 1-norm
    double det_log() const;   // sum of log|eigenvalue|

    // Rank-one idempotent for eigenvalue `index` of block `block`, embedded
    // as a full-size element (other blocks zero).
    BlockVec idempotent(int block, int index) const;

    // Element with the same frame and eigenvalues f(lambda_i).
    BlockVec map_eigenvalues(const std::function<double(double)>& f) const;

    // Element with the same frame and the given per-block eigenvalues.
    BlockVec recombine(const std::vector<Eigen::VectorXd>& coefs) const;
};

SpectralDecomp spectral(const BlockVec& a);

double lambda_min(const BlockVec& a);
double norm_inf(const BlockVec& a);

enum class ConeStatus { Interior, Boundary, Outside };
ConeStatus cone_status(const BlockVec& a, double tol = 1e-12);

// x^{-1/2}; requires lambda_min(x) > 0.
BlockVec inv_sqrt(const BlockVec& a);
BlockVec sqrt_element(const BlockVec& a);
BlockVec inverse(const BlockVec& a);

// Plumbing for homogenized elements (x, tau, rho): the base element plus a
// trailing diagonal 2-block.
BlockVec append_diag2(const BlockVec& head, double a, double b);
struct SplitDiag2 {
    BlockVec head;
    double a = 0.0;
    double b = 0.0;
};
SplitDiag2 split_diag2(const BlockVec& w);

}  // namespace scref
