#include "scref/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "scref/errors.hpp"

namespace scref {

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> toks;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '"' || line[first] == '*') continue;
        for (char& ch : line)
            if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == '\r')
                ch = ' ';
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) toks.push_back({tok, lineno});
    }
    return toks;
}

class TokenStream {
  public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

    bool done() const { return pos_ >= toks_.size(); }
    int line() const {
        if (pos_ < toks_.size()) return toks_[pos_].line;
        return toks_.empty() ? 0 : toks_.back().line;
    }
    const std::string& peek() const { return toks_[pos_].text; }
    std::string next(const char* what) {
        if (done()) throw ParseError(std::string("unexpected end of file, expected ") + what,
                                     line());
        return toks_[pos_++].text;
    }
    long next_int(const char* what) {
        const int ln = line();
        const std::string t = next(what);
        try {
            size_t used = 0;
            const long v = std::stol(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string("expected integer for ") + what + ", got '" + t + "'",
                             ln);
        }
    }
    double next_real(const char* what) {
        const int ln = line();
        const std::string t = next(what);
        try {
            size_t used = 0;
            const double v = std::stod(t, &used);
            if (used != t.size() || !std::isfinite(v)) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string("expected number for ") + what + ", got '" + t + "'",
                             ln);
        }
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

ConeShape parse_block_sizes(TokenStream& ts, int nblocks) {
    std::vector<Block> blocks;
    blocks.reserve(nblocks);
    for (int i = 0; i < nblocks; ++i) {
        const long n = ts.next_int("block size");
        if (n == 0) throw ParseError("block size must be nonzero", ts.line());
        blocks.push_back(n > 0 ? Block{BlockKind::Psd, static_cast<int>(n)}
                               : Block{BlockKind::Diag, static_cast<int>(-n)});
    }
    return ConeShape(std::move(blocks));
}

void set_entry(BlockVec& target, const ConeShape& shape, int blk, int i, int j, double value,
               int lineno) {
    if (blk < 1 || blk > shape.num_blocks())
        throw ParseError("block index out of range: " + std::to_string(blk), lineno);
    const Block& b = shape.blocks()[blk - 1];
    if (i < 1 || j < 1 || i > b.size || j > b.size)
        throw ParseError("entry index out of range in block " + std::to_string(blk), lineno);
    Eigen::MatrixXd& m = target.blocks[blk - 1];
    if (b.kind == BlockKind::Diag) {
        if (i != j)
            throw ParseError("off-diagonal entry in diagonal block " + std::to_string(blk),
                             lineno);
        m(i - 1, 0) = value;
    } else {
        m(i - 1, j - 1) = value;
        m(j - 1, i - 1) = value;
    }
}

}  // namespace

ProblemData parse_sdpa(const std::string& text) {
    TokenStream ts(tokenize(text));

    const long m = ts.next_int("number of constraints");
    if (m < 0) throw ParseError("negative constraint count", ts.line());
    const long nblocks = ts.next_int("number of blocks");
    if (nblocks <= 0) throw ParseError("block count must be positive", ts.line());

    ProblemData p;
    p.cone = parse_block_sizes(ts, static_cast<int>(nblocks));
    p.b.resize(m);
    for (long i = 0; i < m; ++i) p.b[i] = ts.next_real("right-hand side entry");

    p.c = BlockVec::zero(p.cone);
    p.a.domain = p.cone;
    p.a.rows.assign(m, BlockVec::zero(p.cone));

    while (!ts.done()) {
        const int lineno = ts.line();
        const long mat = ts.next_int("matrix index");
        const long blk = ts.next_int("block index");
        const long i = ts.next_int("row index");
        const long j = ts.next_int("column index");
        const double v = ts.next_real("entry value");
        if (mat < 0 || mat > m)
            throw ParseError("matrix index out of range: " + std::to_string(mat), lineno);
        BlockVec& target = (mat == 0) ? p.c : p.a.rows[mat - 1];
        set_entry(target, p.cone, static_cast<int>(blk), static_cast<int>(i),
                  static_cast<int>(j), v, lineno);
    }
    return p;
}

ProblemData parse_sdpa_file(const std::string& path) {
    return parse_sdpa(read_text_file(path));
}

namespace {

void write_block_entries(std::ostringstream& out, int mat, const BlockVec& v) {
    char buf[64];
    for (int b = 0; b < v.num_blocks(); ++b) {
        const Eigen::MatrixXd& m = v.blocks[b];
        if (is_diag_block(m)) {
            for (int i = 0; i < m.rows(); ++i)
                if (m(i, 0) != 0.0) {
                    std::snprintf(buf, sizeof buf, "%.17g", m(i, 0));
                    out << mat << ' ' << b + 1 << ' ' << i + 1 << ' ' << i + 1 << ' ' << buf
                        << '\n';
                }
        } else {
            for (int i = 0; i < m.rows(); ++i)
                for (int j = i; j < m.cols(); ++j)
                    if (m(i, j) != 0.0) {
                        std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
                        out << mat << ' ' << b + 1 << ' ' << i + 1 << ' ' << j + 1 << ' ' << buf
                            << '\n';
                    }
        }
    }
}

}  // namespace

std::string write_sdpa(const ProblemData& p) {
    std::ostringstream out;
    out << p.m() << '\n' << p.cone.num_blocks() << '\n';
    for (int b = 0; b < p.cone.num_blocks(); ++b) {
        const Block& blk = p.cone.blocks()[b];
        if (b) out << ' ';
        out << (blk.kind == BlockKind::Psd ? blk.size : -blk.size);
    }
    out << '\n';
    char buf[64];
    for (int i = 0; i < p.m(); ++i) {
        if (i) out << ' ';
        std::snprintf(buf, sizeof buf, "%.17g", p.b[i]);
        out << buf;
    }
    out << '\n';
    write_block_entries(out, 0, p.c);
    for (int i = 0; i < p.m(); ++i) write_block_entries(out, i + 1, p.a.rows[i]);
    return out.str();
}

WarmStart parse_warm_start(const std::string& text, const ProblemData& p) {
    TokenStream ts(tokenize(text));

    const long m = ts.next_int("number of constraints");
    if (m != p.m()) throw ParseError("warm start constraint count does not match problem",
                                     ts.line());
    const long nblocks = ts.next_int("number of blocks");
    const ConeShape shape = parse_block_sizes(ts, static_cast<int>(nblocks));
    if (!(shape == p.cone))
        throw ParseError("warm start cone does not match problem", ts.line());

    WarmStart w = cold_start(p);
    while (!ts.done()) {
        const std::string section = ts.next("section name");
        if (section == "Y") {
            for (long i = 0; i < m; ++i) w.y[i] = ts.next_real("dual entry");
        } else if (section == "X" || section == "Z") {
            BlockVec& target = (section == "X") ? w.x : w.z;
            target = BlockVec::zero(p.cone);
            while (!ts.done() && ts.peek() != "X" && ts.peek() != "Y" && ts.peek() != "Z") {
                const int lineno = ts.line();
                const long blk = ts.next_int("block index");
                const long i = ts.next_int("row index");
                const long j = ts.next_int("column index");
                const double v = ts.next_real("entry value");
                set_entry(target, p.cone, static_cast<int>(blk), static_cast<int>(i),
                          static_cast<int>(j), v, lineno);
            }
        } else {
            throw ParseError("unknown section '" + section + "'", ts.line());
        }
    }
    return w;
}

WarmStart parse_warm_start_file(const std::string& path, const ProblemData& p) {
    return parse_warm_start(read_text_file(path), p);
}

std::string write_warm_start(const ProblemData& p, const BlockVec& x, const Eigen::VectorXd& y,
                             const BlockVec& z) {
    std::ostringstream out;
    out << p.m() << ' ' << p.cone.num_blocks();
    for (const Block& blk : p.cone.blocks())
        out << ' ' << (blk.kind == BlockKind::Psd ? blk.size : -blk.size);
    out << '\n';
    char buf[64];
    out << "Y\n";
    for (int i = 0; i < p.m(); ++i) {
        if (i) out << ' ';
        std::snprintf(buf, sizeof buf, "%.17g", y[i]);
        out << buf;
    }
    out << '\n';
    auto dump = [&](const char* name, const BlockVec& v) {
        out << name << '\n';
        for (int b = 0; b < v.num_blocks(); ++b) {
            const Eigen::MatrixXd& mm = v.blocks[b];
            if (is_diag_block(mm)) {
                for (int i = 0; i < mm.rows(); ++i)
                    if (mm(i, 0) != 0.0) {
                        std::snprintf(buf, sizeof buf, "%.17g", mm(i, 0));
                        out << b + 1 << ' ' << i + 1 << ' ' << i + 1 << ' ' << buf << '\n';
                    }
            } else {
                for (int i = 0; i < mm.rows(); ++i)
                    for (int j = i; j < mm.cols(); ++j)
                        if (mm(i, j) != 0.0) {
                            std::snprintf(buf, sizeof buf, "%.17g", mm(i, j));
                            out << b + 1 << ' ' << i + 1 << ' ' << j + 1 << ' ' << buf << '\n';
                        }
            }
        }
    };
    dump("X", x);
    dump("Z", z);
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace scref
