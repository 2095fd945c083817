#pragma once

// File formats: sparse SDPA problem files and a plain-text warm start /
// solution triple format.
//
// Warm start grammar (whitespace separated, sections optional, any order
// after the header):
//   <m> <nblocks> <size_1> ... <size_nblocks>
//   Y  v_1 ... v_m
//   X  <blk> <i> <j> <value> ...
//   Z  <blk> <i> <j> <value> ...
// Sizes are negative for diagonal blocks, matching the problem. Missing
// sections default to x = e, y = 0, z = c.

#include <string>

#include "scref/operators.hpp"
#include "scref/refine.hpp"

namespace scref {

// Sparse SDPA: constraint matrices from entry records, right-hand side from
// the objective vector line, cost matrix from block 0 records. Lines whose
// first nonblank character is '"' or '*' are comments; commas, braces, and
// parentheses are treated as blanks. Negative block sizes declare diagonal
// blocks.
ProblemData parse_sdpa(const std::string& text);
ProblemData parse_sdpa_file(const std::string& path);
std::string write_sdpa(const ProblemData& p);

WarmStart parse_warm_start(const std::string& text, const ProblemData& p);
WarmStart parse_warm_start_file(const std::string& path, const ProblemData& p);
std::string write_warm_start(const ProblemData& p, const BlockVec& x, const Eigen::VectorXd& y,
                             const BlockVec& z);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace scref
