#pragma once

// Exact per-node repair bandwidth (beta_i) and repair I/O (gamma_i).
//
// Three independent evaluators are provided:
//  * matrix:    enumerate all q^4 repair matrices normalized by M H_i = I.
//  * subspace:  enumerate every 2-dimensional W <= F^4 once per code; a
//               candidate for node i is any W skew to Col(H_i), scored by
//               sum_j dim(W ∩ Col H_j) (bandwidth) or by the number of block
//               columns lying in W (I/O).
//  * incidence: only the subspaces that can beat the trivial score 2 are
//               visited. A W meeting two helpers is spanned by one point of
//               each, and a W containing two helper columns is spanned by
//               them, so lines through pairs of helper points (or columns)
//               together with W = Col(H_j) cover every optimum. Cost grows
//               like n^2 q^2 instead of q^4, which keeps q up to 81 tractable.

#include <string>
#include <vector>

#include "mds22/code.hpp"

namespace mds22 {

struct HelperTally {
    int helper = 0;  // 0-based node index
    int rank = 0;    // rank(M H_j)
    int nz = 0;      // number of non-zero columns of M H_j
};

struct RepairScheme {
    int node = 0;
    Mat matrix;   // 2x4, normalized so that M H_node = I
    Mat kernel;   // 4x2 reduced column echelon basis of ker M
    std::vector<HelperTally> per_helper;
    int bandwidth() const;
    int io() const;
};

struct NodeResult {
    int value = 0;
    RepairScheme witness;
};

enum class Method { Matrix, Subspace, Both, Incidence, Auto };

Method parse_method(const std::string& s);
const char* method_name(Method m);
// Largest q for which Method::Auto runs the two exhaustive evaluators.
constexpr unsigned kAutoExhaustiveMaxQ = 32;

// Build a scheme (with per-helper tallies) from any 2x4 M with M H_i
// invertible; M is renormalized to (M H_i)^{-1} M.
RepairScheme make_scheme(const ArrayCode& c, int node, const Mat& M);
// Repair matrix (N H_i)^{-1} N where N is any 2x4 with kernel W.
Mat repair_matrix_for_subspace(const ArrayCode& c, int node, const Mat& W);

NodeResult beta_node_matrix(const ArrayCode& c, int i);
NodeResult beta_node_subspace(const ArrayCode& c, int i);
NodeResult gamma_node(const ArrayCode& c, int i, Method method);

// Per-node optima for both metrics, computed in one pass per evaluator.
struct NodeOptima {
    std::vector<NodeResult> beta;   // indexed by node
    std::vector<NodeResult> gamma;  // indexed by node
};
NodeOptima optima_matrix(const ArrayCode& c);
NodeOptima optima_subspace(const ArrayCode& c);
NodeOptima optima_incidence(const ArrayCode& c);

struct CostReport {
    int n = 0;
    std::vector<int> beta_i, gamma_i, alpha_i, lambda_i;
    int beta = 0, gamma = 0;
    std::vector<RepairScheme> beta_witness, gamma_witness;
    std::vector<std::string> methods;  // evaluators that actually ran
};

// Runs the requested evaluators; when more than one runs, every per-node
// value must agree or OracleDisagreement is raised.
CostReport cost_report(const ArrayCode& c, Method method = Method::Auto);

std::string to_json(const CostReport& r, int indent = -1);

// Number of 2-dimensional subspaces of F_q^4 visited by the subspace method.
std::uint64_t count_subspaces(const Field& f);

}  // namespace mds22
