#pragma once

// Explicit (n, n-2, 2) MDS array codes attaining the optimal repair bandwidth
// or repair I/O, together with the repair matrices each construction
// designates, and a dispatcher choosing the right family for (q, n, metric).
//
// Two coordinate models are used:
//  * orbit model: F_q^4 = E + E with E = GF(q^2) in the basis {1, xi}, where
//    xi is a primitive element of E and A is multiplication by xi;
//  * cyclic model: F_q^4 = F_q^2 + F_q^2 with a matrix T whose projective
//    class has order q+1, labelling P^1 by t <-> [T]^t p_0.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mds22/code.hpp"
#include "mds22/formulas.hpp"

namespace mds22 {

// A code plus, for every node, the 2x4 repair matrix the construction
// designates for it (normalized so that M H_i = I).
struct Construction {
    ArrayCode code;
    std::vector<Mat> repair;
    std::string family;
    // Field-element parameters chosen by the construction (by encoding).
    std::map<std::string, long long> params;
};

// Multiplication-by-xi model of GF(q^2) over GF(q).
struct OrbitContext {
    Field f;
    std::uint32_t xi = 0;  // encoding inside QuadExt(f)
    Elem sigma = 0, tau = 0;  // A^2 = sigma A + tau I
    Mat A;                    // [[0, tau], [1, sigma]]
    std::vector<Mat> x;       // x_t = A^t (1,0)^T for t = 0..q, as 2x1

    static OrbitContext make(const Field& f);
    // id + (sigma/tau) A.
    Mat B() const;
    // Label t of the projective point of a non-zero 2x1 vector.
    int label(const Mat& v) const;
};

// Matrix T = [[0, -c], [1, c]] with T^2 = cT - cI realizing multiplication by
// theta = eta + 1, eta = xi^(q-1).
struct CyclicT {
    Field f;
    Elem c = 0;
    Mat T;
    std::vector<Mat> p;  // p_t = T^t (0,1)^T for t = 0..q, as 2x1

    static CyclicT make(const Field& f);
    int q1() const { return static_cast<int>(p.size()); }  // q + 1
    const Mat& point(int t) const;                          // label taken mod q+1
    int label(const Mat& v) const;
};

// Node and repair subspaces of the cyclic model, as 4x2 column bases.
Mat L1(const CyclicT& ct, int x, int y);  // span{(p_x,0), (0,p_y)}
Mat L2(const CyclicT& ct, int x, int y);  // span{(p_x,0), (p_y,p_y)}
Mat L3(const CyclicT& ct, int x, int y);  // span{(0,p_x), (p_y,p_y)}
Mat graph(const Mat& M);                  // {(Mv, v)} = column span of [M; I]
// W_1 = F^2+0, W_2 = 0+F^2, W_3 = graph(I), W_4 = graph(T); k in 1..4.
Mat cyclic_repair_subspace(const CyclicT& ct, int k);

// Orbit-model templates at x (2x1): H_z(x) for z in 1..4 and the I/O column
// templates K_z(x) for z in 1..3, and the repair subspaces W_z.
Mat orbit_bw_template(const OrbitContext& oc, int z, const Mat& x);
Mat orbit_io_template(const OrbitContext& oc, int z, const Mat& x);
Mat orbit_repair_subspace(const OrbitContext& oc, int z);

// Labels of each orbit class in the short endpoint families.
std::array<std::vector<int>, 4> short_bw_index_sets(int q);
std::array<std::vector<int>, 3> short_io_index_sets(int q);
// Balanced retention: sizes g_z summing to n with max g_z = ceil(n/k),
// subject to g_z <= capacity_z.
std::vector<int> balanced_sizes(int n, const std::vector<int>& capacity);

Construction construct_short_bw(int q, int n);
Construction construct_short_io(int q, int n);

// Long-length endpoint skeletons as (node basis, designated W index) pairs.
struct SkeletonNode {
    Mat basis;
    int repair = 0;  // index k of W_k
};
std::vector<SkeletonNode> long_bw_skeleton(const CyclicT& ct);
std::vector<SkeletonNode> long_io_skeleton(const CyclicT& ct);

Construction construct_long_bw(int q, int n);
Construction construct_long_io(int q, int n);
Construction construct_gap_mod0(int q);

Construction construct_n6(int q);
Construction construct_n5(int q);

// Parameters of the 10-node template: blocks [I; lambda T_a] for lambda in
// Lambda_a, then [I; 0] and [0; I].
struct TemplateParams {
    Field f;
    Mat C;
    std::array<Mat, 4> T;
    std::array<std::vector<Elem>, 4> lambda;  // sorted root sets of det(I + x C T_a)
    std::string family;                       // even / char3 / odd / odd_explicit
    std::map<std::string, long long> params;
};
// Parameter families; each raises InvalidArgument when some det(I + x C T_a)
// lacks two distinct roots.
TemplateParams template_params_even(const Field& f, Elem s);
TemplateParams template_params_char3(const Field& f, Elem s);
TemplateParams template_params_odd(const Field& f, Elem c);
// Normal form fixed by (c, d) with an explicit C.
TemplateParams template_params_cd(const Field& f, Elem c, Elem d, const Mat& C);
// Witness-backed choice for q: printed witnesses for q in {7, 11, 25, 27,
// 32, 81}, otherwise the smallest parameter found by search_witness.
TemplateParams template_params(int q);
// Builds the code for explicit parameters; raises NotMds when the template
// conditions fail.
Construction template_code(const TemplateParams& tp);
Construction construct_n9_n10(int q, int n);

Construction construct_n4_io(int q);
Construction construct_spread_q2_n5();

enum class Route {
    ShortBW,
    ShortIO,
    LongBW,
    LongIO,
    Gap,
    N5,
    N6,
    Template,
    N4IO,
    Spread,
    Unconstructible,
};
const char* route_name(Route r);
Route plan_route(int q, int n, Metric metric);

// Code attaining the optimum of `metric` at (q, n). Raises Unconstructible
// (carrying the formula value) when no in-house route covers the length.
Construction construct_optimal(int q, int n, Metric metric);

std::string to_json(const Construction& c, int indent = -1);

}  // namespace mds22
