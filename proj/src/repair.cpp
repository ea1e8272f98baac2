#include "mds22/repair.hpp"

#include <array>
#include <climits>

#include <json.hpp>

namespace mds22 {

int RepairScheme::bandwidth() const {
    int s = 0;
    for (const auto& h : per_helper) s += h.rank;
    return s;
}

int RepairScheme::io() const {
    int s = 0;
    for (const auto& h : per_helper) s += h.nz;
    return s;
}

Method parse_method(const std::string& s) {
    if (s == "matrix") return Method::Matrix;
    if (s == "subspace") return Method::Subspace;
    if (s == "both") return Method::Both;
    if (s == "incidence") return Method::Incidence;
    if (s == "auto") return Method::Auto;
    raise(Errc::InvalidArgument, "unknown method '" + s + "'");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Matrix: return "matrix";
        case Method::Subspace: return "subspace";
        case Method::Both: return "both";
        case Method::Incidence: return "incidence";
        case Method::Auto: return "auto";
    }
    return "?";
}

std::uint64_t count_subspaces(const Field& f) {
    const std::uint64_t q = f.q();
    return (q * q + 1) * (q * q + q + 1);
}

RepairScheme make_scheme(const ArrayCode& c, int node, const Mat& M) {
    const Mat A = M * c.block(node);
    if (!is_invertible(A)) raise(Errc::Singular, "M H_i is not invertible");
    RepairScheme s;
    s.node = node;
    s.matrix = inverse(A) * M;
    s.kernel = colspace_canonical(kernel_basis(s.matrix));
    for (int j = 0; j < c.n(); ++j) {
        if (j == node) continue;
        const Mat P = s.matrix * c.block(j);
        s.per_helper.push_back({j, rank(P), nz_columns(P)});
    }
    return s;
}

namespace {

// 2x4 matrix whose kernel is the column space of the 4x2 matrix W.
Mat annihilator(const Mat& W) { return kernel_basis(W.transpose()).transpose(); }

void require_mds(const ArrayCode& c) {
    const auto chk = c.check_mds();
    if (!chk.ok)
        raise(Errc::NotMds, "blocks " + std::to_string(chk.i + 1) + " and " + std::to_string(chk.j + 1) +
                                " are not complementary");
}

// Invertible P = [H_i | K] with K taken greedily from the standard basis.
Mat complete_basis(const Mat& H) {
    const Field& f = H.field();
    Mat P = H;
    for (int k = 0; k < 4 && P.cols() < 4; ++k) {
        Mat e(f, 4, 1);
        e(k, 0) = 1;
        Mat trial = hcat(P, e);
        if (rank(trial) == trial.cols()) P = trial;
    }
    return P;
}

using Row2 = std::array<Elem, 2>;
using Row4 = std::array<Elem, 4>;

// Lexicographic comparison of the flattened 4x2 column-echelon basis.
std::array<Elem, 8> flat_w(const Mat& W) {
    std::array<Elem, 8> a{};
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 2; ++col) a[r * 2 + col] = W(r, col);
    return a;
}

}  // namespace

Mat repair_matrix_for_subspace(const ArrayCode& c, int node, const Mat& W) {
    const Mat N = annihilator(W);
    return inverse(N * c.block(node)) * N;
}

NodeOptima optima_matrix(const ArrayCode& c) {
    require_mds(c);
    const Field& f = c.field();
    const unsigned q = f.q();
    const unsigned q2 = q * q;
    const int n = c.n();
    NodeOptima out;
    out.beta.resize(n);
    out.gamma.resize(n);

    for (int i = 0; i < n; ++i) {
        const Mat Pinv = inverse(complete_basis(c.block(i)));
        // For every helper and every choice (a, b) of one row of X, the
        // corresponding row of M H_j = G_top + X G_bot.
        std::vector<int> helpers;
        for (int j = 0; j < n; ++j)
            if (j != i) helpers.push_back(j);
        const std::size_t H = helpers.size();
        std::vector<Row2> row0(H * q2), row1(H * q2);
        for (std::size_t h = 0; h < H; ++h) {
            const Mat G = Pinv * c.block(helpers[h]);
            for (unsigned u = 0; u < q2; ++u) {
                const Elem a = u % q, b = u / q;
                for (int col = 0; col < 2; ++col) {
                    const Elem lin = f.add(f.mul(a, G(2, col)), f.mul(b, G(3, col)));
                    row0[h * q2 + u][col] = f.add(G(0, col), lin);
                    row1[h * q2 + u][col] = f.add(G(1, col), lin);
                }
            }
        }
        // Rows of M = [I | X] P^{-1} for the same parameterization.
        std::vector<Row4> mrow0(q2), mrow1(q2);
        for (unsigned u = 0; u < q2; ++u) {
            const Elem a = u % q, b = u / q;
            for (int col = 0; col < 4; ++col) {
                const Elem lin = f.add(f.mul(a, Pinv(2, col)), f.mul(b, Pinv(3, col)));
                mrow0[u][col] = f.add(Pinv(0, col), lin);
                mrow1[u][col] = f.add(Pinv(1, col), lin);
            }
        }
        auto lex_less = [&](unsigned u, unsigned v, unsigned bu, unsigned bv) {
            if (mrow0[u] != mrow0[bu]) return mrow0[u] < mrow0[bu];
            return mrow1[v] < mrow1[bv];
        };

        int best_b = INT_MAX, best_g = INT_MAX;
        unsigned bu_b = 0, bv_b = 0, bu_g = 0, bv_g = 0;
        for (unsigned u = 0; u < q2; ++u) {
            for (unsigned v = 0; v < q2; ++v) {
                int sb = 0, sg = 0;
                bool pruned = false;
                for (std::size_t h = 0; h < H; ++h) {
                    const Row2& r0 = row0[h * q2 + u];
                    const Row2& r1 = row1[h * q2 + v];
                    sb += rank2(f, r0[0], r0[1], r1[0], r1[1]);
                    sg += nz2(r0[0], r0[1], r1[0], r1[1]);
                    if (sb > best_b && sg > best_g) {
                        pruned = true;
                        break;
                    }
                }
                if (pruned) continue;
                if (sb < best_b || (sb == best_b && lex_less(u, v, bu_b, bv_b))) {
                    best_b = sb;
                    bu_b = u;
                    bv_b = v;
                }
                if (sg < best_g || (sg == best_g && lex_less(u, v, bu_g, bv_g))) {
                    best_g = sg;
                    bu_g = u;
                    bv_g = v;
                }
            }
        }
        auto build = [&](unsigned u, unsigned v) {
            Mat M(f, 2, 4);
            for (int col = 0; col < 4; ++col) {
                M(0, col) = mrow0[u][col];
                M(1, col) = mrow1[v][col];
            }
            return make_scheme(c, i, M);
        };
        out.beta[i] = {best_b, build(bu_b, bv_b)};
        out.gamma[i] = {best_g, build(bu_g, bv_g)};
    }
    return out;
}

namespace {

// Visits every 2-dimensional subspace of F^4 as the row space of a 2x4 RREF
// matrix R. The callback receives R's rows and the annihilator N (2x4 with
// ker N = row space of R).
template <class F>
void for_each_plane(const Field& f, F&& fn) {
    const unsigned q = f.q();
    for (int c1 = 0; c1 < 4; ++c1) {
        for (int c2 = c1 + 1; c2 < 4; ++c2) {
            // Free positions: row 0 at columns > c1 other than c2; row 1 at > c2.
            std::vector<std::pair<int, int>> slots;
            for (int k = c1 + 1; k < 4; ++k)
                if (k != c2) slots.push_back({0, k});
            for (int k = c2 + 1; k < 4; ++k) slots.push_back({1, k});
            std::uint64_t total = 1;
            for (std::size_t s = 0; s < slots.size(); ++s) total *= q;
            std::array<int, 2> freec{};
            int fi = 0;
            for (int k = 0; k < 4; ++k)
                if (k != c1 && k != c2) freec[fi++] = k;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::array<std::array<Elem, 4>, 2> R{};
                R[0][c1] = 1;
                R[1][c2] = 1;
                std::uint64_t t = code;
                for (const auto& [r, k] : slots) {
                    R[r][k] = static_cast<Elem>(t % q);
                    t /= q;
                }
                std::array<std::array<Elem, 4>, 2> N{};
                for (int s = 0; s < 2; ++s) {
                    const int fc = freec[s];
                    N[s][fc] = 1;
                    N[s][c1] = f.neg(R[0][fc]);
                    N[s][c2] = f.neg(R[1][fc]);
                }
                fn(R, N);
            }
        }
    }
}

}  // namespace

NodeOptima optima_subspace(const ArrayCode& c) {
    require_mds(c);
    const Field& f = c.field();
    const int n = c.n();
    std::vector<std::array<Elem, 8>> blocks(n);
    for (int j = 0; j < n; ++j)
        for (int r = 0; r < 4; ++r)
            for (int col = 0; col < 2; ++col) blocks[j][r * 2 + col] = c.block(j)(r, col);

    std::vector<int> max_b(n, -1), max_g(n, -1);
    std::vector<std::array<Elem, 8>> wit_b(n), wit_g(n);
    std::vector<int> rk(n), nzc(n);

    for_each_plane(f, [&](const auto& R, const auto& N) {
        int tot_b = 0, tot_g = 0;
        for (int j = 0; j < n; ++j) {
            const auto& B = blocks[j];
            Elem e[2][2];
            for (int s = 0; s < 2; ++s)
                for (int col = 0; col < 2; ++col) {
                    Elem acc = 0;
                    for (int k = 0; k < 4; ++k)
                        if (N[s][k]) acc = f.add(acc, f.mul(N[s][k], B[k * 2 + col]));
                    e[s][col] = acc;
                }
            rk[j] = rank2(f, e[0][0], e[0][1], e[1][0], e[1][1]);
            nzc[j] = nz2(e[0][0], e[0][1], e[1][0], e[1][1]);
            tot_b += 2 - rk[j];
            tot_g += 2 - nzc[j];
        }
        bool flat_ready = false;
        std::array<Elem, 8> w{};
        auto flat = [&]() -> const std::array<Elem, 8>& {
            if (!flat_ready) {
                for (int r = 0; r < 4; ++r)
                    for (int col = 0; col < 2; ++col) w[r * 2 + col] = R[col][r];
                flat_ready = true;
            }
            return w;
        };
        for (int i = 0; i < n; ++i) {
            if (rk[i] != 2) continue;  // W must be skew to Col(H_i); then nz is 2 too
            if (tot_b > max_b[i] || (tot_b == max_b[i] && flat() < wit_b[i])) {
                max_b[i] = tot_b;
                wit_b[i] = flat();
            }
            if (tot_g > max_g[i] || (tot_g == max_g[i] && flat() < wit_g[i])) {
                max_g[i] = tot_g;
                wit_g[i] = flat();
            }
        }
    });

    NodeOptima out;
    out.beta.resize(n);
    out.gamma.resize(n);
    auto to_mat = [&](const std::array<Elem, 8>& a) { return Mat(f, 4, 2, std::vector<Elem>(a.begin(), a.end())); };
    for (int i = 0; i < n; ++i) {
        out.beta[i] = {2 * (n - 1) - max_b[i], make_scheme(c, i, repair_matrix_for_subspace(c, i, to_mat(wit_b[i])))};
        out.gamma[i] = {2 * (n - 1) - max_g[i], make_scheme(c, i, repair_matrix_for_subspace(c, i, to_mat(wit_g[i])))};
    }
    return out;
}

NodeOptima optima_incidence(const ArrayCode& c) {
    require_mds(c);
    const Field& f = c.field();
    const unsigned q = f.q();
    const int n = c.n();

    std::vector<int> max_b(n, -1), max_g(n, -1);
    std::vector<std::array<Elem, 8>> wit_b(n), wit_g(n);
    std::vector<int> rk(n), nzc(n);

    auto score = [&](const Mat& Wraw) {
        const Mat N = annihilator(Wraw);
        if (N.rows() != 2) return;  // spanning vectors were dependent
        int tot_b = 0, tot_g = 0;
        for (int j = 0; j < n; ++j) {
            const Mat P = N * c.block(j);
            rk[j] = rank2(f, P(0, 0), P(0, 1), P(1, 0), P(1, 1));
            nzc[j] = nz2(P(0, 0), P(0, 1), P(1, 0), P(1, 1));
            tot_b += 2 - rk[j];
            tot_g += 2 - nzc[j];
        }
        bool ready = false;
        std::array<Elem, 8> w{};
        auto flat = [&]() -> const std::array<Elem, 8>& {
            if (!ready) {
                w = flat_w(colspace_canonical(Wraw));
                ready = true;
            }
            return w;
        };
        for (int i = 0; i < n; ++i) {
            if (rk[i] != 2) continue;
            if (tot_b > max_b[i] || (tot_b == max_b[i] && flat() < wit_b[i])) {
                max_b[i] = tot_b;
                wit_b[i] = flat();
            }
            if (tot_g > max_g[i] || (tot_g == max_g[i] && flat() < wit_g[i])) {
                max_g[i] = tot_g;
                wit_g[i] = flat();
            }
        }
    };

    // Projective points of each node: h0 and h1 + t h0.
    std::vector<std::vector<Mat>> pts(n);
    for (int j = 0; j < n; ++j) {
        const Mat h0 = c.block(j).col(0), h1 = c.block(j).col(1);
        pts[j].push_back(h0);
        for (Elem t = 0; t < q; ++t) pts[j].push_back(h1 + h0.scaled(t));
    }
    for (int j = 0; j < n; ++j) score(c.block(j));
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            for (const auto& P : pts[j])
                for (const auto& Q : pts[k]) score(hcat(P, Q));

    NodeOptima out;
    out.beta.resize(n);
    out.gamma.resize(n);
    auto to_mat = [&](const std::array<Elem, 8>& a) { return Mat(f, 4, 2, std::vector<Elem>(a.begin(), a.end())); };
    for (int i = 0; i < n; ++i) {
        out.beta[i] = {2 * (n - 1) - max_b[i], make_scheme(c, i, repair_matrix_for_subspace(c, i, to_mat(wit_b[i])))};
        out.gamma[i] = {2 * (n - 1) - max_g[i], make_scheme(c, i, repair_matrix_for_subspace(c, i, to_mat(wit_g[i])))};
    }
    return out;
}

NodeResult beta_node_matrix(const ArrayCode& c, int i) {
    if (i < 0 || i >= c.n()) raise(Errc::IndexOutOfRange, "node index");
    return optima_matrix(c).beta[i];
}

NodeResult beta_node_subspace(const ArrayCode& c, int i) {
    if (i < 0 || i >= c.n()) raise(Errc::IndexOutOfRange, "node index");
    return optima_subspace(c).beta[i];
}

NodeResult gamma_node(const ArrayCode& c, int i, Method method) {
    if (i < 0 || i >= c.n()) raise(Errc::IndexOutOfRange, "node index");
    switch (method) {
        case Method::Matrix: return optima_matrix(c).gamma[i];
        case Method::Subspace: return optima_subspace(c).gamma[i];
        case Method::Incidence: return optima_incidence(c).gamma[i];
        default: raise(Errc::InvalidArgument, "gamma_node needs a single method");
    }
}

CostReport cost_report(const ArrayCode& c, Method method) {
    require_mds(c);
    if (method == Method::Auto)
        method = c.field().q() <= kAutoExhaustiveMaxQ ? Method::Both : Method::Incidence;

    std::vector<std::pair<std::string, NodeOptima>> runs;
    if (method == Method::Matrix || method == Method::Both) runs.emplace_back("matrix", optima_matrix(c));
    if (method == Method::Subspace || method == Method::Both) runs.emplace_back("subspace", optima_subspace(c));
    if (method == Method::Incidence) runs.emplace_back("incidence", optima_incidence(c));

    const int n = c.n();
    const NodeOptima& ref = runs.front().second;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        for (int i = 0; i < n; ++i) {
            const auto& o = runs[r].second;
            if (o.beta[i].value != ref.beta[i].value || o.gamma[i].value != ref.gamma[i].value)
                raise(Errc::OracleDisagreement,
                      "node " + std::to_string(i + 1) + ": " + runs.front().first + " gives (" +
                          std::to_string(ref.beta[i].value) + "," + std::to_string(ref.gamma[i].value) + "), " +
                          runs[r].first + " gives (" + std::to_string(o.beta[i].value) + "," +
                          std::to_string(o.gamma[i].value) + ")");
        }
    }

    CostReport rep;
    rep.n = n;
    for (const auto& r : runs) rep.methods.push_back(r.first);
    for (int i = 0; i < n; ++i) {
        const int b = ref.beta[i].value, g = ref.gamma[i].value;
        if (g < b) raise(Errc::OracleDisagreement, "gamma_i < beta_i at node " + std::to_string(i + 1));
        if (ref.beta[i].witness.bandwidth() != b || ref.gamma[i].witness.io() != g)
            raise(Errc::OracleDisagreement, "witness tallies disagree at node " + std::to_string(i + 1));
        rep.beta_i.push_back(b);
        rep.gamma_i.push_back(g);
        rep.alpha_i.push_back(2 * (n - 1) - b);
        rep.lambda_i.push_back(2 * (n - 1) - g);
        rep.beta = std::max(rep.beta, b);
        rep.gamma = std::max(rep.gamma, g);
        rep.beta_witness.push_back(ref.beta[i].witness);
        rep.gamma_witness.push_back(ref.gamma[i].witness);
    }
    return rep;
}

namespace {

nlohmann::json scheme_json(const RepairScheme& s) {
    nlohmann::json j;
    j["matrix"] = s.matrix.to_rows();
    j["kernel"] = s.kernel.to_rows();
    nlohmann::json ph = nlohmann::json::array();
    for (const auto& h : s.per_helper) ph.push_back({{"helper", h.helper + 1}, {"rank", h.rank}, {"nz", h.nz}});
    j["per_helper"] = ph;
    return j;
}

}  // namespace

std::string to_json(const CostReport& r, int indent) {
    nlohmann::json j;
    j["n"] = r.n;
    j["beta"] = r.beta;
    j["gamma"] = r.gamma;
    j["beta_i"] = r.beta_i;
    j["gamma_i"] = r.gamma_i;
    j["alpha_i"] = r.alpha_i;
    j["lambda_i"] = r.lambda_i;
    j["methods"] = r.methods;
    nlohmann::json w = nlohmann::json::array();
    for (int i = 0; i < r.n; ++i)
        w.push_back({{"node", i + 1}, {"beta", scheme_json(r.beta_witness[i])}, {"gamma", scheme_json(r.gamma_witness[i])}});
    j["witnesses"] = w;
    return j.dump(indent);
}

}  // namespace mds22
