#include "mds22/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mds22/linalg.hpp"

namespace mds22 {

// ---------------------------------------------------------------------------
// Witness families

WitnessFamily parse_witness_family(const std::string& s) {
    if (s == "even") return WitnessFamily::Even;
    if (s == "char3") return WitnessFamily::Char3;
    if (s == "odd") return WitnessFamily::Odd;
    raise(Errc::InvalidArgument, "witness family must be even, char3 or odd, got '" + s + "'");
}

const char* witness_family_name(WitnessFamily f) {
    switch (f) {
        case WitnessFamily::Even: return "even";
        case WitnessFamily::Char3: return "char3";
        case WitnessFamily::Odd: return "odd";
    }
    return "?";
}

WitnessFamily witness_family_for(unsigned q) {
    const auto pm = prime_power(q);
    if (!pm) raise(Errc::OutOfRange, "q=" + std::to_string(q) + " is not a prime power");
    if (pm->first == 2) return WitnessFamily::Even;
    if (pm->first == 3) return WitnessFamily::Char3;
    return WitnessFamily::Odd;
}

bool even_witness_ok(const Field& f, Elem s) {
    const Elem s1 = f.add(s, 1);
    const Elem cub = f.add(f.add(f.pow(s, 3), s), 1);
    if (s == 0 || s1 == 0 || cub == 0) return false;
    return f.abs_trace(f.inv(s)) == 0 && f.abs_trace(f.inv(f.mul(s, s1))) == 0 &&
           f.abs_trace(f.div(s, f.pow(s1, 3))) == 0 && f.abs_trace(f.div(f.mul(s, s1), cub)) == 0;
}

bool char3_witness_ok(const Field& f, Elem s) {
    const Elem one = 1;
    const Elem s2 = f.mul(s, s), s3 = f.mul(s2, s);
    const Elem sm1 = f.sub(s, one), sp1 = f.add(s, one);
    const Elem p1 = f.sub(f.add(s3, s2), one);                      // s^3 + s^2 - 1
    const Elem p2 = f.add(f.sub(f.add(s3, s2), s), one);            // s^3 + s^2 - s + 1
    const Elem p3 = f.sub(f.sub(s2, s), one);                       // s^2 - s - 1
    const Elem p4 = f.sub(f.add(s2, s), one);                       // s^2 + s - 1
    if (s == 0 || sm1 == 0 || sp1 == 0 || p1 == 0 || p2 == 0 || p3 == 0 || p4 == 0) return false;
    const Elem r = f.neg(f.mul(sm1, p2));
    return f.is_square(r) && f.is_square(p3);
}

bool odd_witness_ok(const Field& f, Elem c) {
    const Elem two = f.from_int(2);
    if (c == 0 || c == two || c == f.neg(two) || c == f.div(two, f.from_int(3))) return false;
    const Elem a = f.add(f.mul(f.from_int(12), c), 1);
    const Elem b = f.mul(f.from_int(3), f.add(f.mul(f.from_int(8), c), f.from_int(3)));
    const Elem d = f.add(f.mul(f.from_int(4), c), 1);
    for (Elem x : {a, b, d})
        if (x == 0 || !f.is_square(x)) return false;
    return true;
}

Elem search_witness(WitnessFamily family, unsigned q) {
    const auto pm = prime_power(q);
    if (!pm) raise(Errc::OutOfRange, "q=" + std::to_string(q) + " is not a prime power");
    if (witness_family_for(q) != family)
        raise(Errc::InvalidArgument,
              std::string(witness_family_name(family)) + " family does not match the characteristic of q=" +
                  std::to_string(q));
    const unsigned min_q = family == WitnessFamily::Even ? 16 : family == WitnessFamily::Char3 ? 27 : 7;
    if (q < min_q)
        raise(Errc::OutOfRange, std::string(witness_family_name(family)) + " family needs q >= " +
                                    std::to_string(min_q));
    const Field f = Field::of_order(q);
    for (Elem x = 0; x < q; ++x) {
        const bool ok = family == WitnessFamily::Even    ? even_witness_ok(f, x)
                        : family == WitnessFamily::Char3 ? char3_witness_ok(f, x)
                                                         : odd_witness_ok(f, x);
        if (ok) return x;
    }
    raise(Errc::NotFound, "no admissible parameter in GF(" + std::to_string(q) + ")");
}

// ---------------------------------------------------------------------------
// Shared machinery

namespace {

using M2 = std::array<Elem, 4>;  // row-major 2x2

M2 mul(const Field& f, const M2& a, const M2& b) {
    return {f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])), f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
            f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])), f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3]))};
}
M2 add(const Field& f, const M2& a, const M2& b) {
    return {f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(a[2], b[2]), f.add(a[3], b[3])};
}
M2 sub(const Field& f, const M2& a, const M2& b) {
    return {f.sub(a[0], b[0]), f.sub(a[1], b[1]), f.sub(a[2], b[2]), f.sub(a[3], b[3])};
}
M2 scale(const Field& f, Elem s, const M2& a) {
    return {f.mul(s, a[0]), f.mul(s, a[1]), f.mul(s, a[2]), f.mul(s, a[3])};
}
int rk(const Field& f, const M2& a) { return rank2(f, a[0], a[1], a[2], a[3]); }
Elem dt(const Field& f, const M2& a) { return det2(f, a[0], a[1], a[2], a[3]); }

const M2 kI = {1, 0, 0, 1};
const M2 kZero = {0, 0, 0, 0};

std::vector<M2> all_matrices(const Field& f) {
    const Elem q = f.q();
    std::vector<M2> out;
    out.reserve(static_cast<std::size_t>(q) * q * q * q);
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            for (Elem c = 0; c < q; ++c)
                for (Elem d = 0; d < q; ++d) out.push_back({a, b, c, d});
    return out;
}

using Clock = std::chrono::steady_clock;

// JSON checkpoint holding the outer index reached and the running counters.
struct Checkpoint {
    std::string path;
    std::string name;

    bool load(SearchVerdict& v) const {
        if (path.empty() || !std::filesystem::exists(path)) return false;
        std::ifstream in(path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            raise(Errc::ParseError, "checkpoint " + path + ": " + e.what());
        }
        if (j.value("case", std::string()) != name)
            raise(Errc::InvalidArgument, "checkpoint " + path + " belongs to case '" +
                                             j.value("case", std::string()) + "', not '" + name + "'");
        v.outer_done = j.at("next").get<long long>();
        const auto& c = j.at("counts");
        v.configs = c.value("configs", 0LL);
        v.mds_survivors = c.value("mds_survivors", 0LL);
        v.passed = c.value("passed", 0LL);
        v.min_beta = c.value("min_beta", -1);
        v.codes_at_min = c.value("codes_at_min", 0LL);
        v.feasible = c.value("feasible", std::map<std::string, long long>{});
        v.runtime_s = j.value("runtime", 0.0);
        v.complete = j.value("complete", false);
        return true;
    }

    void save(const SearchVerdict& v) const {
        if (path.empty()) return;
        nlohmann::json j;
        j["case"] = name;
        j["next"] = v.outer_done;
        j["total"] = v.outer_total;
        j["counts"] = {{"configs", v.configs},
                       {"mds_survivors", v.mds_survivors},
                       {"passed", v.passed},
                       {"min_beta", v.min_beta},
                       {"codes_at_min", v.codes_at_min},
                       {"feasible", v.feasible}};
        j["runtime"] = v.runtime_s;
        j["complete"] = v.complete;
        const std::filesystem::path p(path);
        if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) raise(Errc::InvalidArgument, "cannot write checkpoint " + path);
            out << j.dump(2) << '\n';
        }
        std::filesystem::rename(tmp, path);
    }
};

// Streams the outer loop of a search, persisting counters as it goes. body(i)
// processes outer index i and updates v.
template <class Body>
SearchVerdict drive(const std::string& name, long long total, const SearchOptions& opt, Body body) {
    SearchVerdict v;
    v.name = name;
    v.outer_total = total;
    v.checkpoint = opt.checkpoint;
    const Checkpoint cp{opt.checkpoint, name};
    cp.load(v);
    if (v.complete) return v;
    const auto t0 = Clock::now();
    const double base = v.runtime_s;
    long long steps = 0;
    const int every = std::max(1, opt.checkpoint_every);
    while (v.outer_done < total) {
        if (opt.max_steps > 0 && steps >= opt.max_steps) break;
        body(v.outer_done, v);
        ++v.outer_done;
        ++steps;
        v.runtime_s = base + std::chrono::duration<double>(Clock::now() - t0).count();
        if (opt.progress) opt.progress(v.outer_done, total);
        if (steps % every == 0) cp.save(v);
    }
    v.complete = v.outer_done == total;
    v.runtime_s = base + std::chrono::duration<double>(Clock::now() - t0).count();
    cp.save(v);
    return v;
}

// Dynamic bitset over a flat configuration index.
struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
    void clear() { std::fill(w.begin(), w.end(), 0); }
    void and_with(const Bits& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] &= o.w[k];
    }
    long long count() const {
        long long c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
};

// Unordered pairs {i < j} of 0..m-1 in lexicographic order.
std::vector<std::pair<int, int>> pairs_of(int m) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) out.emplace_back(i, j);
    return out;
}

// Pair sums of one family bucketed by value (0..4), for DFS enumeration of
// configurations whose total stays under a budget.
struct Buckets {
    std::array<std::vector<int>, 5> by_sum;
    int min_sum = 5;
    void build(const std::vector<std::pair<int, int>>& pairs, const std::vector<std::uint8_t>& r) {
        for (auto& b : by_sum) b.clear();
        min_sum = 5;
        for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
            const int s = r[static_cast<std::size_t>(pairs[p].first)] + r[static_cast<std::size_t>(pairs[p].second)];
            by_sum[static_cast<std::size_t>(s)].push_back(p);
            min_sum = std::min(min_sum, s);
        }
    }
};

// ---------------------------------------------------------------------------
// Exact bandwidth of a small code: normalized repair matrices M = M0 + Z K,
// where M0 H_i = I and the rows of K span the left kernel of H_i, so that
// M H_j = P_j + Z Q_j for every helper.

int fast_beta(const Field& f, const std::vector<Mat>& H, const std::vector<M2>& Zs) {
    const int n = static_cast<int>(H.size());
    int beta = 0;
    for (int i = 0; i < n; ++i) {
        const Mat& Hi = H[static_cast<std::size_t>(i)];
        const Mat Kt = kernel_basis(Hi.transpose());  // 4x2, columns span {v : v^T H_i = 0}
        const Mat K = Kt.transpose();
        // Complete K to an invertible 4x4 [K; G]; then M0 = (G H_i)^{-1} G.
        Mat G;
        for (int a = 0; a < 4 && G.rows() == 0; ++a)
            for (int b = a + 1; b < 4 && G.rows() == 0; ++b) {
                Mat cand = Mat::zeros(f, 2, 4);
                cand(0, a) = 1;
                cand(1, b) = 1;
                if (is_invertible(vcat(K, cand))) G = cand;
            }
        const Mat M0 = inverse(G * Hi) * G;
        std::vector<M2> P, Q;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Mat p = M0 * H[static_cast<std::size_t>(j)], qm = K * H[static_cast<std::size_t>(j)];
            P.push_back({p(0, 0), p(0, 1), p(1, 0), p(1, 1)});
            Q.push_back({qm(0, 0), qm(0, 1), qm(1, 0), qm(1, 1)});
        }
        // Every one of the q^4 candidates is visited; a candidate is only
        // abandoned once its partial sum can no longer beat the best.
        int best = 2 * (n - 1);
        for (const M2& Z : Zs) {
            int s = 0;
            for (std::size_t j = 0; j < P.size() && s < best; ++j) s += rk(f, add(f, P[j], mul(f, Z, Q[j])));
            best = std::min(best, s);
        }
        beta = std::max(beta, best);
    }
    return beta;
}

}  // namespace

std::string to_json(const SearchVerdict& v, int indent) {
    nlohmann::json j;
    j["case"] = v.name;
    j["complete"] = v.complete;
    j["outer_done"] = v.outer_done;
    j["outer_total"] = v.outer_total;
    j["configs"] = v.configs;
    j["mds_survivors"] = v.mds_survivors;
    j["passed_configs"] = v.passed;
    if (!v.feasible.empty()) j["feasible"] = v.feasible;
    if (v.min_beta >= 0) {
        j["min_beta"] = v.min_beta;
        j["codes_at_min"] = v.codes_at_min;
    }
    j["runtime"] = v.runtime_s;
    if (!v.checkpoint.empty()) j["checkpoint"] = v.checkpoint;
    return j.dump(indent);
}

// ---------------------------------------------------------------------------
// n = 5 over GF(5)

SearchVerdict exhaust_n5_q5(const SearchOptions& opt) {
    const Field f = Field::of_order(5);
    const auto all = all_matrices(f);
    std::vector<M2> adm;
    for (const auto& A : all)
        if (dt(f, A) != 0 && dt(f, sub(f, A, kI)) != 0) adm.push_back(A);
    auto block = [&](const M2& W) { return Mat(f, 4, 2, {1, 0, 0, 1, W[0], W[1], W[2], W[3]}); };
    const Mat top = Mat(f, 4, 2, {1, 0, 0, 1, 0, 0, 0, 0});
    const Mat bottom = Mat(f, 4, 2, {0, 0, 0, 0, 1, 0, 0, 1});
    return drive("n5q5", static_cast<long long>(adm.size()), opt, [&](long long a, SearchVerdict& v) {
        const M2& A = adm[static_cast<std::size_t>(a)];
        for (std::size_t b = static_cast<std::size_t>(a) + 1; b < adm.size(); ++b) {
            const M2& B = adm[b];
            if (dt(f, sub(f, A, B)) == 0) continue;
            ++v.configs;
            ++v.mds_survivors;
            const int beta = fast_beta(f, {block(kI), block(A), block(B), top, bottom}, all);
            if (beta <= 4) ++v.passed;
            if (v.min_beta < 0 || beta < v.min_beta) {
                v.min_beta = beta;
                v.codes_at_min = 0;
            }
            if (beta == v.min_beta) ++v.codes_at_min;
        }
    });
}

// ---------------------------------------------------------------------------
// n = 10 over GF(8) / GF(9)

namespace {

// One outer step (c, d) of the ten-node search. Elements are (l+1) T_a for
// a in 0..3 and l in 0..q-2; a configuration picks one lambda pair per
// family and has flat index ((p1 P + p2) P + p3) P + p4.
struct N10Step {
    Field f;
    int L = 0, P = 0;
    std::size_t P2 = 0, P3 = 0, P4 = 0;
    std::vector<std::pair<int, int>> pairs;
    std::array<std::vector<M2>, 4> elem;
    const std::vector<M2>* all = nullptr;
    const std::vector<int>* rank_of = nullptr;

    N10Step(const Field& fld, Elem c, Elem d, const std::vector<M2>& all_m, const std::vector<int>& ranks)
        : f(fld), all(&all_m), rank_of(&ranks) {
        L = static_cast<int>(f.q()) - 1;
        pairs = pairs_of(L);
        P = static_cast<int>(pairs.size());
        P2 = static_cast<std::size_t>(P) * P;
        P3 = P2 * P;
        P4 = P3 * P;
        const Elem den1 = f.mul(c, f.sub(1, d));
        const std::array<M2, 4> T = {{
            {1, 0, f.div(f.sub(d, c), den1), f.div(f.mul(d, f.sub(1, c)), den1)},
            {1, f.div(f.sub(c, d), f.sub(c, 1)), 0, f.div(f.sub(d, 1), f.sub(c, 1))},
            {1, 0, 0, f.div(d, c)},
            kI,
        }};
        for (int a = 0; a < 4; ++a)
            for (int l = 0; l < L; ++l) elem[a].push_back(scale(f, static_cast<Elem>(l + 1), T[a]));
    }

    std::size_t index(int p1, int p2, int p3, int p4) const {
        return static_cast<std::size_t>(p1) * P3 + static_cast<std::size_t>(p2) * P2 +
               static_cast<std::size_t>(p3) * P + static_cast<std::size_t>(p4);
    }

    // Cross-family pairwise complementarity of [I; W] blocks.
    Bits mds() const {
        std::array<std::array<std::vector<std::uint8_t>, 4>, 4> compat;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                std::vector<std::uint8_t> ok_elem(static_cast<std::size_t>(L * L));
                for (int l = 0; l < L; ++l)
                    for (int m = 0; m < L; ++m)
                        ok_elem[static_cast<std::size_t>(l * L + m)] = dt(f, sub(f, elem[a][l], elem[b][m])) != 0;
                auto& cm = compat[a][b];
                cm.assign(P2, 0);
                for (int p = 0; p < P; ++p)
                    for (int r = 0; r < P; ++r) {
                        const auto [l1, l2] = pairs[p];
                        const auto [m1, m2] = pairs[r];
                        cm[static_cast<std::size_t>(p) * P + r] = ok_elem[l1 * L + m1] && ok_elem[l1 * L + m2] &&
                                                                  ok_elem[l2 * L + m1] && ok_elem[l2 * L + m2];
                    }
            }
        auto cmp = [&](int a, int b, int p, int r) { return compat[a][b][static_cast<std::size_t>(p) * P + r] != 0; };
        Bits out(P4);
        for (int p1 = 0; p1 < P; ++p1)
            for (int p2 = 0; p2 < P; ++p2) {
                if (!cmp(0, 1, p1, p2)) continue;
                for (int p3 = 0; p3 < P; ++p3) {
                    if (!cmp(0, 2, p1, p3) || !cmp(1, 2, p2, p3)) continue;
                    for (int p4 = 0; p4 < P; ++p4)
                        if (cmp(0, 3, p1, p4) && cmp(1, 3, p2, p4) && cmp(2, 3, p3, p4)) out.set(index(p1, p2, p3, p4));
                }
            }
        return out;
    }

    // Configurations for which some X makes the repair of [I;0] (condition
    // 'A': rank(I - X W) per block plus rank(X)) or of [0;I] (condition 'D':
    // rank(W - X) per block plus rank(X)) cost at most 10. Computed as the
    // union over X of every configuration under the budget, enumerated per
    // X from pair sums bucketed by value.
    Bits condition(char which) const {
        Bits out(P4);
        std::array<Buckets, 4> bk;
        std::vector<std::uint8_t> r(static_cast<std::size_t>(L));
        for (std::size_t x = 0; x < all->size(); ++x) {
            const M2& X = (*all)[x];
            const int budget = 10 - (*rank_of)[x];
            for (int a = 0; a < 4; ++a) {
                for (int l = 0; l < L; ++l) {
                    const M2& W = elem[a][l];
                    const int v = which == 'A' ? rk(f, sub(f, kI, mul(f, X, W))) : rk(f, sub(f, W, X));
                    r[static_cast<std::size_t>(l)] = static_cast<std::uint8_t>(v);
                }
                bk[a].build(pairs, r);
            }
            const int m3 = bk[3].min_sum, m23 = bk[2].min_sum + m3, m123 = bk[1].min_sum + m23;
            if (bk[0].min_sum + m123 > budget) continue;
            for (int s1 = 0; s1 <= 4 && s1 + m123 <= budget; ++s1)
                for (int p1 : bk[0].by_sum[s1])
                    for (int s2 = 0; s2 <= 4 && s1 + s2 + m23 <= budget; ++s2)
                        for (int p2 : bk[1].by_sum[s2])
                            for (int s3 = 0; s3 <= 4 && s1 + s2 + s3 + m3 <= budget; ++s3)
                                for (int p3 : bk[2].by_sum[s3])
                                    for (int s4 = 0; s4 <= 4 && s1 + s2 + s3 + s4 <= budget; ++s4)
                                        for (int p4 : bk[3].by_sum[s4]) out.set(index(p1, p2, p3, p4));
        }
        return out;
    }
};

struct N10Case {
    Field f;
    std::vector<std::pair<Elem, Elem>> outer;
    std::vector<M2> all;
    std::vector<int> rank_of;

    explicit N10Case(unsigned q) {
        if (q != 8 && q != 9) raise(Errc::UnsupportedQ, "the ten-node exhaustive search covers q = 8 and 9");
        f = Field::of_order(q);
        all = all_matrices(f);
        for (const auto& m : all) rank_of.push_back(rk(f, m));
        for (Elem c = 2; c < q; ++c)
            for (Elem d = 2; d < q; ++d)
                if (c != d) outer.emplace_back(c, d);
    }
    N10Step step(long long i) const {
        if (i < 0 || i >= static_cast<long long>(outer.size())) raise(Errc::IndexOutOfRange, "outer index out of range");
        const auto [c, d] = outer[static_cast<std::size_t>(i)];
        return N10Step(f, c, d, all, rank_of);
    }
};

char check_condition(char which, const std::string& allowed) {
    if (allowed.find(which) == std::string::npos)
        raise(Errc::InvalidArgument, std::string("condition must be one of ") + allowed);
    return which;
}

}  // namespace

SearchVerdict exhaust_n10(unsigned q, const SearchOptions& opt) {
    const N10Case cs(q);
    return drive("n10q" + std::to_string(q), static_cast<long long>(cs.outer.size()), opt,
                 [&](long long oi, SearchVerdict& v) {
        const N10Step st = cs.step(oi);
        const Bits mds = st.mds();
        Bits a_ok = st.condition('A');
        const Bits d_ok = st.condition('D');
        v.configs += static_cast<long long>(st.P4);
        v.mds_survivors += mds.count();
        v.feasible["A"] += a_ok.count();
        v.feasible["D"] += d_ok.count();
        a_ok.and_with(d_ok);
        a_ok.and_with(mds);
        v.passed += a_ok.count();
    });
}

std::vector<std::array<int, 4>> n10_condition_configs(unsigned q, int outer, char condition) {
    check_condition(condition, "AD");
    const N10Case cs(q);
    const N10Step st = cs.step(outer);
    const Bits b = st.condition(condition);
    std::vector<std::array<int, 4>> out;
    for (int p1 = 0; p1 < st.P; ++p1)
        for (int p2 = 0; p2 < st.P; ++p2)
            for (int p3 = 0; p3 < st.P; ++p3)
                for (int p4 = 0; p4 < st.P; ++p4)
                    if (b.test(st.index(p1, p2, p3, p4))) out.push_back({p1, p2, p3, p4});
    return out;
}

// ---------------------------------------------------------------------------
// n = 9 over GF(8)

namespace {

// The nine-node search: three families of 42 matrices (element e = 7(x-2) +
// lambda-1), one unordered pair per family, and three repair conditions
// 'B' (node [I;I]), 'A' (node [I;0]) and 'D' (node [0;I]).
struct N9Case {
    Field f = Field::of_order(8);
    std::vector<M2> all;
    std::array<std::vector<M2>, 3> fam;
    std::vector<std::pair<int, int>> pairs;
    int E = 0, P = 0, words = 0;
    std::size_t P2 = 0;
    std::array<std::vector<std::uint8_t>, 3> pair_ok;
    std::vector<std::uint64_t> compat23;

    // Per-condition rank tables for every X that can ever meet the budget.
    struct Cond {
        std::vector<std::array<std::vector<std::uint8_t>, 3>> r;  // per kept X, per family
        std::vector<int> cst;
        std::vector<std::array<Buckets, 2>> bk;  // families 2 and 3
    };
    std::array<Cond, 3> conds;  // B, A, D

    static int cond_index(char c) { return c == 'B' ? 0 : c == 'A' ? 1 : 2; }

    N9Case() {
        const Elem q = 8;
        all = all_matrices(f);
        for (Elem x = 2; x < q; ++x)
            for (Elem lam = 1; lam < q; ++lam) {
                fam[0].push_back(scale(f, lam, {1, 0, x, f.add(1, x)}));
                fam[1].push_back(scale(f, lam, {1, x, 0, f.add(1, x)}));
                fam[2].push_back(scale(f, lam, {1, 0, 0, x}));
            }
        E = static_cast<int>(fam[0].size());
        pairs = pairs_of(E);
        P = static_cast<int>(pairs.size());
        P2 = static_cast<std::size_t>(P) * P;
        words = (P + 63) / 64;
        for (int k = 0; k < 3; ++k)
            for (int p = 0; p < P; ++p) {
                const M2& a = fam[k][pairs[p].first];
                const M2& b = fam[k][pairs[p].second];
                pair_ok[k].push_back(good_single(a) && good_single(b) && compatible(a, b));
            }
        compat23.assign(static_cast<std::size_t>(P) * words, 0);
        for (int p2 = 0; p2 < P; ++p2)
            for (int p3 = 0; p3 < P; ++p3)
                if (pair_ok[1][p2] && pair_ok[2][p3] && pair_compat(1, p2, 2, p3))
                    compat23[static_cast<std::size_t>(p2) * words + (p3 >> 6)] |= std::uint64_t{1} << (p3 & 63);
        for (int ci = 0; ci < 3; ++ci) build_condition(ci);
    }

    bool good_single(const M2& W) const { return dt(f, W) != 0 && dt(f, sub(f, W, kI)) != 0; }
    bool compatible(const M2& a, const M2& b) const { return dt(f, sub(f, a, b)) != 0; }
    bool pair_compat(int k1, int p1, int k2, int p2) const {
        const M2* x[2] = {&fam[k1][pairs[p1].first], &fam[k1][pairs[p1].second]};
        const M2* y[2] = {&fam[k2][pairs[p2].first], &fam[k2][pairs[p2].second]};
        for (auto* a : x)
            for (auto* b : y)
                if (!compatible(*a, *b)) return false;
        return true;
    }

    int element_rank(int ci, const M2& X, const M2& W) const {
        if (ci == 0) return rk(f, add(f, X, mul(f, sub(f, kI, X), W)));
        if (ci == 1) return rk(f, sub(f, kI, mul(f, X, W)));
        return rk(f, sub(f, W, X));
    }

    void build_condition(int ci) {
        Cond& C = conds[ci];
        for (const M2& X : all) {
            // The blocks [I;I] / [I;0] / [0;I] other than the failed one
            // contribute rank(X) + rank(I - X) for every condition.
            const int cst = rk(f, X) + rk(f, sub(f, kI, X));
            std::array<std::vector<std::uint8_t>, 3> r;
            int min_total = cst;
            for (int k = 0; k < 3; ++k) {
                r[k].resize(static_cast<std::size_t>(E));
                std::array<int, 2> lo = {5, 5};
                for (int e = 0; e < E; ++e) {
                    const int v = element_rank(ci, X, fam[k][e]);
                    r[k][static_cast<std::size_t>(e)] = static_cast<std::uint8_t>(v);
                    if (v < lo[0]) {
                        lo[1] = lo[0];
                        lo[0] = v;
                    } else if (v < lo[1]) {
                        lo[1] = v;
                    }
                }
                min_total += lo[0] + lo[1];
            }
            if (min_total > 9) continue;
            std::array<Buckets, 2> bk;
            bk[0].build(pairs, r[1]);
            bk[1].build(pairs, r[2]);
            C.cst.push_back(cst);
            C.bk.push_back(std::move(bk));
            C.r.push_back(std::move(r));
        }
    }

    // (p2, p3) configurations meeting condition ci for the family-1 pair p1;
    // flat index p2 * P + p3.
    Bits condition(int ci, int p1) const {
        const Cond& C = conds[ci];
        const auto [e1, e2] = pairs[p1];
        Bits out(P2);
        for (std::size_t k = 0; k < C.cst.size(); ++k) {
            const int s1 = C.r[k][0][static_cast<std::size_t>(e1)] + C.r[k][0][static_cast<std::size_t>(e2)];
            const int budget = 9 - C.cst[k] - s1;
            const int m2min = C.bk[k][0].min_sum, m3min = C.bk[k][1].min_sum;
            if (m2min + m3min > budget) continue;
            for (int s2 = 0; s2 <= 4 && s2 + m3min <= budget; ++s2)
                for (int q2 : C.bk[k][0].by_sum[s2])
                    for (int s3 = 0; s3 <= 4 && s2 + s3 <= budget; ++s3)
                        for (int q3 : C.bk[k][1].by_sum[s3]) out.set(static_cast<std::size_t>(q2) * P + q3);
        }
        return out;
    }
};

const N9Case& n9_case() {
    static const N9Case cs;
    return cs;
}

}  // namespace

SearchVerdict exhaust_n9_q8(const SearchOptions& opt) {
    const N9Case& cs = n9_case();
    const int P = cs.P, words = cs.words;
    return drive("n9q8", P, opt, [&](long long p1l, SearchVerdict& v) {
        const int p1 = static_cast<int>(p1l);
        v.configs += static_cast<long long>(cs.P2);
        if (!cs.pair_ok[0][p1]) return;
        // MDS survivors for this p1 via bitmask counting.
        std::vector<std::uint64_t> m2(static_cast<std::size_t>(words), 0), m3(static_cast<std::size_t>(words), 0);
        for (int p = 0; p < P; ++p) {
            if (cs.pair_ok[1][p] && cs.pair_compat(0, p1, 1, p)) m2[p >> 6] |= std::uint64_t{1} << (p & 63);
            if (cs.pair_ok[2][p] && cs.pair_compat(0, p1, 2, p)) m3[p >> 6] |= std::uint64_t{1} << (p & 63);
        }
        auto in = [](const std::uint64_t* m, int i) { return ((m[i >> 6] >> (i & 63)) & 1U) != 0; };
        for (int p2 = 0; p2 < P; ++p2) {
            if (!in(m2.data(), p2)) continue;
            for (int w = 0; w < words; ++w)
                v.mds_survivors +=
                    std::popcount(m3[static_cast<std::size_t>(w)] & cs.compat23[static_cast<std::size_t>(p2) * words + w]);
        }
        Bits b_ok = cs.condition(0, p1);
        const Bits a_ok = cs.condition(1, p1), d_ok = cs.condition(2, p1);
        v.feasible["B"] += b_ok.count();
        v.feasible["A"] += a_ok.count();
        v.feasible["D"] += d_ok.count();
        b_ok.and_with(a_ok);
        b_ok.and_with(d_ok);
        for (int p2 = 0; p2 < P; ++p2) {
            if (!in(m2.data(), p2)) continue;
            const std::uint64_t* c23 = &cs.compat23[static_cast<std::size_t>(p2) * words];
            for (int p3 = 0; p3 < P; ++p3)
                if (in(m3.data(), p3) && in(c23, p3) && b_ok.test(static_cast<std::size_t>(p2) * P + p3)) ++v.passed;
        }
    });
}

std::vector<std::array<int, 2>> n9q8_condition_configs(int p1, char condition) {
    check_condition(condition, "ABD");
    const N9Case& cs = n9_case();
    if (p1 < 0 || p1 >= cs.P) raise(Errc::IndexOutOfRange, "pair index out of range");
    const Bits b = cs.condition(N9Case::cond_index(condition), p1);
    std::vector<std::array<int, 2>> out;
    for (int p2 = 0; p2 < cs.P; ++p2)
        for (int p3 = 0; p3 < cs.P; ++p3)
            if (b.test(static_cast<std::size_t>(p2) * cs.P + p3)) out.push_back({p2, p3});
    return out;
}

}  // namespace mds22
