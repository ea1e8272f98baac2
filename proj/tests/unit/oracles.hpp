#pragma once

// Test-side reference implementations. They share no code paths with the
// library beyond the element encoding, so agreement is evidence rather than
// tautology. Everything here is deliberately naive.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "mds22/code.hpp"
#include "mds22/gf.hpp"
#include "mds22/linalg.hpp"

namespace oracle {

using mds22::Elem;

// GF(p^m) by schoolbook polynomial arithmetic on digit vectors.
struct PolyField {
    unsigned p = 0, m = 0, q = 0;
    std::vector<unsigned> modulus;  // constant term first, monic, length m+1

    PolyField(unsigned p_, std::vector<unsigned> mod) : p(p_), m(static_cast<unsigned>(mod.size() - 1)), modulus(std::move(mod)) {
        q = 1;
        for (unsigned i = 0; i < m; ++i) q *= p;
    }

    std::vector<unsigned> digits(Elem a) const {
        std::vector<unsigned> d(m);
        for (unsigned i = 0; i < m; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    }
    Elem encode(const std::vector<unsigned>& d) const {
        Elem v = 0;
        for (unsigned i = m; i-- > 0;) v = v * p + d[i];
        return v;
    }
    Elem add(Elem a, Elem b) const {
        auto x = digits(a), y = digits(b);
        for (unsigned i = 0; i < m; ++i) x[i] = (x[i] + y[i]) % p;
        return encode(x);
    }
    Elem neg(Elem a) const {
        auto x = digits(a);
        for (auto& c : x) c = (p - c) % p;
        return encode(x);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        const auto x = digits(a), y = digits(b);
        std::vector<unsigned> prod(2 * m, 0);
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        for (unsigned k = 2 * m - 1; k >= m; --k) {
            const unsigned c = prod[k];
            if (c == 0) continue;
            prod[k] = 0;
            for (unsigned i = 0; i < m; ++i) prod[k - m + i] = (prod[k - m + i] + p * p - c * modulus[i] % p) % p;
        }
        prod.resize(m);
        return encode(prod);
    }
    Elem pow(Elem a, unsigned long long e) const {
        Elem r = 1;
        for (unsigned long long i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }
};

// Naive polynomial helpers over GF(p) for irreducibility checks.
inline std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
    auto trim = [](std::vector<unsigned>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    const std::size_t db = b.size() - 1;
    unsigned inv_lead = 1;
    while (inv_lead * b.back() % p != 1) ++inv_lead;
    while (a.size() >= b.size()) {
        const unsigned c = a.back() * inv_lead % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p * p - c * b[i] % p) % p;
        trim(a);
    }
    return a;
}

// True iff the monic constant-first polynomial has no monic factor of degree
// 1..deg/2, by trial division against every such polynomial.
inline bool irreducible_by_trial(unsigned p, const std::vector<unsigned>& poly) {
    const std::size_t deg = poly.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::size_t k = 0; k < count; ++k) {
            std::vector<unsigned> g(d + 1);
            std::size_t v = k;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<unsigned>(v % p);
                v /= p;
            }
            g[d] = 1;
            if (poly_mod(poly, g, p).empty()) return false;
        }
    }
    return true;
}

// Rank of a 2x2 matrix given as entries over a library field (only field
// arithmetic is borrowed).
inline int rank2x2(const mds22::Field& f, Elem a, Elem b, Elem c, Elem d) {
    if (f.sub(f.mul(a, d), f.mul(b, c)) != 0) return 2;
    return (a || b || c || d) ? 1 : 0;
}

// Entry (r, c) of the 2x2 product M * H_j where M is 2x4 (row-major array)
// and H is a library 4x2 block.
inline std::array<Elem, 4> mul_2x4_4x2(const mds22::Field& f, const std::array<Elem, 8>& M, const mds22::Mat& H) {
    std::array<Elem, 4> out{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            Elem s = 0;
            for (int k = 0; k < 4; ++k) s = f.add(s, f.mul(M[static_cast<std::size_t>(r * 4 + k)], H(k, c)));
            out[static_cast<std::size_t>(r * 2 + c)] = s;
        }
    return out;
}

struct BruteNode {
    int beta = 0, gamma = 0;
    std::array<Elem, 8> beta_witness{};  // lexicographically first minimizer
};

// Exhaustive over every 2x4 matrix M with M H_i = I (all q^8 matrices are
// visited and filtered), scoring ranks and non-zero columns of M H_j.
inline BruteNode brute_node(const mds22::ArrayCode& c, int i) {
    const mds22::Field& f = c.field();
    const unsigned q = f.q();
    std::uint64_t total = 1;
    for (int k = 0; k < 8; ++k) total *= q;
    BruteNode best{1 << 20, 1 << 20, {}};
    std::array<Elem, 8> M{};
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t v = code;
        // Most significant digit first so enumeration order is lexicographic.
        for (int k = 7; k >= 0; --k) {
            M[static_cast<std::size_t>(k)] = static_cast<Elem>(v % q);
            v /= q;
        }
        const auto own = mul_2x4_4x2(f, M, c.block(i));
        if (own != std::array<Elem, 4>{1, 0, 0, 1}) continue;
        int bw = 0, io = 0;
        for (int j = 0; j < c.n(); ++j) {
            if (j == i) continue;
            const auto P = mul_2x4_4x2(f, M, c.block(j));
            bw += rank2x2(f, P[0], P[1], P[2], P[3]);
            io += (P[0] || P[2]) + (P[1] || P[3]);
        }
        if (bw < best.beta) {
            best.beta = bw;
            best.beta_witness = M;
        }
        best.gamma = std::min(best.gamma, io);
    }
    return best;
}

// Uniformly random 4x2 blocks, resampled until the whole code is MDS.
inline mds22::ArrayCode random_mds_code(const mds22::Field& f, int n, std::mt19937_64& rng, int max_tries = 100000) {
    std::uniform_int_distribution<Elem> d(0, f.q() - 1);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        std::vector<mds22::Mat> blocks;
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            // Grow greedily: resample a block a few times before restarting.
            bool placed = false;
            for (int t = 0; t < 200 && !placed; ++t) {
                std::vector<Elem> e(8);
                for (auto& x : e) x = d(rng);
                mds22::Mat H(f, 4, 2, e);
                if (mds22::rank(H) != 2) continue;
                bool skew = true;
                for (const auto& B : blocks)
                    if (mds22::det(mds22::hcat(B, H)) == 0) {
                        skew = false;
                        break;
                    }
                if (skew) {
                    blocks.push_back(H);
                    placed = true;
                }
            }
            ok = placed;
        }
        if (ok) return mds22::ArrayCode(f, blocks);
    }
    throw std::runtime_error("could not sample an MDS code");
}

inline mds22::Mat random_invertible(const mds22::Field& f, int k, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> d(0, f.q() - 1);
    for (;;) {
        std::vector<Elem> e(static_cast<std::size_t>(k * k));
        for (auto& x : e) x = d(rng);
        mds22::Mat M(f, k, k, e);
        if (mds22::det(M) != 0) return M;
    }
}

// Permutation times invertible diagonal.
inline mds22::Mat random_monomial2(const mds22::Field& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> d(1, f.q() - 1);
    const Elem a = d(rng), b = d(rng);
    if (rng() & 1) return mds22::Mat(f, 2, 2, {a, 0, 0, b});
    return mds22::Mat(f, 2, 2, {0, a, b, 0});
}

// Prime powers in [lo, hi].
inline std::vector<int> prime_powers(int lo, int hi) {
    std::vector<int> out;
    for (int q = std::max(lo, 2); q <= hi; ++q) {
        int p = 2;
        while (q % p) ++p;
        int r = q;
        while (r % p == 0) r /= p;
        if (r == 1) out.push_back(q);
    }
    return out;
}

}  // namespace oracle

// Evaluates expr and checks that it throws mds22::Error with the given code.
#define CHECK_ERRC(expr, errc)                                   \
    do {                                                         \
        bool thrown_ = false;                                    \
        try {                                                    \
            (void)(expr);                                        \
        } catch (const mds22::Error& e_) {                       \
            thrown_ = true;                                      \
            CHECK_MESSAGE(e_.code() == (errc), e_.what());       \
        }                                                        \
        CHECK_MESSAGE(thrown_, "expected " #errc " from " #expr); \
    } while (0)
