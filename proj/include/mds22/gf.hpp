#pragma once

// Arithmetic in GF(p^m) with the base-p digit encoding: the integer
// v = c_0 + c_1 p + ... + c_{m-1} p^{m-1} stands for c_0 + c_1 x + ... modulo
// the field's modulus polynomial. Fields up to 4096 elements use log/antilog
// tables; larger ones fall back to polynomial multiplication.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mds22/error.hpp"

namespace mds22 {

using Elem = std::uint32_t;

namespace detail {

struct FieldData {
    unsigned p = 0;
    unsigned m = 0;
    unsigned q = 0;
    std::vector<unsigned> modulus;  // constant term first, monic, length m+1
    std::vector<unsigned> pow_p;    // p^0 .. p^m

    // Present when q <= 4096.
    std::vector<Elem> exp;          // length 2(q-1)
    std::vector<std::uint32_t> log; // log[0] unused
    // Present for small fields; turns add/mul into one load.
    std::vector<std::uint16_t> add_tab;
    std::vector<std::uint16_t> mul_tab;
    std::vector<Elem> neg_tab;

    Elem add_digits(Elem a, Elem b) const;
    Elem neg_digits(Elem a) const;
    Elem mul_poly(Elem a, Elem b) const;
};

}  // namespace detail

// Immutable field context; copies share the same tables.
class Field {
public:
    Field() = default;

    // modulus_override, when given, is a constant-term-first coefficient list
    // of a monic degree-m polynomial and must be irreducible.
    static Field make(unsigned p, unsigned m,
                      std::optional<std::vector<unsigned>> modulus_override = std::nullopt);
    // Convenience: GF(q) with the default modulus.
    static Field of_order(unsigned q);

    unsigned p() const { return d_->p; }
    unsigned m() const { return d_->m; }
    unsigned q() const { return d_->q; }
    const std::vector<unsigned>& modulus() const { return d_->modulus; }
    bool valid() const { return static_cast<bool>(d_); }

    // Two contexts are interchangeable iff characteristic and modulus agree.
    bool operator==(const Field& o) const {
        return d_ == o.d_ || (d_ && o.d_ && d_->p == o.d_->p && d_->modulus == o.d_->modulus);
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

    Elem add(Elem a, Elem b) const {
        const auto& d = *d_;
        if (d.p == 2) return a ^ b;
        if (!d.add_tab.empty()) return d.add_tab[a * d.q + b];
        return d.add_digits(a, b);
    }
    Elem neg(Elem a) const {
        const auto& d = *d_;
        if (d.p == 2) return a;
        if (!d.neg_tab.empty()) return d.neg_tab[a];
        return d.neg_digits(a);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        const auto& d = *d_;
        if (!d.mul_tab.empty()) return d.mul_tab[a * d.q + b];
        if (a == 0 || b == 0) return 0;
        if (!d.log.empty()) return d.exp[d.log[a] + d.log[b]];
        return d.mul_poly(a, b);
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    // Image of an integer under Z -> GF(p) -> GF(q).
    Elem from_int(long long k) const;
    std::vector<unsigned> digits(Elem a) const;
    Elem from_digits(const std::vector<unsigned>& c) const;

    // a + a^p + ... + a^{p^{m-1}}; the result lies in the prime field, so its
    // encoding is < p.
    Elem abs_trace(Elem a) const;
    // Quadratic character via Euler's criterion. Odd characteristic, a != 0.
    bool is_square(Elem a) const;
    // Some b with b^2 = a, if one exists (any characteristic).
    std::optional<Elem> sqrt(Elem a) const;
    // Multiplicative order of a non-zero element.
    std::uint64_t order(Elem a) const;
    // Smallest encoding of multiplicative order q-1.
    Elem primitive_element() const;

    // Distinct roots in this field of a x^2 + b x + c (a != 0), sorted by
    // encoding. Odd characteristic uses the discriminant; characteristic 2
    // reduces to y^2 + y = k and solves that GF(2)-linear system.
    std::vector<Elem> quadratic_roots(Elem a, Elem b, Elem c) const;

    std::string describe() const;

private:
    explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;
};

// Element bound to its field; arithmetic between different fields throws
// FieldMismatch.
class GFElem {
public:
    GFElem() = default;
    GFElem(Field f, Elem v);

    const Field& field() const { return f_; }
    Elem value() const { return v_; }

    GFElem operator+(const GFElem& o) const;
    GFElem operator-(const GFElem& o) const;
    GFElem operator*(const GFElem& o) const;
    GFElem operator/(const GFElem& o) const;
    GFElem operator-() const;
    GFElem inv() const;
    GFElem pow(std::uint64_t e) const;
    bool operator==(const GFElem& o) const { return f_ == o.f_ && v_ == o.v_; }
    bool operator!=(const GFElem& o) const { return !(*this == o); }

private:
    void check(const GFElem& o) const;
    Field f_;
    Elem v_ = 0;
};

bool is_prime(std::uint64_t n);
// (p, m) with q = p^m, or nullopt when q is not a prime power.
std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// True iff the constant-term-first monic polynomial is irreducible over GF(p).
bool is_irreducible(unsigned p, const std::vector<unsigned>& poly);

// GF(q^2) realized as F[y]/(y^2 - s1 y - s0) over a base field F, with the
// element u0 + u1 y encoded as u0 + q*u1. Used for the orbit and cyclic-matrix
// constructions that need a primitive element of the quadratic extension.
class QuadExt {
public:
    explicit QuadExt(Field base);

    const Field& base() const { return f_; }
    // y^2 = s1 y + s0.
    Elem s0() const { return s0_; }
    Elem s1() const { return s1_; }
    std::uint32_t size() const { return f_.q() * f_.q(); }

    std::uint32_t pack(Elem u0, Elem u1) const { return u0 + f_.q() * u1; }
    Elem lo(std::uint32_t x) const { return x % f_.q(); }
    Elem hi(std::uint32_t x) const { return x / f_.q(); }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint64_t order(std::uint32_t a) const;
    // Smallest encoding of order q^2 - 1.
    std::uint32_t primitive_element() const;

private:
    Field f_;
    Elem s0_ = 0, s1_ = 0;
};

}  // namespace mds22
