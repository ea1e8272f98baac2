#include "mds22/gf.hpp"

#include <algorithm>
#include <sstream>

namespace mds22 {

const char* errc_name(Errc e) noexcept {
    switch (e) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::NotIrreducible: return "NotIrreducible";
        case Errc::FieldTooLarge: return "FieldTooLarge";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::EvenCharacteristic: return "EvenCharacteristic";
        case Errc::ZeroInput: return "ZeroInput";
        case Errc::NotSquare: return "NotSquare";
        case Errc::Singular: return "Singular";
        case Errc::ParseError: return "ParseError";
        case Errc::ShapeError: return "ShapeError";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::NotMds: return "NotMds";
        case Errc::OracleDisagreement: return "OracleDisagreement";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::ExtensionUnavailable: return "ExtensionUnavailable";
        case Errc::WrongResidue: return "WrongResidue";
        case Errc::UnsupportedQ: return "UnsupportedQ";
        case Errc::Unconstructible: return "Unconstructible";
        case Errc::NotFound: return "NotFound";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

// ---------------------------------------------------------------------------
// Integer helpers

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    auto f = prime_factors(q);
    if (f.size() != 1) return std::nullopt;
    unsigned m = 0;
    while (q > 1) {
        q /= f[0];
        ++m;
    }
    return std::make_pair(static_cast<unsigned>(f[0]), m);
}

// ---------------------------------------------------------------------------
// Polynomials over GF(p), constant term first.

namespace {

using Poly = std::vector<unsigned>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
    // p is prime, so a^(p-2).
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<unsigned>(r);
}

// Remainder of a modulo b (b non-zero).
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const unsigned lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        for (std::size_t i = 0; i <= db; ++i) {
            a[i + shift] = static_cast<unsigned>((a[i + shift] + p - f * b[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

}  // namespace

bool is_irreducible(unsigned p, const std::vector<unsigned>& poly_in) {
    Poly f = poly_in;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    // Try every monic divisor of degree 1 .. deg/2.
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        Poly g(d + 1, 0);
        g[d] = 1;
        for (std::uint64_t k = 0; k < count; ++k) {
            std::uint64_t t = k;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<unsigned>(t % p);
                t /= p;
            }
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// FieldData slow paths

namespace detail {

Elem FieldData::add_digits(Elem a, Elem b) const {
    Elem r = 0;
    for (unsigned i = 0; i < m; ++i) {
        const unsigned da = a % p, db = b % p;
        a /= p;
        b /= p;
        r += ((da + db) % p) * pow_p[i];
    }
    return r;
}

Elem FieldData::neg_digits(Elem a) const {
    Elem r = 0;
    for (unsigned i = 0; i < m; ++i) {
        const unsigned da = a % p;
        a /= p;
        r += ((p - da) % p) * pow_p[i];
    }
    return r;
}

Elem FieldData::mul_poly(Elem a, Elem b) const {
    std::vector<std::uint64_t> da(m), db(m), prod(2 * m, 0);
    for (unsigned i = 0; i < m; ++i) {
        da[i] = a % p;
        a /= p;
        db[i] = b % p;
        b /= p;
    }
    for (unsigned i = 0; i < m; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    // Reduce with the monic modulus: x^m = -(c_0 + ... + c_{m-1} x^{m-1}).
    for (int k = static_cast<int>(2 * m) - 2; k >= static_cast<int>(m); --k) {
        const std::uint64_t f = prod[k];
        if (!f) continue;
        prod[k] = 0;
        for (unsigned i = 0; i < m; ++i) {
            prod[k - m + i] = (prod[k - m + i] + (p - f) * modulus[i]) % p;
        }
    }
    Elem r = 0;
    for (unsigned i = 0; i < m; ++i) r += static_cast<Elem>(prod[i]) * pow_p[i];
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Field construction

namespace {

std::optional<std::vector<unsigned>> paper_modulus(unsigned p, unsigned m) {
    // Moduli fixed to match fields that appear with explicit relations.
    if (p == 2 && m == 2) return std::vector<unsigned>{1, 1, 1};     // x^2+x+1
    if (p == 3 && m == 2) return std::vector<unsigned>{1, 0, 1};     // x^2+1
    if (p == 5 && m == 2) return std::vector<unsigned>{2, 0, 1};     // x^2+2
    if (p == 3 && m == 3) return std::vector<unsigned>{1, 0, 2, 1};  // x^3+2x^2+1
    if (p == 2 && m == 5) return std::vector<unsigned>{1, 0, 1, 0, 0, 1};  // x^5+x^2+1
    if (p == 3 && m == 4) return std::vector<unsigned>{1, 0, 1, 1, 1};     // x^4+x^3+x^2+1
    return std::nullopt;
}

std::vector<unsigned> smallest_irreducible(unsigned p, unsigned m) {
    if (m == 1) return {0, 1};
    // Lexicographic on (c_0, c_1, ..., c_{m-1}): c_0 is the most significant key.
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m; ++i) count *= p;
    std::vector<unsigned> f(m + 1, 0);
    f[m] = 1;
    for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t t = k;
        for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
            f[i] = static_cast<unsigned>(t % p);
            t /= p;
        }
        if (is_irreducible(p, f)) return f;
    }
    raise(Errc::NotIrreducible, "no irreducible polynomial found");
}

}  // namespace

Field Field::make(unsigned p, unsigned m, std::optional<std::vector<unsigned>> modulus_override) {
    if (!is_prime(p)) raise(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (m < 1) raise(Errc::InvalidArgument, "extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > 65536) raise(Errc::FieldTooLarge, "field size exceeds 65536");
    }

    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->m = m;
    d->q = static_cast<unsigned>(q);
    d->pow_p.resize(m + 1);
    d->pow_p[0] = 1;
    for (unsigned i = 1; i <= m; ++i) d->pow_p[i] = d->pow_p[i - 1] * p;

    if (modulus_override) {
        auto f = *modulus_override;
        if (f.size() != m + 1 || f.back() != 1)
            raise(Errc::NotIrreducible, "modulus must be monic of degree " + std::to_string(m));
        for (unsigned c : f)
            if (c >= p) raise(Errc::NotIrreducible, "modulus coefficient out of range");
        if (m > 1 && !is_irreducible(p, f)) raise(Errc::NotIrreducible, "modulus is reducible");
        d->modulus = std::move(f);
    } else if (auto pm = paper_modulus(p, m)) {
        d->modulus = *pm;
    } else {
        d->modulus = smallest_irreducible(p, m);
    }

    if (p != 2) {
        d->neg_tab.resize(q);
        for (Elem a = 0; a < q; ++a) d->neg_tab[a] = d->neg_digits(a);
        if (q <= 729) {
            d->add_tab.resize(q * q);
            for (Elem a = 0; a < q; ++a)
                for (Elem b = 0; b < q; ++b)
                    d->add_tab[a * q + b] = static_cast<std::uint16_t>(d->add_digits(a, b));
        }
    }

    Field f(d);
    if (q <= 4096) {
        const Elem g = f.primitive_element();  // uses mul_poly: no tables yet
        d->exp.resize(2 * (q - 1));
        d->log.assign(q, 0);
        Elem x = 1;
        for (std::uint32_t k = 0; k < q - 1; ++k) {
            d->exp[k] = x;
            d->exp[k + q - 1] = x;
            d->log[x] = k;
            x = d->mul_poly(x, g);
        }
        if (q <= 256) {
            // Filled through the log tables before being installed, since
            // Field::mul prefers a non-empty mul_tab.
            std::vector<std::uint16_t> tab(static_cast<std::size_t>(q) * q);
            for (Elem a = 0; a < q; ++a)
                for (Elem b = 0; b < q; ++b) tab[a * q + b] = static_cast<std::uint16_t>(f.mul(a, b));
            d->mul_tab = std::move(tab);
        }
    }
    return f;
}

Field Field::of_order(unsigned q) {
    auto pm = prime_power(q);
    if (!pm) raise(Errc::NotPrime, std::to_string(q) + " is not a prime power");
    return make(pm->first, pm->second);
}

// ---------------------------------------------------------------------------
// Field operations

Elem Field::inv(Elem a) const {
    if (a == 0) raise(Errc::DivisionByZero, "inverse of zero");
    const auto& d = *d_;
    if (!d.log.empty()) return d.exp[(d.q - 1 - d.log[a]) % (d.q - 1)];
    return pow(a, d.q - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    const auto& d = *d_;
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!d.log.empty()) {
        const std::uint64_t k = (static_cast<std::uint64_t>(d.log[a]) * (e % (d.q - 1))) % (d.q - 1);
        return d.exp[k];
    }
    Elem r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Elem Field::from_int(long long k) const {
    const long long p = d_->p;
    return static_cast<Elem>(((k % p) + p) % p);
}

std::vector<unsigned> Field::digits(Elem a) const {
    std::vector<unsigned> c(d_->m);
    for (unsigned i = 0; i < d_->m; ++i) {
        c[i] = a % d_->p;
        a /= d_->p;
    }
    return c;
}

Elem Field::from_digits(const std::vector<unsigned>& c) const {
    Elem r = 0;
    for (std::size_t i = 0; i < c.size() && i < d_->m; ++i) r += (c[i] % d_->p) * d_->pow_p[i];
    return r;
}

Elem Field::abs_trace(Elem a) const {
    Elem sum = 0, t = a;
    for (unsigned i = 0; i < d_->m; ++i) {
        sum = add(sum, t);
        t = pow(t, d_->p);
    }
    return sum;
}

bool Field::is_square(Elem a) const {
    if (d_->p == 2) raise(Errc::EvenCharacteristic, "quadratic character needs odd characteristic");
    if (a == 0) raise(Errc::ZeroInput, "quadratic character of zero");
    return pow(a, (d_->q - 1) / 2) == 1;
}

std::optional<Elem> Field::sqrt(Elem a) const {
    const auto& d = *d_;
    if (a == 0) return Elem{0};
    if (d.p == 2) return pow(a, d.q / 2);
    if (!is_square(a)) return std::nullopt;
    if (!d.log.empty()) return d.exp[d.log[a] / 2];
    // Tonelli-Shanks over GF(q).
    std::uint64_t Q = d.q - 1;
    unsigned S = 0;
    while (Q % 2 == 0) {
        Q /= 2;
        ++S;
    }
    Elem z = 2;
    while (z < d.q && (z == 0 || is_square(z))) ++z;
    Elem M = S, c = pow(z, Q), t = pow(a, Q), R = pow(a, (Q + 1) / 2);
    while (t != 1) {
        Elem i = 0, tt = t;
        while (tt != 1) {
            tt = mul(tt, tt);
            ++i;
        }
        Elem b = c;
        for (Elem j = 0; j + 1 + i < M; ++j) b = mul(b, b);
        M = i;
        c = mul(b, b);
        t = mul(t, c);
        R = mul(R, b);
    }
    return R;
}

std::uint64_t Field::order(Elem a) const {
    if (a == 0) raise(Errc::ZeroInput, "order of zero");
    std::uint64_t n = d_->q - 1;
    for (auto r : prime_factors(d_->q - 1)) {
        while (n % r == 0 && pow(a, n / r) == 1) n /= r;
    }
    return n;
}

Elem Field::primitive_element() const {
    const auto& d = *d_;
    if (d.q == 2) return 1;
    const auto fac = prime_factors(d.q - 1);
    for (Elem a = 1; a < d.q; ++a) {
        bool ok = true;
        for (auto r : fac) {
            if (pow(a, (d.q - 1) / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return a;
    }
    raise(Errc::NotFound, "no primitive element");
}

std::vector<Elem> Field::quadratic_roots(Elem a, Elem b, Elem c) const {
    if (a == 0) raise(Errc::InvalidArgument, "leading coefficient must be non-zero");
    std::vector<Elem> roots;
    if (d_->p != 2) {
        const Elem disc = sub(mul(b, b), mul(from_int(4), mul(a, c)));
        const Elem two_a_inv = inv(mul(from_int(2), a));
        if (disc == 0) {
            roots.push_back(mul(neg(b), two_a_inv));
        } else if (auto r = sqrt(disc)) {
            roots.push_back(mul(sub(*r, b), two_a_inv));
            roots.push_back(mul(sub(neg(*r), b), two_a_inv));
        }
    } else if (b == 0) {
        roots.push_back(*sqrt(div(c, a)));
    } else {
        // x = (b/a) y turns the equation into y^2 + y = a c / b^2.
        const Elem k = div(mul(a, c), mul(b, b));
        const unsigned m = d_->m;
        // Columns of the GF(2)-linear map y -> y^2 + y on bit vectors.
        std::vector<std::uint32_t> col(m);
        for (unsigned i = 0; i < m; ++i) {
            const Elem e = Elem{1} << i;
            col[i] = add(mul(e, e), e);
        }
        // Row-reduce the augmented system [col | k] with bitmask rows.
        std::vector<std::uint64_t> rows(m, 0);
        for (unsigned r = 0; r < m; ++r) {
            std::uint64_t row = 0;
            for (unsigned i = 0; i < m; ++i)
                if ((col[i] >> r) & 1u) row |= std::uint64_t{1} << i;
            if ((k >> r) & 1u) row |= std::uint64_t{1} << m;
            rows[r] = row;
        }
        std::vector<int> pivot_col;
        unsigned rank = 0;
        for (unsigned cidx = 0; cidx < m && rank < m; ++cidx) {
            unsigned sel = rank;
            while (sel < m && !((rows[sel] >> cidx) & 1u)) ++sel;
            if (sel == m) continue;
            std::swap(rows[rank], rows[sel]);
            for (unsigned r = 0; r < m; ++r)
                if (r != rank && ((rows[r] >> cidx) & 1u)) rows[r] ^= rows[rank];
            pivot_col.push_back(static_cast<int>(cidx));
            ++rank;
        }
        for (unsigned r = rank; r < m; ++r)
            if ((rows[r] >> m) & 1u) return roots;  // inconsistent: Tr(k) = 1
        Elem y = 0;
        for (unsigned r = 0; r < rank; ++r)
            if ((rows[r] >> m) & 1u) y |= Elem{1} << pivot_col[r];
        const Elem scale = div(b, a);
        roots.push_back(mul(scale, y));
        roots.push_back(mul(scale, y ^ 1u));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "GF(" << d_->q << ")";
    if (d_->m > 1) {
        os << " modulus ";
        bool first = true;
        for (int i = static_cast<int>(d_->m); i >= 0; --i) {
            const unsigned c = d_->modulus[i];
            if (!c) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0) {
                os << c;
                continue;
            }
            if (c != 1) os << c;
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// GFElem

GFElem::GFElem(Field f, Elem v) : f_(std::move(f)), v_(v) {
    if (v_ >= f_.q()) raise(Errc::InvalidArgument, "element encoding out of range");
}

void GFElem::check(const GFElem& o) const {
    if (f_ != o.f_) raise(Errc::FieldMismatch, "operands belong to different fields");
}

GFElem GFElem::operator+(const GFElem& o) const {
    check(o);
    return {f_, f_.add(v_, o.v_)};
}
GFElem GFElem::operator-(const GFElem& o) const {
    check(o);
    return {f_, f_.sub(v_, o.v_)};
}
GFElem GFElem::operator*(const GFElem& o) const {
    check(o);
    return {f_, f_.mul(v_, o.v_)};
}
GFElem GFElem::operator/(const GFElem& o) const {
    check(o);
    return {f_, f_.div(v_, o.v_)};
}
GFElem GFElem::operator-() const { return {f_, f_.neg(v_)}; }
GFElem GFElem::inv() const { return {f_, f_.inv(v_)}; }
GFElem GFElem::pow(std::uint64_t e) const { return {f_, f_.pow(v_, e)}; }

// ---------------------------------------------------------------------------
// QuadExt

QuadExt::QuadExt(Field base) : f_(std::move(base)) {
    const unsigned q = f_.q();
    // Smallest monic irreducible y^2 + c1 y + c0, keyed on (c0, c1).
    for (Elem c0 = 0; c0 < q; ++c0) {
        for (Elem c1 = 0; c1 < q; ++c1) {
            bool has_root = false;
            for (Elem x = 0; x < q && !has_root; ++x)
                has_root = f_.add(f_.add(f_.mul(x, x), f_.mul(c1, x)), c0) == 0;
            if (!has_root) {
                s0_ = f_.neg(c0);
                s1_ = f_.neg(c1);
                return;
            }
        }
    }
    raise(Errc::NotIrreducible, "no irreducible quadratic");
}

std::uint32_t QuadExt::add(std::uint32_t a, std::uint32_t b) const {
    return pack(f_.add(lo(a), lo(b)), f_.add(hi(a), hi(b)));
}

std::uint32_t QuadExt::sub(std::uint32_t a, std::uint32_t b) const {
    return pack(f_.sub(lo(a), lo(b)), f_.sub(hi(a), hi(b)));
}

std::uint32_t QuadExt::mul(std::uint32_t a, std::uint32_t b) const {
    const Elem a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    const Elem t = f_.mul(a1, b1);
    const Elem r0 = f_.add(f_.mul(a0, b0), f_.mul(t, s0_));
    const Elem r1 = f_.add(f_.add(f_.mul(a0, b1), f_.mul(a1, b0)), f_.mul(t, s1_));
    return pack(r0, r1);
}

std::uint32_t QuadExt::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::uint32_t QuadExt::inv(std::uint32_t a) const {
    if (a == 0) raise(Errc::DivisionByZero, "inverse of zero");
    return pow(a, static_cast<std::uint64_t>(size()) - 2);
}

std::uint64_t QuadExt::order(std::uint32_t a) const {
    if (a == 0) raise(Errc::ZeroInput, "order of zero");
    std::uint64_t n = size() - 1;
    for (auto r : prime_factors(size() - 1)) {
        while (n % r == 0 && pow(a, n / r) == 1) n /= r;
    }
    return n;
}

std::uint32_t QuadExt::primitive_element() const {
    for (std::uint32_t a = 1; a < size(); ++a)
        if (order(a) == size() - 1) return a;
    raise(Errc::NotFound, "no primitive element");
}

}  // namespace mds22
