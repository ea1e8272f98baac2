#pragma once

// Dense matrices over a Field for the tiny shapes used by (n, n-2, 2) array
// codes. Elimination always picks the first non-zero entry in column order so
// echelon forms and kernel bases are reproducible.

#include <initializer_list>
#include <string>
#include <vector>

#include "mds22/gf.hpp"

namespace mds22 {

class Mat {
public:
    Mat() = default;
    Mat(Field f, int rows, int cols);
    Mat(Field f, int rows, int cols, std::vector<Elem> entries);
    // Row-major nested initializer; every row must have the same length.
    static Mat from_rows(Field f, const std::vector<std::vector<Elem>>& rows);
    // Signed integers are mapped through Z -> GF(p); handy for +-1 tables.
    static Mat from_ints(Field f, const std::vector<std::vector<long long>>& rows);
    static Mat identity(Field f, int n);
    static Mat zeros(Field f, int rows, int cols);

    const Field& field() const { return f_; }
    int rows() const { return r_; }
    int cols() const { return c_; }
    const std::vector<Elem>& entries() const { return a_; }

    Elem operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    Elem& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(Elem s) const;
    Mat transpose() const;
    Mat col(int j) const;
    // Columns [j0, j0+count).
    Mat cols_range(int j0, int count) const;
    Mat rows_range(int i0, int count) const;

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_ && f_ == o.f_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    // Lexicographic order on the flattened row-major encodings.
    bool lex_less(const Mat& o) const { return a_ < o.a_; }
    bool is_zero() const;

    std::vector<std::vector<Elem>> to_rows() const;
    std::string str() const;

private:
    Field f_;
    int r_ = 0, c_ = 0;
    std::vector<Elem> a_;
};

Mat hcat(const Mat& a, const Mat& b);
Mat vcat(const Mat& a, const Mat& b);

Elem det(const Mat& m);
int rank(const Mat& m);
Mat inverse(const Mat& m);
bool is_invertible(const Mat& m);
// Reduced row echelon form.
Mat rref(const Mat& m);
// Columns form a basis of {x : m x = 0}, one column per free variable in
// increasing column order, with a 1 in that free position.
Mat kernel_basis(const Mat& m);
int nz_columns(const Mat& m);

// Reduced column echelon basis of the column space: a canonical
// representative of the subspace (rank columns).
Mat colspace_canonical(const Mat& m);
// Basis (as columns) of colspace(a) intersected with colspace(b).
Mat colspace_intersection(const Mat& a, const Mat& b);
// True iff the column spaces of a and b meet only in zero.
bool skew(const Mat& a, const Mat& b);
// Scale a non-zero column vector so its first non-zero coordinate is 1.
std::vector<Elem> normalize_point(const Field& f, std::vector<Elem> v);

// Fast paths for 2x2 matrices given as four entries.
inline Elem det2(const Field& f, Elem a, Elem b, Elem c, Elem d) {
    return f.sub(f.mul(a, d), f.mul(b, c));
}
inline int rank2(const Field& f, Elem a, Elem b, Elem c, Elem d) {
    if (det2(f, a, b, c, d) != 0) return 2;
    return (a | b | c | d) ? 1 : 0;
}
inline int nz2(Elem a, Elem b, Elem c, Elem d) { return ((a | c) ? 1 : 0) + ((b | d) ? 1 : 0); }

}  // namespace mds22
