#include "mds22/linalg.hpp"

#include <sstream>

namespace mds22 {

Mat::Mat(Field f, int rows, int cols)
    : f_(std::move(f)), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

Mat::Mat(Field f, int rows, int cols, std::vector<Elem> entries)
    : f_(std::move(f)), r_(rows), c_(cols), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(rows) * cols)
        raise(Errc::ShapeError, "entry count does not match shape");
    for (Elem e : a_)
        if (e >= f_.q()) raise(Errc::InvalidArgument, "matrix entry out of field range");
}

Mat Mat::from_rows(Field f, const std::vector<std::vector<Elem>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    std::vector<Elem> e;
    e.reserve(static_cast<std::size_t>(r) * c);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) raise(Errc::ShapeError, "ragged rows");
        e.insert(e.end(), row.begin(), row.end());
    }
    return Mat(std::move(f), r, c, std::move(e));
}

Mat Mat::from_ints(Field f, const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<Elem>> conv;
    for (const auto& row : rows) {
        std::vector<Elem> r;
        for (long long v : row) r.push_back(f.from_int(v));
        conv.push_back(std::move(r));
    }
    return from_rows(std::move(f), conv);
}

Mat Mat::identity(Field f, int n) {
    Mat m(std::move(f), n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::zeros(Field f, int rows, int cols) { return Mat(std::move(f), rows, cols); }

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) raise(Errc::ShapeError, "product shape mismatch");
    if (f_ != o.f_) raise(Errc::FieldMismatch, "matrices over different fields");
    Mat out(f_, r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Elem a = (*this)(i, k);
            if (!a) continue;
            for (int j = 0; j < o.c_; ++j) out(i, j) = f_.add(out(i, j), f_.mul(a, o(k, j)));
        }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) raise(Errc::ShapeError, "sum shape mismatch");
    if (f_ != o.f_) raise(Errc::FieldMismatch, "matrices over different fields");
    Mat out(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = f_.add(a_[k], o.a_[k]);
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) raise(Errc::ShapeError, "difference shape mismatch");
    if (f_ != o.f_) raise(Errc::FieldMismatch, "matrices over different fields");
    Mat out(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = f_.sub(a_[k], o.a_[k]);
    return out;
}

Mat Mat::scaled(Elem s) const {
    Mat out(*this);
    for (auto& e : out.a_) e = f_.mul(e, s);
    return out;
}

Mat Mat::transpose() const {
    Mat out(f_, c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Mat Mat::col(int j) const { return cols_range(j, 1); }

Mat Mat::cols_range(int j0, int count) const {
    if (j0 < 0 || count < 0 || j0 + count > c_) raise(Errc::IndexOutOfRange, "column range");
    Mat out(f_, r_, count);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < count; ++j) out(i, j) = (*this)(i, j0 + j);
    return out;
}

Mat Mat::rows_range(int i0, int count) const {
    if (i0 < 0 || count < 0 || i0 + count > r_) raise(Errc::IndexOutOfRange, "row range");
    Mat out(f_, count, c_);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < c_; ++j) out(i, j) = (*this)(i0 + i, j);
    return out;
}

bool Mat::is_zero() const {
    for (Elem e : a_)
        if (e) return false;
    return true;
}

std::vector<std::vector<Elem>> Mat::to_rows() const {
    std::vector<std::vector<Elem>> out(r_);
    for (int i = 0; i < r_; ++i) out[i].assign(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
    return out;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

Mat hcat(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) raise(Errc::ShapeError, "hcat row mismatch");
    Mat out(a.field(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

Mat vcat(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) raise(Errc::ShapeError, "vcat column mismatch");
    Mat out(a.field(), a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
        for (int i = 0; i < b.rows(); ++i) out(a.rows() + i, j) = b(i, j);
    }
    return out;
}

namespace {

// In-place reduction to RREF; returns pivot columns.
std::vector<int> reduce(Mat& m) {
    const Field& f = m.field();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int sel = row;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        const Elem inv = f.inv(m(row, col));
        for (int j = 0; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Elem factor = m(i, col);
            for (int j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

Elem det(const Mat& m) {
    if (m.rows() != m.cols()) raise(Errc::NotSquare, "determinant of a non-square matrix");
    const Field& f = m.field();
    const int n = m.rows();
    if (n == 0) return 1;
    if (n == 2) return det2(f, m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    Mat a(m);
    Elem d = 1;
    for (int col = 0; col < n; ++col) {
        int sel = col;
        while (sel < n && a(sel, col) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            for (int j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
            d = f.neg(d);
        }
        d = f.mul(d, a(col, col));
        const Elem inv = f.inv(a(col, col));
        for (int i = col + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            const Elem factor = f.mul(a(i, col), inv);
            for (int j = col; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(col, j)));
        }
    }
    return d;
}

int rank(const Mat& m) {
    if (m.rows() == 2 && m.cols() == 2) return rank2(m.field(), m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    Mat a(m);
    return static_cast<int>(reduce(a).size());
}

bool is_invertible(const Mat& m) { return m.rows() == m.cols() && det(m) != 0; }

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) raise(Errc::NotSquare, "inverse of a non-square matrix");
    const int n = m.rows();
    Mat aug = hcat(m, Mat::identity(m.field(), n));
    const auto piv = reduce(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) raise(Errc::Singular, "matrix is singular");
    return aug.cols_range(n, n);
}

Mat rref(const Mat& m) {
    Mat a(m);
    reduce(a);
    return a;
}

Mat kernel_basis(const Mat& m) {
    Mat a(m);
    const auto piv = reduce(a);
    const Field& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat k(f, m.cols(), static_cast<int>(free_cols.size()));
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        const int fc = free_cols[t];
        k(fc, static_cast<int>(t)) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            k(piv[r], static_cast<int>(t)) = f.neg(a(static_cast<int>(r), fc));
    }
    return k;
}

int nz_columns(const Mat& m) {
    int count = 0;
    for (int j = 0; j < m.cols(); ++j) {
        for (int i = 0; i < m.rows(); ++i) {
            if (m(i, j)) {
                ++count;
                break;
            }
        }
    }
    return count;
}

Mat colspace_canonical(const Mat& m) {
    Mat r = rref(m.transpose());
    const int rk = rank(r);
    return r.rows_range(0, rk).transpose();
}

Mat colspace_intersection(const Mat& a, const Mat& b) {
    // x in the kernel of [a | -b] gives a x_a = b x_b.
    Mat k = kernel_basis(hcat(a, b.scaled(b.field().neg(1))));
    Mat vecs = a * k.rows_range(0, a.cols());
    return colspace_canonical(vecs);
}

bool skew(const Mat& a, const Mat& b) { return rank(hcat(a, b)) == rank(a) + rank(b); }

std::vector<Elem> normalize_point(const Field& f, std::vector<Elem> v) {
    for (Elem e : v) {
        if (e) {
            const Elem inv = f.inv(e);
            for (auto& x : v) x = f.mul(x, inv);
            return v;
        }
    }
    raise(Errc::ZeroInput, "zero vector has no projective point");
}

}  // namespace mds22
