#include "mds22/code.hpp"

#include <json.hpp>

namespace mds22 {

using nlohmann::json;

ArrayCode::ArrayCode(Field f, std::vector<Mat> blocks, bool column_tagged)
    : f_(std::move(f)), blocks_(std::move(blocks)), tagged_(column_tagged) {
    if (blocks_.size() < 3) raise(Errc::ShapeError, "a code needs at least 3 blocks");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Mat& b = blocks_[i];
        if (b.rows() != 4 || b.cols() != 2)
            raise(Errc::ShapeError, "block " + std::to_string(i + 1) + " is not 4x2");
        if (b.field() != f_) raise(Errc::FieldMismatch, "block " + std::to_string(i + 1) + " field");
        if (rank(b) != 2) raise(Errc::ShapeError, "block " + std::to_string(i + 1) + " has rank < 2");
    }
}

std::vector<ColumnPair> ArrayCode::column_tags() const {
    std::vector<ColumnPair> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        ColumnPair cp;
        for (int j = 0; j < 2; ++j) {
            std::vector<Elem> v(4);
            for (int r = 0; r < 4; ++r) v[r] = b(r, j);
            cp[j] = normalize_point(f_, std::move(v));
        }
        out.push_back(std::move(cp));
    }
    return out;
}

MdsCheck ArrayCode::check_mds() const {
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (det(hcat(blocks_[i], blocks_[j])) == 0) return {false, i, j};
    return {};
}

ArrayCode ArrayCode::transform(const Mat& U, const std::vector<Mat>& V) const {
    if (U.rows() != 4 || U.cols() != 4) raise(Errc::ShapeError, "U must be 4x4");
    if (static_cast<int>(V.size()) != n()) raise(Errc::ShapeError, "need one V_i per block");
    if (!is_invertible(U)) raise(Errc::Singular, "U is singular");
    std::vector<Mat> out;
    out.reserve(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (V[i].rows() != 2 || V[i].cols() != 2) raise(Errc::ShapeError, "V_i must be 2x2");
        if (!is_invertible(V[i])) raise(Errc::Singular, "V_" + std::to_string(i + 1) + " is singular");
        out.push_back(U * blocks_[i] * V[i]);
    }
    return ArrayCode(f_, std::move(out), tagged_);
}

ArrayCode ArrayCode::puncture(int i) const {
    if (i < 0 || i >= n()) raise(Errc::IndexOutOfRange, "node index " + std::to_string(i + 1));
    if (n() < 4) raise(Errc::OutOfRange, "puncturing needs n >= 4");
    std::vector<Mat> out = blocks_;
    out.erase(out.begin() + i);
    return ArrayCode(f_, std::move(out), tagged_);
}

ArrayCode ArrayCode::systematic_form() const {
    const auto chk = check_mds();
    if (!chk.ok) raise(Errc::NotMds, "systematic form needs an MDS code");
    const Mat U = inverse(hcat(blocks_[n() - 2], blocks_[n() - 1]));
    std::vector<Mat> V;
    for (int j = 0; j < n(); ++j) {
        if (j >= n() - 2) {
            V.push_back(Mat::identity(f_, 2));
            continue;
        }
        const Mat top = (U * blocks_[j]).rows_range(0, 2);
        V.push_back(inverse(top));
    }
    return ArrayCode(f_, blocks_, false).transform(U, V);
}

std::string to_json(const ArrayCode& c, int indent) {
    json j;
    const Field& f = c.field();
    j["p"] = f.p();
    j["m"] = f.m();
    j["modulus"] = f.modulus();
    j["n"] = c.n();
    json blocks = json::array();
    for (const auto& b : c.blocks()) blocks.push_back(b.to_rows());
    j["blocks"] = blocks;
    if (c.column_tagged()) {
        json cols = json::array();
        for (const auto& cp : c.column_tags()) cols.push_back({cp[0], cp[1]});
        j["columns"] = cols;
    }
    return j.dump(indent);
}

ArrayCode from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        raise(Errc::ParseError, e.what());
    }
    unsigned p = 0, m = 0;
    int n = 0;
    std::vector<unsigned> modulus;
    std::vector<std::vector<std::vector<Elem>>> raw;
    try {
        p = j.at("p").get<unsigned>();
        m = j.at("m").get<unsigned>();
        modulus = j.at("modulus").get<std::vector<unsigned>>();
        n = j.at("n").get<int>();
        raw = j.at("blocks").get<std::vector<std::vector<std::vector<Elem>>>>();
    } catch (const json::exception& e) {
        raise(Errc::ParseError, e.what());
    }
    Field f;
    try {
        f = Field::make(p, m, modulus);
    } catch (const Error& e) {
        if (e.code() == Errc::NotIrreducible) throw;
        raise(Errc::ParseError, e.what());
    }
    if (static_cast<int>(raw.size()) != n) raise(Errc::ShapeError, "\"n\" does not match block count");
    std::vector<Mat> blocks;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& b = raw[i];
        if (b.size() != 4) raise(Errc::ShapeError, "block " + std::to_string(i + 1) + " needs 4 rows");
        for (const auto& row : b) {
            if (row.size() != 2) raise(Errc::ShapeError, "block " + std::to_string(i + 1) + " needs 2 columns");
            for (Elem e : row)
                if (e >= f.q()) raise(Errc::ParseError, "element encoding out of range");
        }
        blocks.push_back(Mat::from_rows(f, b));
    }
    const bool tagged = j.contains("columns");
    ArrayCode code(f, std::move(blocks), tagged);
    if (tagged) {
        std::vector<std::vector<std::vector<Elem>>> cols;
        try {
            cols = j.at("columns").get<std::vector<std::vector<std::vector<Elem>>>>();
        } catch (const json::exception& e) {
            raise(Errc::ParseError, e.what());
        }
        const auto expect = code.column_tags();
        if (cols.size() != expect.size()) raise(Errc::ShapeError, "\"columns\" length mismatch");
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i].size() != 2 || cols[i][0] != expect[i][0] || cols[i][1] != expect[i][1])
                raise(Errc::ParseError, "\"columns\" entry " + std::to_string(i + 1) + " does not match its block");
        }
    }
    return code;
}

}  // namespace mds22
