#pragma once

// (n, n-2, 2) array codes given by n parity-check blocks H_1..H_n of shape
// 4x2. Node indices are 0-based in this API; the CLI and JSON diagnostics
// report them 1-based.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mds22/linalg.hpp"

namespace mds22 {

// The two projective column points of one block, each normalized so its first
// non-zero coordinate is 1.
using ColumnPair = std::array<std::vector<Elem>, 2>;

struct MdsCheck {
    bool ok = true;
    // First violating pair (i < j) in lexicographic order when !ok.
    int i = -1, j = -1;
};

class ArrayCode {
public:
    ArrayCode() = default;
    // Validates shape 4x2, rank 2 for every block, and n >= 3.
    ArrayCode(Field f, std::vector<Mat> blocks, bool column_tagged = false);

    const Field& field() const { return f_; }
    int n() const { return static_cast<int>(blocks_.size()); }
    const Mat& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
    const std::vector<Mat>& blocks() const { return blocks_; }

    // Whether the construction designates its block columns as the projective
    // column sets (I/O constructions); controls the "columns" JSON field.
    bool column_tagged() const { return tagged_; }
    std::vector<ColumnPair> column_tags() const;

    MdsCheck check_mds() const;
    bool is_mds() const { return check_mds().ok; }

    // Blocks become U * H_i * V_i.
    ArrayCode transform(const Mat& U, const std::vector<Mat>& V) const;
    // Remove block i (0-based); requires n >= 4.
    ArrayCode puncture(int i) const;
    // Equivalent code with H_{n-1} = [I;0], H_n = [0;I] and every other block of
    // the form [I; W_j]. Requires MDS.
    ArrayCode systematic_form() const;

    bool operator==(const ArrayCode& o) const { return f_ == o.f_ && blocks_ == o.blocks_; }

private:
    Field f_;
    std::vector<Mat> blocks_;
    bool tagged_ = false;
};

std::string to_json(const ArrayCode& c, int indent = -1);
ArrayCode from_json(std::string_view text);

}  // namespace mds22
