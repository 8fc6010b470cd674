#pragma once

#include "ncabp/bigint.hpp"
#include "ncabp/field.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ncabp {

struct Vec {
    PrimeField field;
    std::vector<std::uint32_t> e;

    Vec(PrimeField f, std::size_t len) : field(f), e(len, 0) {}
    Vec(PrimeField f, std::vector<std::uint32_t> entries) : field(f), e(std::move(entries)) {}

    std::size_t size() const { return e.size(); }
    std::uint32_t& operator[](std::size_t i) { return e[i]; }
    std::uint32_t operator[](std::size_t i) const { return e[i]; }
    bool is_zero() const;

    friend bool operator==(const Vec& a, const Vec& b) { return a.field == b.field && a.e == b.e; }
    friend bool operator<(const Vec& a, const Vec& b) { return a.e < b.e; }
};

// Dense row-major matrix over GF(p).
struct Mat {
    PrimeField field;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> a;  // rows*cols entries

    Mat(PrimeField f, std::size_t r, std::size_t c) : field(f), rows(r), cols(c), a(r * c, 0) {}

    std::uint32_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    Vec row(std::size_t r) const;
    Vec col(std::size_t c) const;
    Mat transpose() const;
    Vec flatten() const { return Vec(field, a); }
    static Mat from_flat(PrimeField f, std::size_t r, std::size_t c, const Vec& v);
    static Mat identity(PrimeField f, std::size_t n);

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.field == y.field && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator<(const Mat& x, const Mat& y);
};

Mat add(const Mat& x, const Mat& y);
Mat sub(const Mat& x, const Mat& y);
Mat scale(const Mat& x, std::uint32_t c);

struct RrefResult {
    Mat reduced;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

// Unique reduced row echelon form over GF(p).
RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);
std::size_t rank(const std::vector<Vec>& vectors);

// Row span of `rows` in canonical RREF form. Two generating sets with equal
// span produce identical objects, so equality of bases is span equality.
struct SubspaceBasis {
    PrimeField field;
    std::size_t ambient;
    std::vector<Vec> rows;  // nonzero, RREF, strictly increasing pivots

    std::size_t dim() const { return rows.size(); }
    BigInt size() const { return big_pow(field.p(), rows.size()); }

    friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
        return a.field == b.field && a.ambient == b.ambient && a.rows == b.rows;
    }
    friend bool operator<(const SubspaceBasis& a, const SubspaceBasis& b);
};

SubspaceBasis canonicalize(const PrimeField& field, std::size_t ambient, const std::vector<Vec>& vectors);
SubspaceBasis sum_subspaces(const SubspaceBasis& a, const SubspaceBasis& b);
bool contains(const SubspaceBasis& basis, const Vec& v);

struct AffineSolution {
    Vec particular;
    SubspaceBasis nullspace;
};

// Full solution set of a x = b, or nullopt when inconsistent.
std::optional<AffineSolution> solve_affine(const Mat& a, const Vec& b);

// Dimension of {w in span(v) : w_j = prefix_j for 1 <= j <= |prefix|}, or
// nullopt when that slice is empty. The slice is an affine subspace, so its
// cardinality is p^result.
std::optional<std::size_t> prefix_slice_dim(const SubspaceBasis& v, const Vec& prefix);

}  // namespace ncabp
