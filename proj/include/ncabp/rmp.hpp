#pragma once

#include "ncabp/bigint.hpp"
#include "ncabp/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace ncabp {

// The span the remote point must stay far from. Construction reduces the
// given matrices to a linearly independent generating subset (first
// occurrence wins), which never changes the span.
struct RemoteInstance {
    PrimeField field;
    std::size_t n = 0;  // matrix side
    std::vector<Mat> span_basis;

    std::size_t k() const { return span_basis.size(); }

    static RemoteInstance make(PrimeField field, std::size_t n, const std::vector<Mat>& mats);
};

std::size_t rank_distance(const Mat& p, const Mat& q);

struct DistanceReport {
    std::size_t distance;
    bool exact;  // false for sampled mode: the value only upper-bounds the true minimum
};

struct Sampled {
    std::uint64_t count;
    std::uint64_t seed;
};
struct Exhaustive {};
using DistanceMode = std::variant<Exhaustive, Sampled>;

// Minimum rank distance from p to the span, by full enumeration (p^k points,
// budget-checked) or by seeded sampling.
DistanceReport min_span_distance(const Mat& p, const RemoteInstance& inst, const DistanceMode& mode);

struct SimpleSolution {
    Mat point;
    std::size_t r;  // guaranteed minimum rank distance, floor(n / (k + 1))
};

// Picks the first r columns of every basis matrix, extends them greedily by
// standard basis vectors to r(k+1) independent vectors, and returns the
// matrix whose first r columns are the extension.
SimpleSolution solve_simple(const RemoteInstance& inst);

// Point outside every subspace, fixed coordinate by coordinate; requires
// sum of subspace sizes < p^ambient (checked exactly).
Vec avoid_union(const std::vector<SubspaceBasis>& subspaces, std::size_t ambient, const PrimeField& field);

// Subspace of flattened n x n matrices spanned by u v^T for u in the given
// subspace and arbitrary v; dimension is exactly dim(u_basis) * n.
SubspaceBasis lift_to_matrix_space(const SubspaceBasis& u_basis, std::size_t n);

std::size_t corank(const std::vector<Vec>& vectors);

struct GoodCollection {
    PrimeField field;
    std::size_t ambient = 0;  // the vector length N
    std::size_t d1 = 0, d2 = 0;
    std::vector<SubspaceBasis> members;

    struct Case1 {
        std::size_t ell, r;
        // key: sorted encodings of the r prefix vectors -> member index
        std::map<std::vector<std::uint64_t>, std::size_t> by_key;
    };
    struct Case2 {
        std::size_t ell, r, t, d_good;
        std::uint32_t c0;
        Rational c;
        // key: (sorted coordinate set S, sorted encodings of A) -> member index
        std::map<std::pair<std::vector<std::size_t>, std::vector<std::uint64_t>>, std::size_t> by_key;
    };
    std::variant<Case1, Case2> tag;
};

// One member per size-r subset A of the length-2*ell prefixes: the span of
// all vectors whose prefix lies in A. Requires ell >= r >= 1, 2*ell <= N.
GoodCollection good_collection_case1(std::size_t n, std::size_t ell, std::size_t r, const PrimeField& field);

// Members V_{S,A} over coordinate sets S of size d_good inside the first t
// positions and prefix sets A of size d_good - ell, with t and d_good derived
// from c0 and c. Requires ell <= r and t <= N.
GoodCollection good_collection_case2(std::size_t n, std::size_t ell, std::size_t r, const PrimeField& field,
                                     std::uint32_t c0, const Rational& c);

// A member containing every vector of a1 (|a1| = d2).
const SubspaceBasis& find_cover(const GoodCollection& coll, const std::vector<Vec>& a1);

struct ImprovedOptions {
    std::uint32_t c0 = 24;
    std::optional<Rational> c;  // case-2 parameter; defaults to 1
};

// Covering-based solver: builds an (ell+1, r)-good collection, lifts it to
// matrix space, adds the input span to every member and avoids the union.
// The result is at rank distance at least r+1 from the span.
Mat solve_improved(const RemoteInstance& inst, std::size_t ell, std::size_t r,
                   const ImprovedOptions& opts = {});

}  // namespace ncabp
