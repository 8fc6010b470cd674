#pragma once

#include "ncabp/abp.hpp"
#include "ncabp/linalg.hpp"
#include "ncabp/ncpoly.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ncabp {

// An (a, b)-matrix: rows indexed by the length-a words over the variables,
// columns by the length-b words, both in big-endian word order.
struct CutMatrix {
    Mat base;
    std::size_t row_len = 0, col_len = 0;
    std::uint32_t nvars = 0;

    friend bool operator==(const CutMatrix& x, const CutMatrix& y) {
        return x.base == y.base && x.row_len == y.row_len && x.col_len == y.col_len && x.nvars == y.nvars;
    }
};

// M_k(f) for f homogeneous: entry (m1, m2) is the coefficient of m1*m2 in f.
CutMatrix cut_matrix(const NCPoly& f, std::size_t k);
CutMatrix cut_matrix(const NCPoly& f, std::size_t k, std::size_t degree);

// The structured product: row words split as m1 = m11 m12 (|m12| = l) and
// column words as m2 = m21 m22 (|m21| = m); the (m1, m2) entry is
// m1_factor(m12, m21) * m2_factor(m11, m22).
CutMatrix cross_product(const CutMatrix& m1, const CutMatrix& m2, std::size_t l, std::size_t m,
                        std::size_t k, std::size_t d);

// n^a x n^b matrix with a single 1 in entry (p, q).
CutMatrix elementary(const PrimeField& field, std::uint32_t nvars, std::size_t a, std::size_t b,
                     std::uint64_t p, std::uint64_t q);

// Vertices at path degree exactly k plus edges jumping over k. Edge ids index
// into a.edges.
struct CutSet {
    std::vector<std::string> vertices;
    std::vector<std::size_t> edges;
};

CutSet compute_cut(const Abp& a, std::size_t k);

struct DecompPiece {
    std::uint32_t help;   // index into the program's help list
    std::size_t split;    // the i of M_i(h)
    CutMatrix factor;
};

// M_k(f) = m_prime + sum over pieces of M_i(h) (x) factor, with
// rank(m_prime) <= size and rank(factor) <= size^2.
struct Decomposition {
    PrimeField field;
    std::uint32_t nvars = 0;
    std::size_t degree = 0;
    std::size_t k = 0;
    CutMatrix m_prime;
    std::vector<DecompPiece> pieces;
};

Decomposition decompose(const Abp& a, std::size_t k);

bool verify_decomposition(const Decomposition& dec, const NCPoly& f, const std::vector<NCPoly>& helps,
                          std::size_t d);

// Sum of m*m over all degree d/2 words; its middle cut matrix is the identity.
NCPoly full_rank_poly(const PrimeField& field, std::uint32_t n, std::size_t d);

}  // namespace ncabp
