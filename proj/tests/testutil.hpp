#pragma once

#include "ncabp/abp.hpp"
#include "ncabp/linalg.hpp"
#include "ncabp/ncpoly.hpp"

#include <random>
#include <vector>

namespace ncabp::test {

inline Mat mat_from(PrimeField f, std::size_t rows, std::size_t cols,
                    std::initializer_list<std::uint32_t> vals) {
    Mat m(f, rows, cols);
    std::size_t i = 0;
    for (auto v : vals) m.a[i++] = v;
    return m;
}

inline Vec vec_from(PrimeField f, std::initializer_list<std::uint32_t> vals) {
    return Vec(f, std::vector<std::uint32_t>(vals));
}

// All vectors in the span of the basis rows, by enumerating coefficient
// combinations. The independent oracle for contains/canonicalize.
inline std::vector<Vec> enumerate_span(const SubspaceBasis& basis) {
    std::vector<Vec> out;
    const std::size_t k = basis.dim();
    std::vector<std::uint32_t> coeff(k, 0);
    for (;;) {
        Vec v(basis.field, basis.ambient);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < basis.ambient; ++c)
                v[c] = basis.field.add(v[c], basis.field.mul(coeff[i], basis.rows[i][c]));
        out.push_back(std::move(v));
        std::size_t pos = 0;
        while (pos < k && ++coeff[pos] == basis.field.p()) coeff[pos++] = 0;
        if (pos == k) break;
    }
    return out;
}

// Every subspace of GF(p)^ambient with dimension <= max_dim, deduplicated by
// canonical basis.
std::vector<SubspaceBasis> enumerate_subspaces(const PrimeField& f, std::size_t ambient, std::size_t max_dim);

inline NCPoly random_poly(std::mt19937_64& rng, PrimeField f, std::uint32_t n, std::size_t max_deg,
                          std::size_t terms) {
    NCPoly p(f, n);
    std::uniform_int_distribution<std::size_t> len_dist(0, max_deg);
    std::uniform_int_distribution<std::uint32_t> var_dist(0, n - 1);
    std::uniform_int_distribution<std::uint32_t> coeff_dist(1, f.p() - 1);
    for (std::size_t t = 0; t < terms; ++t) {
        Word w(len_dist(rng));
        for (auto& letter : w) letter = var_dist(rng);
        p.add_term(w, coeff_dist(rng));
    }
    return p;
}

inline NCPoly random_homogeneous_poly(std::mt19937_64& rng, PrimeField f, std::uint32_t n,
                                      std::size_t deg, std::size_t terms) {
    NCPoly p(f, n);
    std::uniform_int_distribution<std::uint32_t> var_dist(0, n - 1);
    std::uniform_int_distribution<std::uint32_t> coeff_dist(1, f.p() - 1);
    while (p.is_zero()) {
        for (std::size_t t = 0; t < terms; ++t) {
            Word w(deg);
            for (auto& letter : w) letter = var_dist(rng);
            p.add_term(w, coeff_dist(rng));
        }
    }
    return p;
}

// Random program whose output is homogeneous of some degree >= 1.
//
// A random layered skeleton with possibly inhomogeneous helps computes an
// arbitrary f; appending one source->sink edge labeled with a fresh help
// worth f^(d) - f cancels everything but the top part, so the instance
// exercises the full homogenization rewrite (constant parts included).
struct HomogeneousOutputCase {
    Abp program;
    std::size_t degree;
};

HomogeneousOutputCase random_homogeneous_output_abp(std::mt19937_64& rng, std::uint32_t p);

// Random homogeneous-by-construction program with homogeneous helps of
// degree in [2, 3]; suitable input for the cut decomposition.
Abp random_homogeneous_abp(std::mt19937_64& rng, std::uint32_t p);

}  // namespace ncabp::test
