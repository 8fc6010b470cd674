#pragma once

#include "ncabp/field.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ncabp {

// A monomial over noncommuting variables x_0..x_{n-1}: the sequence of
// variable indices. The empty word is the constant monomial.
using Word = std::vector<std::uint32_t>;

// Orders words by (length, lexicographic); matches the big-endian index order
// within each length.
struct WordOrder {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Bijection between length-l words over n letters and [0, n^l), big-endian
// base n. Lexicographic word order matches numeric order.
std::uint64_t word_index(const Word& w, std::uint32_t n);
Word index_word(std::uint64_t index, std::size_t length, std::uint32_t n);
std::uint64_t words_of_length(std::size_t length, std::uint32_t n);  // n^length, range-checked

std::string word_to_string(const Word& w);  // "x0.x1" / "e"

// Finitely supported polynomial in the free (noncommutative) algebra over
// GF(p). Zero coefficients are never stored; term iteration is (length, lex).
class NCPoly {
   public:
    NCPoly(PrimeField field, std::uint32_t nvars) : field_(field), nvars_(nvars) {}

    static NCPoly zero(PrimeField field, std::uint32_t nvars) { return NCPoly(field, nvars); }
    static NCPoly constant(PrimeField field, std::uint32_t nvars, std::uint32_t c);
    static NCPoly variable(PrimeField field, std::uint32_t nvars, std::uint32_t i);
    static NCPoly monomial(PrimeField field, std::uint32_t nvars, const Word& w, std::uint32_t c = 1);

    const PrimeField& field() const { return field_; }
    std::uint32_t nvars() const { return nvars_; }
    const std::map<Word, std::uint32_t, WordOrder>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Degree of the zero polynomial is deliberately absent, not 0.
    std::optional<std::size_t> degree() const;
    std::size_t degree_or_throw() const;
    bool is_homogeneous() const;
    bool is_homogeneous_of_degree(std::size_t d) const;

    std::uint32_t coefficient(const Word& w) const;
    void add_term(const Word& w, std::uint32_t c);  // accumulates, drops zeros

    NCPoly homogeneous_part(std::size_t i) const;

    friend NCPoly add(const NCPoly& f, const NCPoly& g);
    friend NCPoly sub(const NCPoly& f, const NCPoly& g);
    friend NCPoly scale(const NCPoly& f, std::uint32_t c);
    friend NCPoly mul(const NCPoly& f, const NCPoly& g);

    friend bool operator==(const NCPoly& f, const NCPoly& g) {
        return f.field_ == g.field_ && f.nvars_ == g.nvars_ && f.terms_ == g.terms_;
    }

   private:
    PrimeField field_;
    std::uint32_t nvars_;
    std::map<Word, std::uint32_t, WordOrder> terms_;
};

}  // namespace ncabp
