#include "ncabp/ncpoly.hpp"

#include "ncabp/errors.hpp"
#include "ncabp/limits.hpp"

#include <stdexcept>

namespace ncabp {

std::uint64_t words_of_length(std::size_t length, std::uint32_t n) {
    if (n == 0 && length > 0) throw std::invalid_argument("words_of_length: no variables");
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < length; ++i) {
        if (n != 0 && count > (std::uint64_t(1) << 62) / n)
            throw resource_error("word space n^l overflows the index range");
        count *= n;
    }
    return count;
}

std::uint64_t word_index(const Word& w, std::uint32_t n) {
    std::uint64_t idx = 0;
    for (std::uint32_t letter : w) {
        if (letter >= n) throw std::invalid_argument("word_index: letter out of range");
        if (idx > ((std::uint64_t(1) << 62) - letter) / n)
            throw resource_error("word_index overflows the index range");
        idx = idx * n + letter;
    }
    return idx;
}

Word index_word(std::uint64_t index, std::size_t length, std::uint32_t n) {
    if (index >= words_of_length(length, n)) throw std::invalid_argument("index_word: index out of range");
    Word w(length, 0);
    for (std::size_t j = length; j-- > 0;) {
        w[j] = static_cast<std::uint32_t>(index % n);
        index /= n;
    }
    return w;
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += "x" + std::to_string(w[i]);
    }
    return s;
}

NCPoly NCPoly::constant(PrimeField field, std::uint32_t nvars, std::uint32_t c) {
    NCPoly f(field, nvars);
    f.add_term({}, c);
    return f;
}

NCPoly NCPoly::variable(PrimeField field, std::uint32_t nvars, std::uint32_t i) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    NCPoly f(field, nvars);
    f.add_term({i}, 1);
    return f;
}

NCPoly NCPoly::monomial(PrimeField field, std::uint32_t nvars, const Word& w, std::uint32_t c) {
    NCPoly f(field, nvars);
    for (std::uint32_t letter : w)
        if (letter >= nvars) throw std::invalid_argument("monomial letter out of range");
    f.add_term(w, c);
    return f;
}

std::optional<std::size_t> NCPoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.size();
}

std::size_t NCPoly::degree_or_throw() const {
    auto d = degree();
    if (!d) throw std::domain_error("degree of the zero polynomial is undefined");
    return *d;
}

bool NCPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.size() == terms_.rbegin()->first.size();
}

bool NCPoly::is_homogeneous_of_degree(std::size_t d) const {
    for (const auto& [w, c] : terms_)
        if (w.size() != d) return false;
    return true;
}

std::uint32_t NCPoly::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
}

void NCPoly::add_term(const Word& w, std::uint32_t c) {
    c = field_.reduce(c);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second = field_.add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
    if (terms_.size() > budget().max_terms)
        throw resource_error("polynomial exceeds the term budget of " + std::to_string(budget().max_terms));
}

static void check_compatible(const NCPoly& f, const NCPoly& g, const char* op) {
    if (f.field() != g.field() || f.nvars() != g.nvars())
        throw std::invalid_argument(std::string(op) + ": field or variable-count mismatch");
}

NCPoly add(const NCPoly& f, const NCPoly& g) {
    check_compatible(f, g, "add");
    NCPoly r = f;
    for (const auto& [w, c] : g.terms_) r.add_term(w, c);
    return r;
}

NCPoly sub(const NCPoly& f, const NCPoly& g) {
    check_compatible(f, g, "sub");
    NCPoly r = f;
    for (const auto& [w, c] : g.terms_) r.add_term(w, f.field().neg(c));
    return r;
}

NCPoly scale(const NCPoly& f, std::uint32_t c) {
    NCPoly r(f.field(), f.nvars());
    for (const auto& [w, coeff] : f.terms_) r.add_term(w, f.field().mul(coeff, c));
    return r;
}

NCPoly mul(const NCPoly& f, const NCPoly& g) {
    check_compatible(f, g, "mul");
    NCPoly r(f.field(), f.nvars());
    for (const auto& [wf, cf] : f.terms_) {
        for (const auto& [wg, cg] : g.terms_) {
            Word w = wf;
            w.insert(w.end(), wg.begin(), wg.end());
            r.add_term(w, f.field().mul(cf, cg));
        }
    }
    return r;
}

NCPoly NCPoly::homogeneous_part(std::size_t i) const {
    NCPoly r(field_, nvars_);
    for (const auto& [w, c] : terms_)
        if (w.size() == i) r.terms_.emplace(w, c);
    return r;
}

}  // namespace ncabp
