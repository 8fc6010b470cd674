#include "ncabp/cutmatrix.hpp"

#include "ncabp/errors.hpp"
#include "ncabp/limits.hpp"

#include <map>
#include <stdexcept>

namespace ncabp {

namespace {

std::uint64_t checked_side(std::uint32_t n, std::size_t len) {
    std::uint64_t side = words_of_length(len, n);
    if (side > budget().max_matrix_side)
        throw resource_error("matrix side n^" + std::to_string(len) + " = " + std::to_string(side) +
                             " exceeds the cap of " + std::to_string(budget().max_matrix_side) +
                             "; reduce the degree or variable count");
    return side;
}

}  // namespace

CutMatrix cut_matrix(const NCPoly& f, std::size_t k) {
    return cut_matrix(f, k, f.degree_or_throw());
}

CutMatrix cut_matrix(const NCPoly& f, std::size_t k, std::size_t degree) {
    if (!f.is_homogeneous_of_degree(degree))
        throw std::invalid_argument("cut_matrix requires a polynomial homogeneous of degree " +
                                    std::to_string(degree));
    if (k > degree) throw std::invalid_argument("cut position k exceeds the degree");
    const std::uint32_t n = f.nvars();
    std::uint64_t rows = checked_side(n, k);
    std::uint64_t cols = checked_side(n, degree - k);
    CutMatrix m{Mat(f.field(), rows, cols), k, degree - k, n};
    for (const auto& [w, c] : f.terms()) {
        Word left(w.begin(), w.begin() + k);
        Word right(w.begin() + k, w.end());
        m.base.at(word_index(left, n), word_index(right, n)) = c;
    }
    return m;
}

CutMatrix cross_product(const CutMatrix& m1, const CutMatrix& m2, std::size_t l, std::size_t m,
                        std::size_t k, std::size_t d) {
    if (l > k || m > d - k) throw std::invalid_argument("cross_product: split lengths out of range");
    const std::uint32_t n = m1.nvars;
    if (m2.nvars != n || m1.base.field != m2.base.field)
        throw std::invalid_argument("cross_product: factor alphabet mismatch");
    if (m1.row_len != l || m1.col_len != m || m2.row_len != k - l || m2.col_len != (d - k) - m)
        throw std::invalid_argument("cross_product: factor shapes do not match (l, m, k, d)");

    std::uint64_t rows = checked_side(n, k);
    std::uint64_t cols = checked_side(n, d - k);
    const std::uint64_t suffix_rows = words_of_length(l, n);          // |m12| side
    const std::uint64_t suffix_cols = words_of_length((d - k) - m, n);  // |m22| side
    CutMatrix r{Mat(m1.base.field, rows, cols), k, d - k, n};
    for (std::uint64_t i1 = 0; i1 < rows; ++i1) {
        const std::uint64_t i11 = i1 / suffix_rows, i12 = i1 % suffix_rows;
        for (std::uint64_t i2 = 0; i2 < cols; ++i2) {
            const std::uint64_t i21 = i2 / suffix_cols, i22 = i2 % suffix_cols;
            std::uint32_t v = m1.base.field.mul(m1.base.at(i12, i21), m2.base.at(i11, i22));
            r.base.at(i1, i2) = v;
        }
    }
    return r;
}

CutMatrix elementary(const PrimeField& field, std::uint32_t nvars, std::size_t a, std::size_t b,
                     std::uint64_t p, std::uint64_t q) {
    std::uint64_t rows = checked_side(nvars, a);
    std::uint64_t cols = checked_side(nvars, b);
    if (p >= rows || q >= cols) throw std::invalid_argument("elementary: entry position out of range");
    CutMatrix m{Mat(field, rows, cols), a, b, nvars};
    m.base.at(p, q) = 1;
    return m;
}

namespace {

struct DegreeMap {
    Abp trimmed;
    std::vector<std::optional<std::size_t>> degree_by_orig_vertex;  // indexed like a.vertex_ids
};

DegreeMap degrees_or_throw(const Abp& a) {
    auto rep = homogeneity_report(a);
    if (!rep.is_homogeneous)
        throw std::invalid_argument("program is not homogeneous: " + rep.violations.front());
    DegreeMap dm{trim_to_paths(a), {}};
    dm.degree_by_orig_vertex.resize(a.vertex_ids.size());
    for (std::size_t v = 0; v < a.vertex_ids.size(); ++v) {
        auto it = rep.vertex_degree.find(a.vertex_ids[v]);
        if (it != rep.vertex_degree.end()) dm.degree_by_orig_vertex[v] = it->second;
    }
    return dm;
}

}  // namespace

CutSet compute_cut(const Abp& a, std::size_t k) {
    auto dm = degrees_or_throw(a);
    auto sink_deg = dm.degree_by_orig_vertex[a.sink];
    if (!sink_deg || k > *sink_deg)
        throw std::invalid_argument("cut position k exceeds the program degree");
    CutSet cut;
    for (std::size_t v = 0; v < a.vertex_ids.size(); ++v)
        if (dm.degree_by_orig_vertex[v] && *dm.degree_by_orig_vertex[v] == k)
            cut.vertices.push_back(a.vertex_ids[v]);
    for (std::size_t e = 0; e < a.edges.size(); ++e) {
        auto du = dm.degree_by_orig_vertex[a.edges[e].from];
        auto dv = dm.degree_by_orig_vertex[a.edges[e].to];
        if (du && dv && *du < k && k < *dv) cut.edges.push_back(e);
    }
    return cut;
}

Decomposition decompose(const Abp& a, std::size_t k) {
    auto dm = degrees_or_throw(a);
    for (const auto& h : a.helps)
        if (h.is_zero() || !h.is_homogeneous() || h.degree_or_throw() < 2)
            throw std::invalid_argument("decompose requires homogeneous help polynomials of degree >= 2");
    NCPoly f = evaluate(a);
    auto sink_deg = dm.degree_by_orig_vertex[a.sink];
    std::size_t d = sink_deg ? *sink_deg : 0;
    if (!f.is_homogeneous_of_degree(d))
        throw std::logic_error("homogeneous program output disagrees with its path degree");
    if (k > d) throw std::invalid_argument("cut position k exceeds the program degree");
    const std::uint32_t n = a.nvars;

    // Source->v and v->sink polynomials of every vertex.
    auto order_edges = [&](bool forward) {
        std::vector<NCPoly> g(a.vertex_ids.size(), NCPoly::zero(a.field, n));
        // fixed-point over edges; programs are small and acyclic
        g[forward ? a.source : a.sink] = NCPoly::constant(a.field, n, 1);
        for (std::size_t pass = 0; pass <= a.vertex_ids.size(); ++pass) {
            std::vector<NCPoly> next(a.vertex_ids.size(), NCPoly::zero(a.field, n));
            next[forward ? a.source : a.sink] = NCPoly::constant(a.field, n, 1);
            for (const auto& e : a.edges) {
                NCPoly lab = NCPoly::constant(a.field, n, e.label.c);
                for (const auto& [i, c] : e.label.x) lab.add_term({i}, c);
                for (const auto& [j, c] : e.label.y) lab = add(lab, scale(a.helps[j], c));
                if (forward)
                    next[e.to] = add(next[e.to], mul(g[e.from], lab));
                else
                    next[e.from] = add(next[e.from], mul(lab, g[e.to]));
            }
            g.swap(next);
        }
        return g;
    };
    // evaluate() already validated shape assumptions via degrees_or_throw
    std::vector<NCPoly> fsv = order_edges(true);
    std::vector<NCPoly> fvt = order_edges(false);

    auto coeff_vec = [&](const NCPoly& p, std::size_t len) {
        std::uint64_t sz = checked_side(n, len);
        Vec v(a.field, sz);
        for (const auto& [w, c] : p.terms()) v[word_index(w, n)] = c;
        return v;
    };

    std::uint64_t rows = checked_side(n, k);
    std::uint64_t cols = checked_side(n, d - k);
    Decomposition dec{a.field, n, d, k, CutMatrix{Mat(a.field, rows, cols), k, d - k, n}, {}};

    auto add_outer = [&](Mat& target, const Vec& left, const Vec& right, std::uint32_t beta) {
        for (std::size_t r = 0; r < left.size(); ++r) {
            if (left[r] == 0) continue;
            std::uint32_t lr = a.field.mul(left[r], beta);
            if (lr == 0) continue;
            for (std::size_t c = 0; c < right.size(); ++c)
                if (right[c]) target.at(r, c) = a.field.add(target.at(r, c), a.field.mul(lr, right[c]));
        }
    };

    for (std::size_t v = 0; v < a.vertex_ids.size(); ++v) {
        if (!dm.degree_by_orig_vertex[v] || *dm.degree_by_orig_vertex[v] != k) continue;
        add_outer(dec.m_prime.base, coeff_vec(fsv[v], k), coeff_vec(fvt[v], d - k), 1);
    }

    std::map<std::pair<std::uint32_t, std::size_t>, Mat> piece_sum;
    for (const auto& e : a.edges) {
        auto du = dm.degree_by_orig_vertex[e.from];
        auto dv = dm.degree_by_orig_vertex[e.to];
        if (!du || !dv || !(*du < k && k < *dv)) continue;
        std::size_t i = k - *du;
        Vec left = coeff_vec(fsv[e.from], *du);
        Vec right = coeff_vec(fvt[e.to], d - *dv);
        for (const auto& [j, beta] : e.label.y) {
            auto key = std::make_pair(j, i);
            auto it = piece_sum.find(key);
            if (it == piece_sum.end())
                it = piece_sum.emplace(key, Mat(a.field, left.size(), right.size())).first;
            add_outer(it->second, left, right, beta);
        }
    }
    for (auto& [key, mat] : piece_sum) {
        std::size_t dh = a.helps[key.first].degree_or_throw();
        dec.pieces.push_back(DecompPiece{key.first, key.second,
                                         CutMatrix{std::move(mat), k - key.second, (d - k) - (dh - key.second), n}});
    }
    return dec;
}

bool verify_decomposition(const Decomposition& dec, const NCPoly& f, const std::vector<NCPoly>& helps,
                          std::size_t d) {
    CutMatrix target = cut_matrix(f, dec.k, d);
    if (target.base.rows != dec.m_prime.base.rows || target.base.cols != dec.m_prime.base.cols)
        throw std::invalid_argument("verify_decomposition: m_prime shape mismatch");
    Mat sum = dec.m_prime.base;
    for (const auto& piece : dec.pieces) {
        if (piece.help >= helps.size())
            throw std::invalid_argument("verify_decomposition: piece references an unknown help polynomial");
        const NCPoly& h = helps[piece.help];
        std::size_t dh = h.degree_or_throw();
        std::size_t i = piece.split;
        if (i < 1 || i > dec.k || i + 1 > dh || dh > d - dec.k + i)
            throw std::invalid_argument("verify_decomposition: piece split out of the valid range");
        CutMatrix mih = cut_matrix(h, i, dh);
        CutMatrix prod = cross_product(mih, piece.factor, i, dh - i, dec.k, d);
        sum = add(sum, prod.base);
    }
    return sum == target.base;
}

NCPoly full_rank_poly(const PrimeField& field, std::uint32_t n, std::size_t d) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("full_rank_poly requires an even degree d >= 2");
    std::uint64_t side = checked_side(n, d / 2);
    NCPoly f(field, n);
    for (std::uint64_t i = 0; i < side; ++i) {
        Word m = index_word(i, d / 2, n);
        Word mm = m;
        mm.insert(mm.end(), m.begin(), m.end());
        f.add_term(mm, 1);
    }
    return f;
}

}  // namespace ncabp
