#include "ncabp/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncabp {

bool Vec::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Vec Mat::row(std::size_t r) const {
    Vec v(field, cols);
    for (std::size_t c = 0; c < cols; ++c) v[c] = at(r, c);
    return v;
}

Vec Mat::col(std::size_t c) const {
    Vec v(field, rows);
    for (std::size_t r = 0; r < rows; ++r) v[r] = at(r, c);
    return v;
}

Mat Mat::transpose() const {
    Mat t(field, cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

Mat Mat::from_flat(PrimeField f, std::size_t r, std::size_t c, const Vec& v) {
    if (v.size() != r * c) throw std::invalid_argument("from_flat: length mismatch");
    Mat m(f, r, c);
    m.a = v.e;
    return m;
}

Mat Mat::identity(PrimeField f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool operator<(const Mat& x, const Mat& y) {
    if (x.rows != y.rows) return x.rows < y.rows;
    if (x.cols != y.cols) return x.cols < y.cols;
    return x.a < y.a;
}

static void check_same_shape(const Mat& x, const Mat& y, const char* op) {
    if (x.field != y.field || x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument(std::string(op) + ": shape or field mismatch");
}

Mat add(const Mat& x, const Mat& y) {
    check_same_shape(x, y, "add");
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.field.add(x.a[i], y.a[i]);
    return r;
}

Mat sub(const Mat& x, const Mat& y) {
    check_same_shape(x, y, "sub");
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.field.sub(x.a[i], y.a[i]);
    return r;
}

Mat scale(const Mat& x, std::uint32_t c) {
    Mat r = x;
    for (auto& v : r.a) v = x.field.mul(v, c);
    return r;
}

RrefResult rref(const Mat& m) {
    const PrimeField& f = m.field;
    Mat r = m;
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < r.cols && lead < r.rows; ++col) {
        std::size_t pivot = lead;
        while (pivot < r.rows && r.at(pivot, col) == 0) ++pivot;
        if (pivot == r.rows) continue;
        if (pivot != lead)
            for (std::size_t c = 0; c < r.cols; ++c) std::swap(r.at(pivot, c), r.at(lead, c));
        std::uint32_t inv = f.inv(r.at(lead, col));
        for (std::size_t c = col; c < r.cols; ++c) r.at(lead, c) = f.mul(r.at(lead, c), inv);
        for (std::size_t row = 0; row < r.rows; ++row) {
            if (row == lead) continue;
            std::uint32_t factor = r.at(row, col);
            if (factor == 0) continue;
            for (std::size_t c = col; c < r.cols; ++c)
                r.at(row, c) = f.sub(r.at(row, c), f.mul(factor, r.at(lead, c)));
        }
        pivots.push_back(col);
        ++lead;
    }
    std::size_t rk = pivots.size();
    return RrefResult{std::move(r), rk, std::move(pivots)};
}

namespace {

// Bit-packed elimination for the p = 2 case. Must agree entrywise with the
// generic path; checked in tests.
std::size_t rank_gf2(const Mat& m) {
    const std::size_t words = (m.cols + 63) / 64;
    std::vector<std::uint64_t> rows(m.rows * words, 0);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            if (m.at(r, c)) rows[r * words + c / 64] |= std::uint64_t(1) << (c % 64);

    std::size_t rk = 0;
    for (std::size_t col = 0; col < m.cols && rk < m.rows; ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t(1) << (col % 64);
        std::size_t pivot = rk;
        while (pivot < m.rows && !(rows[pivot * words + w] & bit)) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t k = 0; k < words; ++k) std::swap(rows[pivot * words + k], rows[rk * words + k]);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r != rk && (rows[r * words + w] & bit))
                for (std::size_t k = 0; k < words; ++k) rows[r * words + k] ^= rows[rk * words + k];
        }
        ++rk;
    }
    return rk;
}

}  // namespace

std::size_t rank(const Mat& m) {
    if (m.field.p() == 2) return rank_gf2(m);
    return rref(m).rank;
}

std::size_t rank(const std::vector<Vec>& vectors) {
    if (vectors.empty()) return 0;
    Mat m(vectors.front().field, vectors.size(), vectors.front().size());
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        if (vectors[r].size() != m.cols || vectors[r].field != m.field)
            throw std::invalid_argument("rank: mixed vector lengths or fields");
        for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = vectors[r][c];
    }
    return rank(m);
}

bool operator<(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient != b.ambient) return a.ambient < b.ambient;
    if (a.rows.size() != b.rows.size()) return a.rows.size() < b.rows.size();
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (!(a.rows[i] == b.rows[i])) return a.rows[i] < b.rows[i];
    return false;
}

SubspaceBasis canonicalize(const PrimeField& field, std::size_t ambient, const std::vector<Vec>& vectors) {
    Mat m(field, vectors.size(), ambient);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        if (vectors[r].size() != ambient || vectors[r].field != field)
            throw std::invalid_argument("canonicalize: vector length or field mismatch");
        for (std::size_t c = 0; c < ambient; ++c) m.at(r, c) = vectors[r][c];
    }
    RrefResult rr = rref(m);
    SubspaceBasis basis{field, ambient, {}};
    for (std::size_t r = 0; r < rr.rank; ++r) basis.rows.push_back(rr.reduced.row(r));
    return basis;
}

SubspaceBasis sum_subspaces(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.field != b.field || a.ambient != b.ambient)
        throw std::invalid_argument("sum_subspaces: ambient mismatch");
    std::vector<Vec> all = a.rows;
    all.insert(all.end(), b.rows.begin(), b.rows.end());
    return canonicalize(a.field, a.ambient, all);
}

bool contains(const SubspaceBasis& basis, const Vec& v) {
    if (v.size() != basis.ambient || v.field != basis.field)
        throw std::invalid_argument("contains: dimension or field mismatch");
    // Reduce v against the RREF rows; v is in the span iff it reduces to 0.
    Vec w = v;
    const PrimeField& f = basis.field;
    for (const Vec& row : basis.rows) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        if (pivot == row.size()) continue;
        std::uint32_t factor = w[pivot];
        if (factor == 0) continue;
        for (std::size_t c = pivot; c < w.size(); ++c) w[c] = f.sub(w[c], f.mul(factor, row[c]));
    }
    return w.is_zero();
}

std::optional<AffineSolution> solve_affine(const Mat& a, const Vec& b) {
    if (a.rows != b.size() || a.field != b.field)
        throw std::invalid_argument("solve_affine: dimension or field mismatch");
    const PrimeField& f = a.field;
    // Eliminate on the augmented matrix [a | b].
    Mat aug(f, a.rows, a.cols + 1);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    RrefResult rr = rref(aug);
    for (std::size_t r = 0; r < rr.rank; ++r)
        if (rr.pivots[r] == a.cols) return std::nullopt;  // row 0 ... 0 | 1

    std::vector<bool> is_pivot(a.cols, false);
    for (std::size_t c : rr.pivots) is_pivot[c] = true;

    Vec particular(f, a.cols);
    for (std::size_t r = 0; r < rr.rank; ++r) particular[rr.pivots[r]] = rr.reduced.at(r, a.cols);

    std::vector<Vec> null_rows;
    for (std::size_t free_col = 0; free_col < a.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec n(f, a.cols);
        n[free_col] = 1;
        for (std::size_t r = 0; r < rr.rank; ++r)
            n[rr.pivots[r]] = f.neg(rr.reduced.at(r, free_col));
        null_rows.push_back(std::move(n));
    }
    return AffineSolution{std::move(particular), canonicalize(f, a.cols, null_rows)};
}

std::optional<std::size_t> prefix_slice_dim(const SubspaceBasis& v, const Vec& prefix) {
    if (prefix.size() > v.ambient || prefix.field != v.field)
        throw std::invalid_argument("prefix_slice_dim: prefix too long or field mismatch");
    const PrimeField& f = v.field;
    const std::size_t i = prefix.size();
    const std::size_t dim = v.dim();
    // Elements of span(v) are x^T B for coefficient vectors x; the slice
    // constraint is C x = prefix with C the first i columns of B, transposed.
    // B has independent rows, so x -> x^T B is injective and the slice
    // dimension is dim - rank(C), or empty on inconsistency. Row-reduce the
    // augmented system in place; this runs in the inner loop of avoid_union.
    const std::size_t w = dim + 1;
    std::vector<std::uint32_t> aug(i * w);
    for (std::size_t row = 0; row < i; ++row) {
        for (std::size_t k = 0; k < dim; ++k) aug[row * w + k] = v.rows[k][row];
        aug[row * w + dim] = prefix[row];
    }
    std::size_t rank_c = 0;
    for (std::size_t col = 0; col < dim && rank_c < i; ++col) {
        std::size_t pivot = rank_c;
        while (pivot < i && aug[pivot * w + col] == 0) ++pivot;
        if (pivot == i) continue;
        if (pivot != rank_c)
            for (std::size_t k = col; k < w; ++k) std::swap(aug[pivot * w + k], aug[rank_c * w + k]);
        std::uint32_t inv = f.inv(aug[rank_c * w + col]);
        for (std::size_t row = 0; row < i; ++row) {
            if (row == rank_c) continue;
            std::uint32_t factor = f.mul(aug[row * w + col], inv);
            if (factor == 0) continue;
            for (std::size_t k = col; k < w; ++k)
                aug[row * w + k] = f.sub(aug[row * w + k], f.mul(factor, aug[rank_c * w + k]));
        }
        ++rank_c;
    }
    for (std::size_t row = rank_c; row < i; ++row)
        if (aug[row * w + dim] != 0) return std::nullopt;  // 0 = nonzero: inconsistent
    return dim - rank_c;
}

}  // namespace ncabp
