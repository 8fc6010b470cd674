#include "ncabp/rmp.hpp"

#include "ncabp/errors.hpp"
#include "ncabp/limits.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace ncabp {

namespace {

BigInt big_binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, const char* what) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > (std::uint64_t(1) << 62) / base)
            throw resource_error(std::string(what) + ": enumeration space overflows");
        r *= base;
    }
    return r;
}

std::uint64_t encode_vec(const Vec& v) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < v.size(); ++i) code = code * v.field.p() + v[i];
    return code;
}

Vec decode_vec(const PrimeField& field, std::uint64_t code, std::size_t len) {
    Vec v(field, len);
    for (std::size_t i = len; i-- > 0;) {
        v[i] = static_cast<std::uint32_t>(code % field.p());
        code /= field.p();
    }
    return v;
}

// Lexicographically next size-k subset of [0, count); false when done.
bool next_combination(std::vector<std::uint64_t>& comb, std::uint64_t count) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] + (k - i) < count) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::uint64_t> first_combination(std::size_t k) {
    std::vector<std::uint64_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    return comb;
}

}  // namespace

RemoteInstance RemoteInstance::make(PrimeField field, std::size_t n, const std::vector<Mat>& mats) {
    RemoteInstance inst{field, n, {}};
    SubspaceBasis span{field, n * n, {}};
    for (const auto& m : mats) {
        if (m.field != field || m.rows != n || m.cols != n)
            throw std::invalid_argument("span matrices must all be " + std::to_string(n) + "x" +
                                        std::to_string(n) + " over the same field");
        Vec flat = m.flatten();
        if (flat.is_zero() || contains(span, flat)) continue;
        std::vector<Vec> rows = span.rows;
        rows.push_back(flat);
        span = canonicalize(field, n * n, rows);
        inst.span_basis.push_back(m);
    }
    return inst;
}

std::size_t rank_distance(const Mat& p, const Mat& q) { return rank(sub(p, q)); }

DistanceReport min_span_distance(const Mat& p, const RemoteInstance& inst, const DistanceMode& mode) {
    if (p.field != inst.field || p.rows != inst.n || p.cols != inst.n)
        throw std::invalid_argument("min_span_distance: point shape mismatch");
    const std::size_t k = inst.k();
    if (std::holds_alternative<Exhaustive>(mode)) {
        // p^k combinations via an odometer; the running span element is
        // updated incrementally (a wrap from p-1 to 0 is the same as one more
        // addition mod p).
        BigInt total = big_pow(inst.field.p(), k);
        if (total > budget().max_span_elements)
            throw resource_error("exhaustive span enumeration needs " + total.str() +
                                 " elements, over the cap of " + std::to_string(budget().max_span_elements));
        std::vector<std::uint32_t> coeff(k, 0);
        Mat current(inst.field, inst.n, inst.n);
        std::size_t best = rank_distance(p, current);
        for (;;) {
            std::size_t pos = 0;
            while (pos < k) {
                ++coeff[pos];
                current = add(current, inst.span_basis[pos]);
                if (coeff[pos] == inst.field.p()) {
                    coeff[pos] = 0;
                    ++pos;
                } else {
                    break;
                }
            }
            if (pos == k) break;
            best = std::min(best, rank_distance(p, current));
            if (best == 0) break;
        }
        return DistanceReport{best, true};
    }
    const auto& s = std::get<Sampled>(mode);
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<std::uint32_t> coeff_dist(0, inst.field.p() - 1);
    std::size_t best = rank_distance(p, Mat(inst.field, inst.n, inst.n));
    for (std::uint64_t i = 0; i < s.count; ++i) {
        Mat current(inst.field, inst.n, inst.n);
        for (std::size_t j = 0; j < k; ++j) {
            std::uint32_t c = coeff_dist(rng);
            if (c) current = add(current, scale(inst.span_basis[j], c));
        }
        best = std::min(best, rank_distance(p, current));
    }
    return DistanceReport{best, false};
}

SimpleSolution solve_simple(const RemoteInstance& inst) {
    const std::size_t n = inst.n;
    const std::size_t k = inst.k();
    const std::size_t r = n / (k + 1);
    if (r == 0)
        throw std::invalid_argument(
            "floor(N/(k+1)) = 0: parameters give only the trivial bound; increase N or decrease k");

    std::vector<Vec> taken;
    for (const auto& m : inst.span_basis)
        for (std::size_t c = 0; c < r; ++c) taken.push_back(m.col(c));

    // Extend by standard basis vectors, each independent of everything taken
    // so far. The taken set never spans, so the scan always succeeds.
    std::vector<Vec> extension;
    SubspaceBasis span = canonicalize(inst.field, n, taken);
    for (std::size_t step = 0; step < r; ++step) {
        bool found = false;
        for (std::size_t i = 0; i < n && !found; ++i) {
            Vec e(inst.field, n);
            e[i] = 1;
            if (contains(span, e)) continue;
            extension.push_back(e);
            std::vector<Vec> rows = span.rows;
            rows.push_back(e);
            span = canonicalize(inst.field, n, rows);
            found = true;
        }
        if (!found) throw std::logic_error("solve_simple: extension step found no independent vector");
    }

    Mat point(inst.field, n, n);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t row = 0; row < n; ++row) point.at(row, c) = extension[c][row];
    return SimpleSolution{std::move(point), r};
}

Vec avoid_union(const std::vector<SubspaceBasis>& subspaces, std::size_t ambient, const PrimeField& field) {
    BigInt total = 0;
    for (const auto& v : subspaces) {
        if (v.ambient != ambient || v.field != field)
            throw std::invalid_argument("avoid_union: subspace ambient or field mismatch");
        total += v.size();
    }
    BigInt whole = big_pow(field.p(), ambient);
    if (total >= whole)
        throw std::invalid_argument("avoid_union: subspace sizes sum to " + total.str() +
                                    " which is not below |F|^M = " + whole.str());

    Vec u(field, 0);
    for (std::size_t i = 0; i < ambient; ++i) {
        BigInt slice_bound = big_pow(field.p(), ambient - i - 1);
        bool placed = false;
        for (std::uint32_t alpha = 0; alpha < field.p() && !placed; ++alpha) {
            Vec candidate = u;
            candidate.e.push_back(alpha);
            BigInt sum = 0;
            for (const auto& v : subspaces) {
                auto dim = prefix_slice_dim(v, candidate);
                if (dim) sum += big_pow(field.p(), *dim);
            }
            if (sum < slice_bound) {
                u = std::move(candidate);
                placed = true;
            }
        }
        if (!placed) throw std::logic_error("avoid_union: no admissible coordinate value (invariant broken)");
    }
    return u;
}

SubspaceBasis lift_to_matrix_space(const SubspaceBasis& u_basis, std::size_t n) {
    if (u_basis.ambient != n) throw std::invalid_argument("lift_to_matrix_space: ambient dimension mismatch");
    std::vector<Vec> rows;
    for (const Vec& b : u_basis.rows) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec flat(u_basis.field, n * n);
            for (std::size_t r = 0; r < n; ++r) flat[r * n + j] = b[r];
            rows.push_back(std::move(flat));
        }
    }
    SubspaceBasis lifted = canonicalize(u_basis.field, n * n, rows);
    if (lifted.dim() != u_basis.dim() * n)
        throw std::logic_error("lift_to_matrix_space: dimension is not dim(U)*N");
    return lifted;
}

std::size_t corank(const std::vector<Vec>& vectors) { return vectors.size() - rank(vectors); }

GoodCollection good_collection_case1(std::size_t n, std::size_t ell, std::size_t r, const PrimeField& field) {
    if (r < 1 || ell < r) throw std::invalid_argument("case-1 collections need ell >= r >= 1");
    if (2 * ell > n) throw std::invalid_argument("case-1 collections need 2*ell <= N");
    const std::uint64_t prefixes = checked_pow(field.p(), 2 * ell, "good_collection_case1");
    BigInt count = big_binom(prefixes, r);
    if (count == 0 || count > budget().max_span_elements)
        throw resource_error("case-1 collection has " + count.str() + " members, over the cap of " +
                             std::to_string(budget().max_span_elements));

    GoodCollection coll{field, n, ell, r, {}, GoodCollection::Case1{ell, r, {}}};
    auto& tag = std::get<GoodCollection::Case1>(coll.tag);
    std::map<SubspaceBasis, std::size_t> dedup;
    std::vector<std::uint64_t> comb = first_combination(r);
    do {
        std::vector<Vec> gens;
        for (std::uint64_t code : comb) {
            Vec g(field, n);
            Vec prefix = decode_vec(field, code, 2 * ell);
            for (std::size_t i = 0; i < 2 * ell; ++i) g[i] = prefix[i];
            gens.push_back(std::move(g));
        }
        for (std::size_t j = 2 * ell; j < n; ++j) {
            Vec e(field, n);
            e[j] = 1;
            gens.push_back(std::move(e));
        }
        SubspaceBasis member = canonicalize(field, n, gens);
        if (member.dim() > n - ell) throw std::logic_error("case-1 member dimension exceeds N - ell");
        auto [it, inserted] = dedup.emplace(member, coll.members.size());
        if (inserted) coll.members.push_back(member);
        tag.by_key.emplace(comb, it->second);
    } while (next_combination(comb, prefixes));
    return coll;
}

namespace {

// Smallest q >= 1 with q >= mult * sqrt(c * log2(N)), decided exactly:
// q >= mult*sqrt(x)  <=>  q^2*den_total >= num_total*log2(N)
//                    <=>  2^(q^2*den_total) >= N^num_total.
// With L the index of N's top bit, exponent comparisons against num*L and
// num*(L+1) settle everything except a narrow band, which falls back to the
// exact big-integer power comparison.
std::size_t ceil_scaled_sqrt_log(std::size_t n, const Rational& c, std::uint64_t mult_num,
                                 std::uint64_t mult_den) {
    BigInt num = boost::multiprecision::numerator(c) * mult_num * mult_num;
    BigInt den = boost::multiprecision::denominator(c) * mult_den * mult_den;
    std::size_t top_bit = 0;
    for (std::size_t b = 0; (std::size_t(1) << b) <= n && b < 63; ++b) top_bit = b;
    for (std::size_t q = 1; q <= 64; ++q) {
        BigInt lhs_exp = BigInt(q) * q * den;
        if (lhs_exp >= num * (top_bit + 1)) return q;  // 2^lhs >= 2^(num*(L+1)) > N^num
        if (lhs_exp < num * top_bit) continue;         // 2^lhs < 2^(num*L) <= N^num
        if (lhs_exp > 2'000'000)
            throw std::invalid_argument("case-2 parameter search exceeds representable sizes");
        BigInt lhs = BigInt(1) << lhs_exp.convert_to<std::uint64_t>();
        BigInt rhs = 1;
        BigInt base = n;
        for (BigInt e = num; e > 0; --e) {
            rhs *= base;
            if (rhs > lhs) break;
        }
        if (rhs <= lhs) return q;
    }
    throw std::invalid_argument("case-2 parameters infeasible at this N; the construction is asymptotic");
}

}  // namespace

GoodCollection good_collection_case2(std::size_t n, std::size_t ell, std::size_t r, const PrimeField& field,
                                     std::uint32_t c0, const Rational& c) {
    if (ell > r) throw std::invalid_argument("case-2 collections need ell <= r");
    if (ell < 1 || c0 < 1 || c <= 0) throw std::invalid_argument("case-2 collections need ell, c0, c >= 1");
    const std::size_t s = ceil_scaled_sqrt_log(n, c, 1, 1);
    const std::size_t q = ceil_scaled_sqrt_log(n, c, 20, c0);
    const std::size_t d_good = c0 * s;
    if (q >= 63 || big_pow(field.p(), q) > n)
        throw std::invalid_argument("case-2 parameters infeasible at this N (t = p^" + std::to_string(q) +
                                    " exceeds N); the construction is asymptotic");
    const std::size_t t = static_cast<std::size_t>(checked_pow(field.p(), q, "good_collection_case2"));
    if (d_good > t || d_good < ell)
        throw std::invalid_argument("case-2 parameters infeasible at this N (d = " + std::to_string(d_good) +
                                    " does not fit inside t = " + std::to_string(t) + ")");
    const std::uint64_t prefixes = checked_pow(field.p(), d_good, "good_collection_case2");
    BigInt count = big_binom(t, d_good) * big_binom(prefixes, d_good - ell);
    if (count == 0 || count > budget().max_span_elements)
        throw resource_error("case-2 collection has " + count.str() + " members, over the cap of " +
                             std::to_string(budget().max_span_elements));

    GoodCollection coll{field, n, ell, r, {}, GoodCollection::Case2{ell, r, t, d_good, c0, c, {}}};
    auto& tag = std::get<GoodCollection::Case2>(coll.tag);
    std::map<SubspaceBasis, std::size_t> dedup;

    std::vector<std::uint64_t> s_comb = first_combination(d_good);
    do {
        std::vector<std::size_t> coords(s_comb.begin(), s_comb.end());
        std::vector<std::uint64_t> a_comb = first_combination(d_good - ell);
        do {
            std::vector<Vec> gens;
            for (std::uint64_t code : a_comb) {
                Vec u = decode_vec(field, code, d_good);
                Vec g(field, n);
                for (std::size_t i = 0; i < d_good; ++i) g[coords[i]] = u[i];
                gens.push_back(std::move(g));
            }
            if (!gens.empty()) {
                std::vector<bool> in_s(n, false);
                for (std::size_t i : coords) in_s[i] = true;
                for (std::size_t j = 0; j < n; ++j) {
                    if (in_s[j]) continue;
                    Vec e(field, n);
                    e[j] = 1;
                    gens.push_back(std::move(e));
                }
            }
            SubspaceBasis member = canonicalize(field, n, gens);
            if (member.dim() > n - ell) throw std::logic_error("case-2 member dimension exceeds N - ell");
            auto [it, inserted] = dedup.emplace(member, coll.members.size());
            if (inserted) coll.members.push_back(member);
            tag.by_key.emplace(std::make_pair(coords, a_comb), it->second);
        } while (next_combination(a_comb, prefixes));
    } while (next_combination(s_comb, t));
    return coll;
}

const SubspaceBasis& find_cover(const GoodCollection& coll, const std::vector<Vec>& a1) {
    if (a1.size() != coll.d2)
        throw std::invalid_argument("find_cover expects exactly d2 = " + std::to_string(coll.d2) + " vectors");
    for (const auto& v : a1)
        if (v.size() != coll.ambient || v.field != coll.field)
            throw std::invalid_argument("find_cover: vector ambient or field mismatch");

    if (const auto* c1 = std::get_if<GoodCollection::Case1>(&coll.tag)) {
        std::set<std::uint64_t> key_set;
        for (const auto& v : a1) {
            Vec prefix(coll.field, std::vector<std::uint32_t>(v.e.begin(), v.e.begin() + 2 * c1->ell));
            key_set.insert(encode_vec(prefix));
        }
        for (std::uint64_t code = 0; key_set.size() < c1->r; ++code) key_set.insert(code);
        std::vector<std::uint64_t> key(key_set.begin(), key_set.end());
        auto it = c1->by_key.find(key);
        if (it == c1->by_key.end())
            throw std::logic_error("find_cover: case-1 member lookup failed (invariant broken)");
        return coll.members[it->second];
    }

    const auto& c2 = std::get<GoodCollection::Case2>(coll.tag);
    std::vector<std::uint64_t> s_comb = first_combination(c2.d_good);
    do {
        std::vector<std::size_t> coords(s_comb.begin(), s_comb.end());
        std::vector<Vec> proj;
        for (const auto& v : a1) {
            Vec p(coll.field, c2.d_good);
            for (std::size_t i = 0; i < c2.d_good; ++i) p[i] = v[coords[i]];
            proj.push_back(std::move(p));
        }
        if (rank(proj) > c2.d_good - c2.ell) continue;
        // Greedy spanning subset of the projections, padded with the
        // lexicographically smallest unused prefix vectors.
        std::set<std::uint64_t> key_set;
        SubspaceBasis span{coll.field, c2.d_good, {}};
        for (const auto& p : proj) {
            if (contains(span, p)) continue;
            key_set.insert(encode_vec(p));
            std::vector<Vec> rows = span.rows;
            rows.push_back(p);
            span = canonicalize(coll.field, c2.d_good, rows);
        }
        for (std::uint64_t code = 0; key_set.size() < c2.d_good - c2.ell; ++code) key_set.insert(code);
        std::vector<std::uint64_t> a_key(key_set.begin(), key_set.end());
        auto it = c2.by_key.find(std::make_pair(coords, a_key));
        if (it == c2.by_key.end())
            throw std::logic_error("find_cover: case-2 member lookup failed (invariant broken)");
        return coll.members[it->second];
    } while (next_combination(s_comb, c2.t));
    throw std::runtime_error(
        "find_cover: no covering member; the case-2 collection is not good at this size (the construction "
        "is asymptotic)");
}

Mat solve_improved(const RemoteInstance& inst, std::size_t ell, std::size_t r, const ImprovedOptions& opts) {
    const std::size_t n = inst.n;
    if (r < 1 || ell < 1) throw std::invalid_argument("solve_improved needs ell >= 1 and r >= 1");
    if (inst.k() > ell * n)
        throw std::invalid_argument("span dimension " + std::to_string(inst.k()) + " exceeds ell*N");

    GoodCollection coll = (ell + 1 >= r)
                              ? good_collection_case1(n, ell + 1, r, inst.field)
                              : good_collection_case2(n, ell + 1, r, inst.field, opts.c0,
                                                      opts.c.value_or(Rational(1)));

    std::vector<Vec> span_rows;
    for (const auto& m : inst.span_basis) span_rows.push_back(m.flatten());
    SubspaceBasis l_flat = canonicalize(inst.field, n * n, span_rows);

    std::vector<SubspaceBasis> shifted;
    std::set<SubspaceBasis> seen;
    for (const auto& u : coll.members) {
        SubspaceBasis v = sum_subspaces(l_flat, lift_to_matrix_space(u, n));
        if (seen.insert(v).second) shifted.push_back(std::move(v));
    }

    BigInt total = 0;
    for (const auto& v : shifted) total += v.size();
    BigInt whole = big_pow(inst.field.p(), n * n);
    if (total >= whole)
        throw std::invalid_argument("solve_improved size check failed: covering subspaces sum to " +
                                    total.str() + " points, not below |F|^(N^2) = " + whole.str());

    Vec u = avoid_union(shifted, n * n, inst.field);
    return Mat::from_flat(inst.field, n, n, u);
}

}  // namespace ncabp
