#include "ncabp/hardgen.hpp"

#include "ncabp/errors.hpp"
#include "ncabp/limits.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ncabp {

HelpSet HelpSet::make(PrimeField field, std::uint32_t nvars, std::vector<NCPoly> polys) {
    if (polys.empty()) throw std::invalid_argument("a help set must contain at least one polynomial");
    for (const auto& h : polys) {
        if (h.field() != field || h.nvars() != nvars)
            throw std::invalid_argument("help polynomial field or variable count mismatch");
        if (h.is_zero()) throw std::invalid_argument("help sets may not contain the zero polynomial");
    }
    return HelpSet{field, nvars, std::move(polys)};
}

std::size_t HelpSet::max_degree() const {
    std::size_t d = 0;
    for (const auto& h : polys) d = std::max(d, h.degree_or_throw());
    return d;
}

std::size_t HelpSet::min_degree() const {
    std::size_t d = SIZE_MAX;
    for (const auto& h : polys) d = std::min(d, h.degree_or_throw());
    return d;
}

bool HelpSet::all_homogeneous_min2() const {
    for (const auto& h : polys)
        if (!h.is_homogeneous() || h.degree_or_throw() < 2) return false;
    return true;
}

std::vector<NCPoly> HelpSet::homogeneous_parts() const {
    std::vector<NCPoly> parts;
    for (const auto& h : polys) {
        std::size_t dh = h.degree_or_throw();
        for (std::size_t i = 2; i <= dh; ++i) {
            NCPoly part = h.homogeneous_part(i);
            if (!part.is_zero()) parts.push_back(std::move(part));
        }
    }
    return parts;
}

std::string HelpSet::hash() const {
    std::uint64_t h = 14695981039346656037ull;  // FNV-1a
    auto feed = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
    };
    feed("field " + std::to_string(field.p()) + " vars " + std::to_string(nvars));
    for (const auto& poly : polys) {
        feed(";");
        for (const auto& [w, c] : poly.terms()) feed(std::to_string(c) + " " + word_to_string(w) + ",");
    }
    std::ostringstream out;
    out << std::hex;
    for (int i = 15; i >= 0; --i) out << ((h >> (4 * i)) & 0xf);
    return out.str();
}

std::vector<Mat> build_obstruction_set(const HelpSet& helps, std::size_t d) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("obstruction sets need an even degree d >= 2");
    if (!helps.all_homogeneous_min2())
        throw std::invalid_argument(
            "obstruction sets need homogeneous helps of degree >= 2; preprocess general helps into their "
            "homogeneous parts first");
    const std::uint32_t n = helps.nvars;
    const std::size_t half = d / 2;

    std::vector<Mat> out;
    std::set<Mat> seen;
    for (const auto& h : helps.polys) {
        const std::size_t dh = h.degree_or_throw();
        if (dh > d) continue;
        const std::size_t i_lo = dh > half ? dh - half : 1;
        const std::size_t i_hi = std::min(half, dh - 1);
        for (std::size_t i = i_lo; i <= i_hi; ++i) {
            CutMatrix mih = cut_matrix(h, i, dh);
            const std::uint64_t prange = words_of_length(half - i, n);
            const std::uint64_t qrange = words_of_length(half - dh + i, n);
            for (std::uint64_t p = 0; p < prange; ++p) {
                for (std::uint64_t q = 0; q < qrange; ++q) {
                    CutMatrix e = elementary(helps.field, n, half - i, half - dh + i, p, q);
                    CutMatrix prod = cross_product(mih, e, i, dh - i, half, d);
                    if (seen.insert(prod.base).second) out.push_back(std::move(prod.base));
                }
            }
        }
    }
    return out;
}

GenerateResult generate_hard(const HelpSet& helps, std::size_t d, const HardSolver& solver) {
    if (d < 2 || d % 2 != 0)
        throw std::invalid_argument("hard polynomials are generated for even degree d >= 2 only");
    const std::uint32_t n = helps.nvars;
    const std::uint64_t side = words_of_length(d / 2, n);
    if (side > budget().max_matrix_side)
        throw resource_error("N = n^(d/2) = " + std::to_string(side) + " exceeds the matrix side cap");

    std::string preproc = "none";
    HelpSet effective = helps;
    if (!helps.all_homogeneous_min2()) {
        auto parts = helps.homogeneous_parts();
        if (parts.empty()) {
            // Degenerate: no degree >= 2 content at all. The obstruction set
            // is empty and the polynomial only has to defeat help-free
            // programs.
            effective.polys.clear();
        } else {
            effective = HelpSet::make(helps.field, n, std::move(parts));
        }
        preproc = "homogeneous-parts";
    }

    std::vector<Mat> obstruction =
        effective.polys.empty() ? std::vector<Mat>{} : build_obstruction_set(effective, d);
    const std::size_t k = obstruction.size();
    RemoteInstance inst = RemoteInstance::make(helps.field, side, obstruction);

    Mat remote(helps.field, side, side);
    std::size_t claimed_r = 0;
    std::string solver_name;
    if (std::holds_alternative<SimpleSolver>(solver)) {
        solver_name = "simple";
        claimed_r = side / (k + 1);
        if (claimed_r == 0)
            throw std::invalid_argument("floor(N/(k+1)) = 0 for N = " + std::to_string(side) + ", k = " +
                                        std::to_string(k) + ": the obstruction set is too large at this size");
        remote = solve_simple(inst).point;
    } else {
        const auto& imp = std::get<ImprovedSolver>(solver);
        solver_name = "improved";
        remote = solve_improved(inst, imp.ell, imp.target_r, imp.opts);
        claimed_r = imp.target_r + 1;
    }

    NCPoly f(helps.field, n);
    for (std::uint64_t i = 0; i < side; ++i) {
        Word left = index_word(i, d / 2, n);
        for (std::uint64_t j = 0; j < side; ++j) {
            if (remote.at(i, j) == 0) continue;
            Word w = left;
            Word right = index_word(j, d / 2, n);
            w.insert(w.end(), right.begin(), right.end());
            f.add_term(w, remote.at(i, j));
        }
    }

    Certificate cert{helps.field, n,           d,            std::move(obstruction), std::move(remote),
                     claimed_r,   solver_name, helps.hash(), preproc};
    Rational general = preproc == "none" ? Rational(claimed_r) : Rational(claimed_r, d + 1);
    return GenerateResult{std::move(f), std::move(cert), general};
}

bool verify_certificate(const Certificate& cert, const DistanceMode& mode) {
    if (cert.degree < 2 || cert.degree % 2 != 0) throw std::invalid_argument("certificate degree must be even");
    const std::uint64_t side = words_of_length(cert.degree / 2, cert.nvars);
    if (cert.remote.rows != side || cert.remote.cols != side)
        throw std::invalid_argument("certificate remote matrix is not n^(d/2) square");
    for (const auto& m : cert.obstruction)
        if (m.rows != side || m.cols != side)
            throw std::invalid_argument("certificate obstruction matrix is not n^(d/2) square");
    if (cert.claimed_r < 1) return false;
    if (cert.claimed_r > side) return false;  // rank distance cannot exceed N
    RemoteInstance inst = RemoteInstance::make(cert.field, side, cert.obstruction);
    return min_span_distance(cert.remote, inst, mode).distance >= cert.claimed_r;
}

// --- closed-form bounds ----------------------------------------------------

namespace {

void canonicalize_root(BoundValue& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    bool reduced = true;
    while (reduced && v.root > 1) {
        reduced = false;
        for (unsigned g = v.root; g >= 2; --g) {
            if (v.root % g != 0) continue;
            BigInt rn, rd;
            if (is_perfect_power(numerator(v.base), g, rn) && is_perfect_power(denominator(v.base), g, rd)) {
                v.base = Rational(rn, rd);
                v.root /= g;
                reduced = true;
                break;
            }
        }
    }
}

// floor(n^(num/den) / divisor) by binary search on F with the comparison
// raised to the den-th power: F*divisor <= n^(num/den) <=> (F*divisor)^den <= n^num.
BigInt floor_power_quotient(std::uint32_t n, std::uint64_t num, std::uint64_t den, const BigInt& divisor) {
    BigInt target = big_pow(n, num);
    BigInt lo = 0, hi = 1;
    auto fits = [&](const BigInt& f) {
        return boost::multiprecision::pow(f * divisor, static_cast<unsigned>(den)) <= target;
    };
    while (fits(hi)) hi <<= 1;
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) / 2;
        if (fits(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::uint64_t to_u64(const BigInt& v) { return v.convert_to<std::uint64_t>(); }

}  // namespace

std::string BoundValue::decimal(std::size_t digits) const {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    // floor(value * 10^digits) computed exactly, then formatted.
    BigInt scale = big_pow(10, digits);
    BigInt scaled_num = numerator(base) * boost::multiprecision::pow(scale, root);
    BigInt whole = iroot(scaled_num / denominator(base), root);
    std::string s = whole.str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return s;
}

BoundReport bound_report(std::uint32_t n, std::uint64_t m, std::uint64_t d, const Rational& eps,
                         BoundVariant variant, const HelpSet* helps) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie strictly between 0 and 1");
    if (n < 1 || m < 1 || d < 1) throw std::invalid_argument("bound parameters must be positive");
    const std::uint64_t a = to_u64(numerator(eps));
    const std::uint64_t b = to_u64(denominator(eps));

    BoundReport rep;
    switch (variant) {
        case BoundVariant::low_deg: {
            // n^(eps*d/4) / sqrt(2md), raised to the 4b-th power
            rep.value.base = Rational(big_pow(n, a * d), boost::multiprecision::pow(BigInt(2) * m * d,
                                                                                    static_cast<unsigned>(2 * b)));
            rep.value.root = static_cast<unsigned>(4 * b);
            break;
        }
        case BoundVariant::gen_low: {
            // n^(eps*d/4) / (sqrt(2m) * d(d+1))
            BigInt denom = boost::multiprecision::pow(BigInt(2) * m, static_cast<unsigned>(2 * b)) *
                           boost::multiprecision::pow(BigInt(d) * (d + 1), static_cast<unsigned>(4 * b));
            rep.value.base = Rational(big_pow(n, a * d), denom);
            rep.value.root = static_cast<unsigned>(4 * b);
            break;
        }
        case BoundVariant::high_deg: {
            rep.value.base = Rational(floor_power_quotient(n, a * d, 2 * b, BigInt(2) * m * d));
            rep.value.root = 1;
            rep.value.floored = true;
            break;
        }
        case BoundVariant::gen_high: {
            BigInt fl = floor_power_quotient(n, a * d, 2 * b, BigInt(2) * m * d * d);
            rep.value.base = Rational(fl, d + 1);
            rep.value.root = 1;
            rep.value.floored = true;
            break;
        }
    }
    canonicalize_root(rep.value);

    if (helps) {
        const bool general = variant == BoundVariant::gen_low || variant == BoundVariant::gen_high;
        std::vector<NCPoly> pool = general ? helps->homogeneous_parts() : helps->polys;
        std::vector<std::size_t> degs;
        for (const auto& h : pool) {
            std::size_t dh = h.degree_or_throw();
            if ((variant == BoundVariant::low_deg || variant == BoundVariant::gen_low) && dh > d) continue;
            degs.push_back(dh);
        }
        if (degs.empty()) {
            rep.applicable = true;
            rep.note = "no effective help polynomials at this degree; the hypothesis holds vacuously";
        } else if (variant == BoundVariant::low_deg || variant == BoundVariant::gen_low) {
            std::size_t dmax = *std::max_element(degs.begin(), degs.end());
            rep.applicable = BigInt(dmax) * b <= BigInt(d) * (b - a);  // d(H_<=d) <= d(1-eps)
            rep.note = "requires max help degree <= d(1-eps)";
        } else {
            std::size_t dmin = *std::min_element(degs.begin(), degs.end());
            rep.applicable = BigInt(dmin) * 2 * b >= BigInt(d) * (b + 2 * a);  // delta >= (1/2+eps)d
            rep.note = "requires min help degree >= (1/2+eps)d";
        }
    }
    return rep;
}

}  // namespace ncabp
