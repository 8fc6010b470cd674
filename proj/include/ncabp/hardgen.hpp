#pragma once

#include "ncabp/cutmatrix.hpp"
#include "ncabp/ncpoly.hpp"
#include "ncabp/rmp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ncabp {

// A nonempty list of nonzero help polynomials over one field and alphabet.
struct HelpSet {
    PrimeField field;
    std::uint32_t nvars = 0;
    std::vector<NCPoly> polys;

    static HelpSet make(PrimeField field, std::uint32_t nvars, std::vector<NCPoly> polys);

    std::size_t m() const { return polys.size(); }
    std::size_t max_degree() const;
    std::size_t min_degree() const;
    bool all_homogeneous_min2() const;

    // The nonzero homogeneous parts of degree >= 2, in (poly, degree) order.
    std::vector<NCPoly> homogeneous_parts() const;

    // Stable content hash (FNV-1a over the canonical term listing).
    std::string hash() const;
};

// The fixed obstruction matrices M_i(h) (x) E^{p,q} spanning everything the
// help-dependent part of a cut decomposition can contribute. Requires all
// helps homogeneous of degree >= 2; helps of degree above d are ignored.
// Exact duplicates are removed; first occurrence order is kept.
std::vector<Mat> build_obstruction_set(const HelpSet& helps, std::size_t d);

struct Certificate {
    PrimeField field;
    std::uint32_t nvars = 0;
    std::size_t degree = 0;  // even
    std::vector<Mat> obstruction;
    Mat remote;
    std::size_t claimed_r = 0;
    std::string solver;      // "simple" | "improved"
    std::string helps_hash;  // may be empty on files from other producers
    std::string preproc;     // "none" | "homogeneous-parts"
};

struct SimpleSolver {};
struct ImprovedSolver {
    std::size_t ell = 1;
    std::size_t target_r = 1;  // certificate claims target_r + 1
    ImprovedOptions opts;
};
using HardSolver = std::variant<SimpleSolver, ImprovedSolver>;

struct GenerateResult {
    NCPoly f;
    Certificate cert;
    // Size bound implied for programs over the ORIGINAL helps: claimed_r when
    // no preprocessing ran, claimed_r/(d+1) after homogeneous-parts.
    Rational general_bound;
};

// Builds the obstruction set (preprocessing inhomogeneous helps into their
// homogeneous parts first), solves the remote-point instance, and returns the
// polynomial whose middle cut matrix is the remote point, with a
// machine-checkable certificate.
GenerateResult generate_hard(const HelpSet& helps, std::size_t d, const HardSolver& solver);

// True iff the remote matrix is at rank distance >= claimed_r from the span
// of the obstruction set. Sampled mode can only refute, never fully confirm.
bool verify_certificate(const Certificate& cert, const DistanceMode& mode);

enum class BoundVariant { low_deg, high_deg, gen_low, gen_high };

// Exact value base^(1/root); root is reduced to its minimum.
struct BoundValue {
    Rational base;
    unsigned root = 1;
    bool floored = false;

    bool is_rational() const { return root == 1; }
    std::string decimal(std::size_t digits = 6) const;

    friend bool operator==(const BoundValue& a, const BoundValue& b) {
        return a.base == b.base && a.root == b.root && a.floored == b.floored;
    }
};

struct BoundReport {
    BoundValue value;
    std::optional<bool> applicable;  // set when a help set was supplied
    std::string note;
};

// The four closed-form size bounds, evaluated exactly. eps must lie in (0,1).
BoundReport bound_report(std::uint32_t n, std::uint64_t m, std::uint64_t d, const Rational& eps,
                         BoundVariant variant, const HelpSet* helps = nullptr);

}  // namespace ncabp
