#pragma once

#include "ncabp/ncpoly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ncabp {

// Edge label: a linear form over the program variables x_i and the help
// symbols y_j. The constant part only ever appears on intermediate edges
// inside the homogenization rewrite; source programs must not carry it.
struct LinForm {
    std::map<std::uint32_t, std::uint32_t> x;  // variable index -> coefficient
    std::map<std::uint32_t, std::uint32_t> y;  // help index -> coefficient
    std::uint32_t c = 0;

    bool is_zero() const { return x.empty() && y.empty() && c == 0; }
    bool is_constant() const { return x.empty() && y.empty(); }

    friend bool operator==(const LinForm& a, const LinForm& b) {
        return a.x == b.x && a.y == b.y && a.c == b.c;
    }
};

LinForm add(const PrimeField& f, const LinForm& a, const LinForm& b);
LinForm scale(const PrimeField& f, const LinForm& a, std::uint32_t c);

struct AbpEdge {
    std::uint32_t from, to;  // indices into vertex_ids
    LinForm label;
};

// Branching program over a DAG: source-to-sink paths multiply their edge
// polynomials (help symbols y_j replaced by the help polynomial h_j) and the
// program sums over all paths. Size is the vertex count.
struct Abp {
    PrimeField field;
    std::uint32_t nvars = 0;
    std::vector<NCPoly> helps;
    std::vector<std::string> vertex_ids;
    std::vector<AbpEdge> edges;
    std::uint32_t source = 0, sink = 0;

    std::size_t size() const { return vertex_ids.size(); }
    std::optional<std::uint32_t> vertex_index(const std::string& id) const;
};

// Empty iff the program is well formed (acyclic, source/sink degree rules,
// in-range symbol references, no constant or zero labels).
std::vector<std::string> validate(const Abp& a);

// The polynomial computed from source to sink.
NCPoly evaluate(const Abp& a);

struct HomogeneityReport {
    bool is_homogeneous = false;
    // Path degree of every vertex on some source-sink path (the common degree
    // of all source->v paths). Only meaningful when is_homogeneous.
    std::map<std::string, std::size_t> vertex_degree;
    std::vector<std::string> violations;
};

// Restriction of `a` to vertices lying on some source-sink path.
Abp trim_to_paths(const Abp& a);

// Checks that every edge label mixes only one degree and that path degrees
// are consistent, on the program trimmed to source-sink paths.
HomogeneityReport homogeneity_report(const Abp& a);

// Drops edges of label degree above d (every edge label must mix only one
// degree). For a homogeneous program computing a degree <= d polynomial the
// computed polynomial is unchanged.
Abp prune_high_degree(const Abp& a, std::size_t d);

// Equivalent homogeneous program over the help set made of the degree >= 2
// homogeneous parts of the original helps. The result computes the same
// polynomial, passes homogeneity_report, has size at most size(a)*(d+1), and
// carries no constant labels. Requires evaluate(a) homogeneous of degree d.
struct HomogenizeResult {
    Abp program;
    // Which (original help index, part degree) each new help symbol came from.
    std::vector<std::pair<std::uint32_t, std::size_t>> help_origin;
};

HomogenizeResult homogenize(const Abp& a, std::size_t d);

}  // namespace ncabp
