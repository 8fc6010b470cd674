#include "ncabp/abp.hpp"

#include "ncabp/errors.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <set>
#include <stdexcept>

namespace ncabp {

LinForm add(const PrimeField& f, const LinForm& a, const LinForm& b) {
    LinForm r = a;
    for (const auto& [i, c] : b.x) {
        std::uint32_t v = f.add(r.x.count(i) ? r.x[i] : 0, c);
        if (v == 0)
            r.x.erase(i);
        else
            r.x[i] = v;
    }
    for (const auto& [j, c] : b.y) {
        std::uint32_t v = f.add(r.y.count(j) ? r.y[j] : 0, c);
        if (v == 0)
            r.y.erase(j);
        else
            r.y[j] = v;
    }
    r.c = f.add(r.c, b.c);
    return r;
}

LinForm scale(const PrimeField& f, const LinForm& a, std::uint32_t c) {
    LinForm r;
    for (const auto& [i, v] : a.x) {
        std::uint32_t w = f.mul(v, c);
        if (w) r.x[i] = w;
    }
    for (const auto& [j, v] : a.y) {
        std::uint32_t w = f.mul(v, c);
        if (w) r.y[j] = w;
    }
    r.c = f.mul(a.c, c);
    return r;
}

std::optional<std::uint32_t> Abp::vertex_index(const std::string& id) const {
    for (std::uint32_t i = 0; i < vertex_ids.size(); ++i)
        if (vertex_ids[i] == id) return i;
    return std::nullopt;
}

namespace {

// Kahn's algorithm, always picking the smallest-index ready vertex so the
// order is deterministic. Empty result signals a cycle.
std::vector<std::uint32_t> topo_order(std::size_t nverts, const std::vector<AbpEdge>& edges) {
    std::vector<std::size_t> indeg(nverts, 0);
    for (const auto& e : edges) ++indeg[e.to];
    std::set<std::uint32_t> ready;
    for (std::uint32_t v = 0; v < nverts; ++v)
        if (indeg[v] == 0) ready.insert(v);
    std::vector<std::uint32_t> order;
    while (!ready.empty()) {
        std::uint32_t v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (const auto& e : edges)
            if (e.from == v && --indeg[e.to] == 0) ready.insert(e.to);
    }
    if (order.size() != nverts) order.clear();
    return order;
}

NCPoly label_polynomial(const Abp& a, const LinForm& label) {
    NCPoly p = NCPoly::constant(a.field, a.nvars, label.c);
    for (const auto& [i, c] : label.x) p.add_term({i}, c);
    for (const auto& [j, c] : label.y) p = add(p, scale(a.helps[j], c));
    return p;
}

// Common degree of all polynomials a label refers to, or nullopt when they
// mix degrees (the label is then not homogeneously labeled).
std::optional<std::size_t> label_degree(const Abp& a, const LinForm& label, std::string* why) {
    std::optional<std::size_t> deg;
    auto merge = [&](std::size_t d, const std::string& what) {
        if (deg && *deg != d) {
            if (why) *why = what + " has degree " + std::to_string(d) + " but the label already mixes degree " + std::to_string(*deg);
            return false;
        }
        deg = d;
        return true;
    };
    if (!label.x.empty() && !merge(1, "a variable")) return std::nullopt;
    for (const auto& [j, c] : label.y) {
        const NCPoly& h = a.helps[j];
        if (h.is_zero()) {
            if (why) *why = "help h" + std::to_string(j) + " is the zero polynomial";
            return std::nullopt;
        }
        if (!h.is_homogeneous()) {
            if (why) *why = "help h" + std::to_string(j) + " is not homogeneous";
            return std::nullopt;
        }
        if (!merge(h.degree_or_throw(), "help h" + std::to_string(j))) return std::nullopt;
    }
    if (label.c != 0) {
        if (why) *why = "label carries a bare field constant";
        return std::nullopt;
    }
    return deg ? deg : std::optional<std::size_t>(0);
}

}  // namespace

std::vector<std::string> validate(const Abp& a) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& id : a.vertex_ids)
        if (!seen.insert(id).second) out.push_back("duplicate vertex id '" + id + "'");
    if (a.vertex_ids.empty()) {
        out.push_back("program has no vertices");
        return out;
    }
    if (a.source >= a.vertex_ids.size()) out.push_back("source index out of range");
    if (a.sink >= a.vertex_ids.size()) out.push_back("sink index out of range");
    for (std::size_t k = 0; k < a.edges.size(); ++k) {
        const AbpEdge& e = a.edges[k];
        std::string tag = "edge " + std::to_string(k);
        if (e.from >= a.vertex_ids.size() || e.to >= a.vertex_ids.size()) {
            out.push_back(tag + " references an unknown vertex");
            continue;
        }
        if (a.source < a.vertex_ids.size() && e.to == a.source)
            out.push_back(tag + " enters the source");
        if (a.sink < a.vertex_ids.size() && e.from == a.sink)
            out.push_back(tag + " leaves the sink");
        for (const auto& [i, c] : e.label.x)
            if (i >= a.nvars) out.push_back(tag + " uses undefined variable x" + std::to_string(i));
        for (const auto& [j, c] : e.label.y)
            if (j >= a.helps.size()) out.push_back(tag + " uses undefined help symbol y" + std::to_string(j));
        if (e.label.c != 0) out.push_back(tag + " label carries a bare field constant");
        if (e.label.is_zero()) out.push_back(tag + " label is zero");
    }
    for (const auto& h : a.helps)
        if (h.field() != a.field || h.nvars() != a.nvars) {
            out.push_back("help polynomial field or variable count differs from the program's");
            break;
        }
    if (out.empty() && topo_order(a.vertex_ids.size(), a.edges).empty())
        out.push_back("graph has a cycle");
    return out;
}

static void require_valid(const Abp& a) {
    auto violations = validate(a);
    if (!violations.empty())
        throw std::invalid_argument("invalid program: " + violations.front());
}

NCPoly evaluate(const Abp& a) {
    require_valid(a);
    auto order = topo_order(a.vertex_ids.size(), a.edges);
    std::vector<NCPoly> g(a.vertex_ids.size(), NCPoly::zero(a.field, a.nvars));
    g[a.source] = NCPoly::constant(a.field, a.nvars, 1);
    for (std::uint32_t v : order) {
        for (const auto& e : a.edges) {
            if (e.to != v || g[e.from].is_zero()) continue;
            g[v] = add(g[v], mul(g[e.from], label_polynomial(a, e.label)));
        }
    }
    return g[a.sink];
}

Abp trim_to_paths(const Abp& a) {
    const std::size_t n = a.vertex_ids.size();
    std::vector<bool> fwd(n, false), bwd(n, false);
    fwd[a.source] = true;
    bwd[a.sink] = true;
    // tiny graphs; fixed-point passes are fine
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& e : a.edges) {
            if (fwd[e.from] && !fwd[e.to]) fwd[e.to] = changed = true;
            if (bwd[e.to] && !bwd[e.from]) bwd[e.from] = changed = true;
        }
    }
    std::vector<bool> keep(n, false);
    for (std::size_t v = 0; v < n; ++v) keep[v] = fwd[v] && bwd[v];
    keep[a.source] = keep[a.sink] = true;

    Abp t{a.field, a.nvars, a.helps, {}, {}, 0, 0};
    std::vector<std::uint32_t> remap(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        remap[v] = static_cast<std::uint32_t>(t.vertex_ids.size());
        t.vertex_ids.push_back(a.vertex_ids[v]);
    }
    t.source = remap[a.source];
    t.sink = remap[a.sink];
    for (const auto& e : a.edges)
        if (keep[e.from] && keep[e.to]) t.edges.push_back({remap[e.from], remap[e.to], e.label});
    return t;
}

HomogeneityReport homogeneity_report(const Abp& a) {
    require_valid(a);
    Abp t = trim_to_paths(a);
    HomogeneityReport rep;

    std::vector<std::optional<std::size_t>> edge_deg(t.edges.size());
    for (std::size_t k = 0; k < t.edges.size(); ++k) {
        std::string why;
        edge_deg[k] = label_degree(t, t.edges[k].label, &why);
        if (!edge_deg[k])
            rep.violations.push_back("edge " + t.vertex_ids[t.edges[k].from] + " -> " +
                                     t.vertex_ids[t.edges[k].to] + " is not homogeneously labeled: " + why);
    }
    if (rep.violations.empty()) {
        auto order = topo_order(t.vertex_ids.size(), t.edges);
        std::vector<std::optional<std::size_t>> deg(t.vertex_ids.size());
        deg[t.source] = 0;
        for (std::uint32_t v : order) {
            for (std::size_t k = 0; k < t.edges.size(); ++k) {
                const auto& e = t.edges[k];
                if (e.to != v || !deg[e.from]) continue;
                std::size_t cand = *deg[e.from] + *edge_deg[k];
                if (!deg[v]) {
                    deg[v] = cand;
                } else if (*deg[v] != cand) {
                    rep.violations.push_back("vertex " + t.vertex_ids[v] + " is reached by paths of degree " +
                                             std::to_string(*deg[v]) + " and " + std::to_string(cand));
                }
            }
        }
        for (std::size_t v = 0; v < t.vertex_ids.size(); ++v)
            if (deg[v]) rep.vertex_degree[t.vertex_ids[v]] = *deg[v];
    }
    rep.is_homogeneous = rep.violations.empty();
    return rep;
}

Abp prune_high_degree(const Abp& a, std::size_t d) {
    require_valid(a);
    // Only the edge-label degrees matter here; for a fully homogeneous
    // program of degree d, no source-sink path can use a dropped edge, so the
    // computed polynomial is unchanged.
    Abp r = a;
    r.edges.clear();
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        std::string why;
        auto deg = label_degree(a, a.edges[i].label, &why);
        if (!deg)
            throw std::invalid_argument("edge " + std::to_string(i) + " has no single label degree: " + why);
        if (*deg > d) continue;
        r.edges.push_back(a.edges[i]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Homogenization.
//
// Stage 1 splits every vertex u into copies (u, 0..d); the copy (u, i)
// computes the ith homogeneous part of the original source->u polynomial.
// An original edge (u, v) induces edges (u, j) -> (v, j+c) labeled with the
// degree-c part of the edge polynomial: c = 0 gives a field constant, c = 1 a
// linear form in the variables, c >= 2 a combination of fresh help symbols
// standing for the degree-c parts of the original helps.
//
// Stage 2 removes the constant labels: first every constant edge not entering
// the sink is contracted into its head's out-edges, then constant edges into
// the sink are folded backwards into their tail's in-edges (removing the
// tail). Both passes walk edges in a fixed topological-lexicographic order.
// ---------------------------------------------------------------------------

HomogenizeResult homogenize(const Abp& a, std::size_t d) {
    if (d == 0) throw std::invalid_argument("homogenize requires degree d >= 1");
    require_valid(a);
    NCPoly f = evaluate(a);
    if (!f.is_homogeneous_of_degree(d))
        throw std::invalid_argument("program output is not homogeneous of degree " + std::to_string(d));

    const PrimeField field = a.field;
    const std::size_t S = a.vertex_ids.size();
    const std::size_t levels = d + 1;

    // New help set: nonzero homogeneous parts h_j^(i), 2 <= i <= deg(h_j).
    std::vector<NCPoly> new_helps;
    std::vector<std::pair<std::uint32_t, std::size_t>> help_origin;
    std::map<std::pair<std::uint32_t, std::size_t>, std::uint32_t> part_symbol;
    for (std::uint32_t j = 0; j < a.helps.size(); ++j) {
        auto hd = a.helps[j].degree();
        if (!hd) continue;
        for (std::size_t i = 2; i <= *hd; ++i) {
            NCPoly part = a.helps[j].homogeneous_part(i);
            if (part.is_zero()) continue;
            part_symbol[{j, i}] = static_cast<std::uint32_t>(new_helps.size());
            new_helps.push_back(std::move(part));
            help_origin.emplace_back(j, i);
        }
    }

    // Vertex (u, i) gets index i*S + pos(u) with pos the topological position
    // in the original program, so vertex indices are already topological.
    auto base_order = topo_order(S, a.edges);
    std::vector<std::uint32_t> pos(S);
    for (std::uint32_t i = 0; i < S; ++i) pos[base_order[i]] = i;
    const std::size_t V = S * levels;
    auto vid = [&](std::uint32_t u, std::size_t level) { return level * S + pos[u]; };
    const std::uint32_t source_vid = static_cast<std::uint32_t>(vid(a.source, 0));
    const std::uint32_t sink_vid = static_cast<std::uint32_t>(vid(a.sink, d));

    // Merge parallel edges of the original program (evaluate is linear in the
    // labels, so summing them changes nothing).
    std::map<std::pair<std::uint32_t, std::uint32_t>, LinForm> merged;
    for (const auto& e : a.edges) {
        auto key = std::make_pair(e.from, e.to);
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, e.label);
        else
            it->second = add(field, it->second, e.label);
    }

    // Stage 1.
    std::vector<std::map<std::uint32_t, LinForm>> out(V);
    auto add_edge = [&](std::uint32_t from, std::uint32_t to, const LinForm& lf) {
        if (lf.is_zero()) return;
        auto it = out[from].find(to);
        if (it == out[from].end()) {
            out[from].emplace(to, lf);
        } else {
            it->second = add(field, it->second, lf);
            if (it->second.is_zero()) out[from].erase(it);
        }
    };
    for (const auto& [uv, label] : merged) {
        for (std::size_t c = 0; c <= d; ++c) {
            LinForm part;
            if (c == 0) {
                std::uint32_t val = 0;
                for (const auto& [j, beta] : label.y)
                    val = field.add(val, field.mul(beta, a.helps[j].coefficient({})));
                part.c = val;
            } else if (c == 1) {
                part.x = label.x;
                for (const auto& [j, beta] : label.y) {
                    NCPoly linear = a.helps[j].homogeneous_part(1);
                    for (const auto& [w, coeff] : linear.terms())
                        part = add(field, part, LinForm{{{w[0], field.mul(beta, coeff)}}, {}, 0});
                }
            } else {
                for (const auto& [j, beta] : label.y) {
                    auto it = part_symbol.find({j, c});
                    if (it != part_symbol.end()) part.y[it->second] = beta;
                }
            }
            if (part.is_zero()) continue;
            for (std::size_t j = 0; j + c <= d; ++j)
                add_edge(static_cast<std::uint32_t>(vid(uv.first, j)),
                         static_cast<std::uint32_t>(vid(uv.second, j + c)), part);
        }
    }

    // Drop vertices not on a source->sink path before rewriting.
    {
        std::vector<bool> fwd(V, false), bwd(V, false);
        fwd[source_vid] = true;
        bwd[sink_vid] = true;
        for (bool changed = true; changed;) {
            changed = false;
            for (std::uint32_t u = 0; u < V; ++u)
                for (const auto& [v, lf] : out[u]) {
                    if (fwd[u] && !fwd[v]) fwd[v] = changed = true;
                    if (bwd[v] && !bwd[u]) bwd[u] = changed = true;
                }
        }
        for (std::uint32_t u = 0; u < V; ++u) {
            if (!(fwd[u] && bwd[u])) {
                out[u].clear();
                continue;
            }
            for (auto it = out[u].begin(); it != out[u].end();)
                it = (fwd[it->first] && bwd[it->first]) ? std::next(it) : out[u].erase(it);
        }
    }

    // Stage 2, pass A: contract constant edges that do not enter the sink.
    const std::size_t step_cap = 4 * V * V + 16;
    std::size_t steps = 0;
    for (;;) {
        std::uint32_t eu = 0, ev = 0;
        bool found = false;
        for (std::uint32_t u = 0; u < V && !found; ++u)
            for (const auto& [v, lf] : out[u]) {
                if (v != sink_vid && lf.is_constant()) {
                    eu = u;
                    ev = v;
                    found = true;
                    break;
                }
            }
        if (!found) break;
        if (++steps > step_cap) throw std::logic_error("homogenize: constant-edge elimination did not settle");
        std::uint32_t cval = out[eu][ev].c;
        out[eu].erase(ev);
        for (const auto& [w, lf2] : out[ev]) add_edge(eu, w, scale(field, lf2, cval));
    }

    // Stage 2, pass B: fold constant edges into the sink back through their
    // tail's in-edges, deleting the tail.
    std::vector<std::uint32_t> const_tails;
    for (std::uint32_t u = 0; u < V; ++u) {
        auto it = out[u].find(sink_vid);
        if (it != out[u].end() && it->second.is_constant()) const_tails.push_back(u);
    }
    for (std::uint32_t u : const_tails) {
        std::uint32_t cval = out[u][sink_vid].c;
        assert(out[u].size() == 1 && u != source_vid);
        out[u].clear();
        for (std::uint32_t v = 0; v < V; ++v) {
            auto it = out[v].find(u);
            if (it == out[v].end()) continue;
            LinForm lf = scale(field, it->second, cval);
            out[v].erase(it);
            add_edge(v, sink_vid, lf);
        }
    }

    // Final trim and assembly.
    std::vector<bool> fwd(V, false), bwd(V, false);
    fwd[source_vid] = true;
    bwd[sink_vid] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::uint32_t u = 0; u < V; ++u)
            for (const auto& [v, lf] : out[u]) {
                if (fwd[u] && !fwd[v]) fwd[v] = changed = true;
                if (bwd[v] && !bwd[u]) bwd[u] = changed = true;
            }
    }
    std::vector<bool> keep(V, false);
    for (std::uint32_t u = 0; u < V; ++u) keep[u] = fwd[u] && bwd[u];
    keep[source_vid] = keep[sink_vid] = true;

    Abp result{field, a.nvars, new_helps, {}, {}, 0, 0};
    std::vector<std::uint32_t> remap(V, 0);
    for (std::uint32_t u = 0; u < V; ++u) {
        if (!keep[u]) continue;
        remap[u] = static_cast<std::uint32_t>(result.vertex_ids.size());
        result.vertex_ids.push_back(a.vertex_ids[base_order[u % S]] + "#" + std::to_string(u / S));
    }
    result.source = remap[source_vid];
    result.sink = remap[sink_vid];
    for (std::uint32_t u = 0; u < V; ++u) {
        if (!keep[u]) continue;
        for (const auto& [v, lf] : out[u])
            if (keep[v]) result.edges.push_back({remap[u], remap[v], lf});
    }
    return HomogenizeResult{std::move(result), std::move(help_origin)};
}

}  // namespace ncabp
