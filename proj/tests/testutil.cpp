#include "testutil.hpp"

#include <set>

namespace ncabp::test {

std::vector<SubspaceBasis> enumerate_subspaces(const PrimeField& f, std::size_t ambient,
                                               std::size_t max_dim) {
    std::vector<Vec> all;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < ambient; ++i) total *= f.p();
    for (std::uint64_t code = 0; code < total; ++code) {
        Vec v(f, ambient);
        std::uint64_t c = code;
        for (std::size_t i = ambient; i-- > 0;) {
            v[i] = static_cast<std::uint32_t>(c % f.p());
            c /= f.p();
        }
        all.push_back(std::move(v));
    }

    std::set<SubspaceBasis> seen;
    std::vector<SubspaceBasis> out;
    std::vector<std::size_t> pick(max_dim, 0);
    for (;;) {
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < max_dim; ++i) gens.push_back(all[pick[i]]);
        SubspaceBasis b = canonicalize(f, ambient, gens);
        if (b.dim() <= max_dim && seen.insert(b).second) out.push_back(b);
        std::size_t pos = 0;
        while (pos < max_dim && ++pick[pos] == all.size()) pick[pos++] = 0;
        if (pos == max_dim) break;
    }
    return out;
}

namespace {

LinForm random_linear_x(std::mt19937_64& rng, const PrimeField& f, std::uint32_t n) {
    std::uniform_int_distribution<std::uint32_t> coeff(0, f.p() - 1);
    LinForm lf;
    while (lf.x.empty()) {
        for (std::uint32_t i = 0; i < n; ++i) {
            std::uint32_t c = coeff(rng);
            if (c) lf.x[i] = c;
        }
    }
    return lf;
}

}  // namespace

HomogeneousOutputCase random_homogeneous_output_abp(std::mt19937_64& rng, std::uint32_t p) {
    PrimeField field(p);
    std::uniform_int_distribution<std::uint32_t> nv_dist(2, 3);
    std::uniform_int_distribution<std::size_t> verts_dist(3, 6);
    std::uniform_int_distribution<int> pct(0, 99);
    std::uniform_int_distribution<std::uint32_t> coeff(1, p - 1);

    for (;;) {
        const std::uint32_t n = nv_dist(rng);
        const std::size_t nverts = verts_dist(rng);

        Abp a{field, n, {}, {}, {}, 0, static_cast<std::uint32_t>(nverts - 1)};
        const bool use_help = pct(rng) < 60;
        if (use_help) a.helps.push_back(random_poly(rng, field, n, 2, 3));
        for (std::size_t v = 0; v < nverts; ++v) a.vertex_ids.push_back("v" + std::to_string(v));

        for (std::size_t u = 0; u < nverts; ++u) {
            for (std::size_t v = u + 1; v < nverts; ++v) {
                if (pct(rng) >= 45) continue;
                LinForm lf;
                if (use_help && !a.helps[0].is_zero() && pct(rng) < 35) {
                    lf.y[0] = coeff(rng);
                    if (pct(rng) < 50) lf = add(field, lf, random_linear_x(rng, field, n));
                } else {
                    lf = random_linear_x(rng, field, n);
                }
                a.edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), lf});
            }
        }
        if (use_help && a.helps[0].is_zero()) a.helps.clear();

        NCPoly f = evaluate(a);
        auto deg = f.degree();
        if (!deg || *deg < 1 || *deg > 4) continue;

        if (!f.is_homogeneous()) {
            NCPoly correction = sub(f.homogeneous_part(*deg), f);
            LinForm lf;
            lf.y[static_cast<std::uint32_t>(a.helps.size())] = 1;
            a.helps.push_back(std::move(correction));
            a.edges.push_back({a.source, a.sink, lf});
        }
        return HomogeneousOutputCase{std::move(a), *deg};
    }
}

Abp random_homogeneous_abp(std::mt19937_64& rng, std::uint32_t p) {
    PrimeField field(p);
    std::uniform_int_distribution<std::uint32_t> nv_dist(2, 3);
    std::uniform_int_distribution<std::size_t> d_dist(2, 4);
    std::uniform_int_distribution<std::size_t> mid_dist(2, 6);
    std::uniform_int_distribution<int> pct(0, 99);
    std::uniform_int_distribution<std::uint32_t> coeff(1, p - 1);

    for (;;) {
        const std::uint32_t n = nv_dist(rng);
        const std::size_t d = d_dist(rng);
        const std::size_t nmid = mid_dist(rng);

        Abp a{field, n, {}, {}, {}, 0, 1};
        std::uniform_int_distribution<std::size_t> hdeg_dist(2, std::min<std::size_t>(3, d));
        std::uniform_int_distribution<std::size_t> m_dist(1, 2);
        const std::size_t m = m_dist(rng);
        for (std::size_t j = 0; j < m; ++j)
            a.helps.push_back(random_homogeneous_poly(rng, field, n, hdeg_dist(rng), 3));

        std::vector<std::size_t> level;
        a.vertex_ids.push_back("s");
        level.push_back(0);
        a.vertex_ids.push_back("t");
        level.push_back(d);
        std::uniform_int_distribution<std::size_t> lvl_dist(1, d - 1);
        for (std::size_t v = 0; v < nmid; ++v) {
            a.vertex_ids.push_back("v" + std::to_string(v));
            level.push_back(lvl_dist(rng));
        }

        for (std::uint32_t u = 0; u < a.vertex_ids.size(); ++u) {
            for (std::uint32_t v = 0; v < a.vertex_ids.size(); ++v) {
                if (level[u] >= level[v] || u == a.sink || v == a.source) continue;
                const std::size_t delta = level[v] - level[u];
                if (delta == 1) {
                    if (pct(rng) < 55)
                        a.edges.push_back({u, v, random_linear_x(rng, field, n)});
                } else {
                    LinForm lf;
                    for (std::uint32_t j = 0; j < m; ++j)
                        if (a.helps[j].degree_or_throw() == delta && pct(rng) < 45) lf.y[j] = coeff(rng);
                    if (!lf.is_zero()) a.edges.push_back({u, v, lf});
                }
            }
        }

        auto rep = homogeneity_report(a);
        if (!rep.is_homogeneous) continue;  // cannot happen for layered builds
        if (!rep.vertex_degree.count("t")) continue;  // no source-sink path
        return a;
    }
}

}  // namespace ncabp::test
