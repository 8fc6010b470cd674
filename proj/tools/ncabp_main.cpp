// Command line front end: exact ABP / cut-matrix / remote-point toolkit.
//
// Exit codes: 0 success or verified; 1 verification failed; 2 usage or input
// error; 3 resource budget exceeded.

#include "CLI11.hpp"
#include "ncabp/abp.hpp"
#include "ncabp/cutmatrix.hpp"
#include "ncabp/errors.hpp"
#include "ncabp/hardgen.hpp"
#include "ncabp/io.hpp"
#include "ncabp/limits.hpp"
#include "ncabp/rmp.hpp"

#include <iostream>
#include <optional>

using namespace ncabp;

namespace {

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse '" + text + "' as a rational (use a or a/b)");
    }
}

HelpSet load_helps(const std::vector<std::string>& paths) {
    std::optional<PrimeField> field;
    std::uint32_t nvars = 0;
    std::vector<NCPoly> polys;
    for (const auto& path : paths) {
        std::string text = io::read_file(path);
        std::string kind = io::detect_kind(text);
        if (kind == "abphelps") {
            HelpSet part = io::parse_helps(text);
            if (!field) {
                field = part.field;
                nvars = part.nvars;
            }
            if (*field != part.field || nvars != part.nvars)
                throw std::invalid_argument(path + ": field or variable count differs from earlier inputs");
            for (auto& p : part.polys) polys.push_back(std::move(p));
        } else if (kind == "ncpoly") {
            NCPoly p = io::parse_ncpoly(text);
            if (!field) {
                field = p.field();
                nvars = p.nvars();
            }
            if (*field != p.field() || nvars != p.nvars())
                throw std::invalid_argument(path + ": field or variable count differs from earlier inputs");
            polys.push_back(std::move(p));
        } else {
            throw std::invalid_argument(path + ": expected an ncpoly or abphelps file, got '" + kind + "'");
        }
    }
    return HelpSet::make(*field, nvars, std::move(polys));
}

std::vector<Mat> load_span(const std::vector<std::string>& paths) {
    std::vector<Mat> mats;
    for (const auto& path : paths) mats.push_back(io::parse_mat(io::read_file(path)));
    return mats;
}

RemoteInstance instance_from(const std::vector<Mat>& mats, const char* what) {
    if (mats.empty()) throw std::invalid_argument(std::string(what) + ": at least one matrix is required");
    const Mat& first = mats.front();
    if (first.rows != first.cols) throw std::invalid_argument("span matrices must be square");
    return RemoteInstance::make(first.field, first.rows, mats);
}

DistanceMode mode_from(bool exhaustive, std::uint64_t samples, std::uint64_t seed) {
    if (exhaustive) return Exhaustive{};
    return Sampled{samples, seed};
}

const char* kVerifyCaveat =
    "note: sampled mode only upper-bounds the true distance; it can refute a claim but not confirm it";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for branching programs with help polynomials, cut matrices and rank-metric "
                 "remote points"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option_function<std::uint64_t>(
        "--budget",
        [](const std::uint64_t& v) {
            budget().max_terms = v;
            budget().max_span_elements = v;
        },
        "cap on polynomial terms and enumeration sizes (default 10^7 terms, 2^24 span elements)");

    int exit_code = 0;

    // ----- abp ---------------------------------------------------------
    auto* abp_cmd = app.add_subcommand("abp", "evaluate and transform branching programs");
    abp_cmd->require_subcommand(1);
    {
        auto* eval = abp_cmd->add_subcommand("eval", "evaluate the program polynomial");
        auto in = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        eval->add_option("--in", *in, "program file (abp)")->required();
        eval->add_option("--out", *out, "write the polynomial here (ncpoly)");
        eval->callback([in, out]() {
            Abp a = io::parse_abp(io::read_file(*in));
            NCPoly f = evaluate(a);
            std::string text = io::serialize_ncpoly(f);
            std::cout << "program: " << *in << "  size " << a.size() << "  helps " << a.helps.size() << '\n';
            std::cout << "terms " << f.term_count();
            if (f.degree()) std::cout << "  degree " << *f.degree();
            std::cout << '\n';
            if (out->empty())
                std::cout << text;
            else
                io::write_file(*out, text);
        });
    }
    {
        auto* homog = abp_cmd->add_subcommand("homogenize", "rewrite into an equivalent homogeneous program");
        auto in = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto degree = std::make_shared<std::uint64_t>(0);
        homog->add_option("--in", *in, "program file (abp)")->required();
        homog->add_option("--degree", *degree, "target degree (default: degree of the output polynomial)");
        homog->add_option("--out", *out, "write the homogeneous program here")->required();
        homog->callback([in, out, degree]() {
            Abp a = io::parse_abp(io::read_file(*in));
            std::size_t d = *degree;
            if (d == 0) {
                NCPoly f = evaluate(a);
                d = f.degree_or_throw();
            }
            auto res = homogenize(a, d);
            io::write_file(*out, io::serialize_abp(res.program));
            std::cout << "degree " << d << "  size " << a.size() << " -> " << res.program.size()
                      << "  (bound " << a.size() * (d + 1) << ")  helps " << a.helps.size() << " -> "
                      << res.program.helps.size() << '\n';
        });
    }

    // ----- cut ---------------------------------------------------------
    auto* cut_cmd = app.add_subcommand("cut", "communication matrices and their decomposition");
    cut_cmd->require_subcommand(1);
    {
        auto* cm = cut_cmd->add_subcommand("matrix", "cut matrix of a homogeneous polynomial");
        auto in = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto k = std::make_shared<std::uint64_t>();
        cm->add_option("--in", *in, "polynomial file (ncpoly)")->required();
        cm->add_option("--k", *k, "cut position")->required();
        cm->add_option("--out", *out, "write the cut matrix here");
        cm->callback([in, out, k]() {
            NCPoly f = io::parse_ncpoly(io::read_file(*in));
            CutMatrix m = cut_matrix(f, *k);
            std::cout << "k " << *k << "  shape " << m.base.rows << "x" << m.base.cols << "  rank "
                      << rank(m.base) << '\n';
            std::string text = io::serialize_cutmatrix(m);
            if (out->empty())
                std::cout << text;
            else
                io::write_file(*out, text);
        });
    }
    {
        auto* dc = cut_cmd->add_subcommand("decompose", "cut decomposition of a homogeneous program");
        auto in = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto k = std::make_shared<std::uint64_t>();
        dc->add_option("--in", *in, "program file (abp)")->required();
        dc->add_option("--k", *k, "cut position")->required();
        dc->add_option("--out", *out, "write the decomposition here");
        dc->callback([in, out, k]() {
            Abp a = io::parse_abp(io::read_file(*in));
            Decomposition dec = decompose(a, *k);
            std::cout << "k " << *k << "  size " << a.size() << "  rank(M') " << rank(dec.m_prime.base)
                      << "  pieces " << dec.pieces.size() << '\n';
            for (const auto& piece : dec.pieces)
                std::cout << "piece h" << piece.help << " i=" << piece.split << "  rank "
                          << rank(piece.factor.base) << '\n';
            if (!verify_decomposition(dec, evaluate(a), a.helps, dec.degree))
                throw std::logic_error("internal check failed: decomposition does not reconstruct M_k");
            if (!out->empty()) io::write_file(*out, io::serialize_decomposition(dec));
        });
    }
    {
        auto* vf = cut_cmd->add_subcommand("verify", "check a stored decomposition against its program");
        auto decomp = std::make_shared<std::string>();
        auto abp_path = std::make_shared<std::string>();
        auto poly_path = std::make_shared<std::string>();
        auto helps_paths = std::make_shared<std::vector<std::string>>();
        vf->add_option("--decomp", *decomp, "decomposition file")->required();
        vf->add_option("--abp", *abp_path, "program supplying both f and the helps");
        vf->add_option("--poly", *poly_path, "polynomial file (with --helps)");
        vf->add_option("--helps", *helps_paths, "help polynomial files")->expected(-1);
        vf->callback([&exit_code, decomp, abp_path, poly_path, helps_paths]() {
            Decomposition dec = io::parse_decomposition(io::read_file(*decomp));
            NCPoly f = NCPoly::zero(dec.field, dec.nvars);
            std::vector<NCPoly> helps;
            if (!abp_path->empty()) {
                Abp a = io::parse_abp(io::read_file(*abp_path));
                f = evaluate(a);
                helps = a.helps;
            } else if (!poly_path->empty()) {
                f = io::parse_ncpoly(io::read_file(*poly_path));
                if (!helps_paths->empty()) helps = load_helps(*helps_paths).polys;
            } else {
                throw std::invalid_argument("provide --abp or --poly");
            }
            bool ok = verify_decomposition(dec, f, helps, dec.degree);
            std::cout << (ok ? "decomposition verified: M_k reconstructed exactly"
                             : "decomposition MISMATCH: identity fails")
                      << '\n';
            exit_code = ok ? 0 : 1;
        });
    }

    // ----- rmp ---------------------------------------------------------
    auto* rmp_cmd = app.add_subcommand("rmp", "remote matrix point solvers and verification");
    rmp_cmd->require_subcommand(1);
    {
        auto* simple = rmp_cmd->add_subcommand("simple", "column-extension solver");
        auto inputs = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>();
        simple->add_option("--in", *inputs, "span matrices (mat)")->required()->expected(-1);
        simple->add_option("--out", *out, "write the remote point here")->required();
        simple->callback([inputs, out]() {
            RemoteInstance inst = instance_from(load_span(*inputs), "rmp simple");
            auto sol = solve_simple(inst);
            io::write_file(*out, io::serialize_mat(sol.point));
            std::cout << "N " << inst.n << "  k " << inst.k() << "  r " << sol.r << '\n';
            std::cout << "guarantee: rank distance from the span is at least " << sol.r << '\n';
        });
    }
    {
        auto* improved = rmp_cmd->add_subcommand("improved", "subspace-covering solver");
        auto span = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>();
        auto ell = std::make_shared<std::uint64_t>(1);
        auto r = std::make_shared<std::uint64_t>(1);
        auto c0 = std::make_shared<std::uint32_t>(24);
        auto c_text = std::make_shared<std::string>();
        auto fallback = std::make_shared<bool>(false);
        improved->add_option("--span", *span, "span matrices (mat)")->required()->expected(-1);
        improved->add_option("--ell", *ell, "span dimension parameter (dim <= ell*N)")->required();
        improved->add_option("--r", *r, "target distance (output is at distance > r)")->required();
        improved->add_option("--c0", *c0, "case-2 constant (default 24)");
        improved->add_option("--c", *c_text, "case-2 rational constant c (default 1)");
        improved->add_flag("--fallback", *fallback,
                           "fall back to the simple solver if the parameters are infeasible");
        improved->add_option("--out", *out, "write the remote point here")->required();
        improved->callback([span, out, ell, r, c0, c_text, fallback]() {
            RemoteInstance inst = instance_from(load_span(*span), "rmp improved");
            ImprovedOptions opts;
            opts.c0 = *c0;
            if (!c_text->empty()) opts.c = parse_rational(*c_text);
            std::cout << "N " << inst.n << "  k " << inst.k() << "  ell " << *ell << "  r " << *r << "  c0 "
                      << *c0 << '\n';
            try {
                Mat point = solve_improved(inst, *ell, *r, opts);
                io::write_file(*out, io::serialize_mat(point));
                std::cout << "guarantee: rank distance from the span is at least " << (*r + 1) << '\n';
            } catch (const std::invalid_argument& e) {
                if (!*fallback) throw;
                std::cout << "improved solver infeasible (" << e.what() << "); falling back\n";
                auto sol = solve_simple(inst);
                io::write_file(*out, io::serialize_mat(sol.point));
                std::cout << "fallback guarantee: rank distance at least " << sol.r << '\n';
            }
        });
    }
    {
        auto* verify = rmp_cmd->add_subcommand("verify", "check the distance of a point from a span");
        auto point_path = std::make_shared<std::string>();
        auto span = std::make_shared<std::vector<std::string>>();
        auto exhaustive = std::make_shared<bool>(false);
        auto samples = std::make_shared<std::uint64_t>(1000);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto min_r = std::make_shared<std::uint64_t>();
        verify->add_option("--point", *point_path, "the candidate remote point (mat)")->required();
        verify->add_option("--span", *span, "span matrices (mat)")->required()->expected(-1);
        verify->add_flag("--exhaustive", *exhaustive, "enumerate the whole span");
        verify->add_option("--samples", *samples, "number of sampled span elements (default 1000)");
        verify->add_option("--seed", *seed, "sampling seed (default 0)");
        verify->add_option("--min", *min_r, "required minimum rank distance")->required();
        verify->callback([&exit_code, point_path, span, exhaustive, samples, seed, min_r]() {
            Mat point = io::parse_mat(io::read_file(*point_path));
            RemoteInstance inst = instance_from(load_span(*span), "rmp verify");
            auto rep = min_span_distance(point, inst, mode_from(*exhaustive, *samples, *seed));
            if (rep.exact) {
                std::cout << "exhaustive minimum rank distance: " << rep.distance << " (required " << *min_r
                          << ")\n";
            } else {
                std::cout << "sampled minimum rank distance: " << rep.distance << " over " << *samples
                          << " samples, seed " << *seed << " (required " << *min_r << ")\n";
                std::cout << kVerifyCaveat << '\n';
            }
            exit_code = rep.distance >= *min_r ? 0 : 1;
        });
    }

    // ----- hardgen -----------------------------------------------------
    auto* hg_cmd = app.add_subcommand("hardgen", "explicit hard polynomials with certificates");
    hg_cmd->require_subcommand(1);
    {
        auto* gen = hg_cmd->add_subcommand("gen", "generate a hard polynomial for a help set");
        auto helps_paths = std::make_shared<std::vector<std::string>>();
        auto degree = std::make_shared<std::uint64_t>();
        auto field_p = std::make_shared<std::uint32_t>(0);
        auto solver = std::make_shared<std::string>("simple");
        auto ell = std::make_shared<std::uint64_t>(1);
        auto r = std::make_shared<std::uint64_t>(1);
        auto c0 = std::make_shared<std::uint32_t>(24);
        auto c_text = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto cert_path = std::make_shared<std::string>();
        gen->add_option("--helps", *helps_paths, "help polynomials (abphelps or ncpoly files)")
            ->required()
            ->expected(-1);
        gen->add_option("--degree", *degree, "even target degree")->required();
        gen->add_option("--field", *field_p, "expected field modulus (cross-checked against the inputs)");
        gen->add_option("--solver", *solver, "simple | improved")
            ->check(CLI::IsMember({"simple", "improved"}));
        gen->add_option("--ell", *ell, "improved solver: ell");
        gen->add_option("--r", *r, "improved solver: target r (certificate claims r+1)");
        gen->add_option("--c0", *c0, "improved solver: case-2 constant");
        gen->add_option("--c", *c_text, "improved solver: case-2 rational c");
        gen->add_option("--out", *out, "write the polynomial here (ncpoly)")->required();
        gen->add_option("--cert", *cert_path, "write the certificate here")->required();
        gen->callback([helps_paths, degree, field_p, solver, ell, r, c0, c_text, out, cert_path]() {
            HelpSet helps = load_helps(*helps_paths);
            if (*field_p != 0 && helps.field.p() != *field_p)
                throw std::invalid_argument("--field " + std::to_string(*field_p) +
                                            " does not match the inputs (field " +
                                            std::to_string(helps.field.p()) + ")");
            HardSolver hs = SimpleSolver{};
            if (*solver == "improved") {
                ImprovedSolver imp;
                imp.ell = *ell;
                imp.target_r = *r;
                imp.opts.c0 = *c0;
                if (!c_text->empty()) imp.opts.c = parse_rational(*c_text);
                hs = imp;
            }
            auto res = generate_hard(helps, *degree, hs);
            io::write_file(*out, io::serialize_ncpoly(res.f));
            io::write_file(*cert_path, io::serialize_certificate(res.cert));
            std::cout << "field " << helps.field.p() << "  n " << helps.nvars << "  degree " << *degree
                      << "  N " << res.cert.remote.rows << '\n';
            std::cout << "helps " << helps.m() << " (hash " << res.cert.helps_hash << ", preprocessing "
                      << res.cert.preproc << ")  obstruction size " << res.cert.obstruction.size() << '\n';
            std::cout << "solver " << res.cert.solver << "  claimed rank distance " << res.cert.claimed_r
                      << '\n';
            std::cout << "size bound for homogeneous programs over the processed helps: "
                      << res.cert.claimed_r << '\n';
            if (res.cert.preproc != "none")
                std::cout << "size bound for general programs over the original helps: claimed/(d+1) = "
                          << res.general_bound.str() << '\n';
        });
    }
    {
        auto* verify = hg_cmd->add_subcommand("verify", "check a certificate");
        auto cert_path = std::make_shared<std::string>();
        auto exhaustive = std::make_shared<bool>(false);
        auto samples = std::make_shared<std::uint64_t>(1000);
        auto seed = std::make_shared<std::uint64_t>(0);
        verify->add_option("--cert", *cert_path, "certificate file")->required();
        verify->add_flag("--exhaustive", *exhaustive, "enumerate the whole obstruction span");
        verify->add_option("--samples", *samples, "number of sampled span elements (default 1000)");
        verify->add_option("--seed", *seed, "sampling seed (default 0)");
        verify->callback([&exit_code, cert_path, exhaustive, samples, seed]() {
            Certificate cert = io::parse_certificate(io::read_file(*cert_path));
            std::cout << "field " << cert.field.p() << "  n " << cert.nvars << "  degree " << cert.degree
                      << "  k " << cert.obstruction.size() << "  claimed " << cert.claimed_r << "  solver "
                      << cert.solver << '\n';
            bool ok = verify_certificate(cert, mode_from(*exhaustive, *samples, *seed));
            if (!*exhaustive) std::cout << kVerifyCaveat << '\n';
            std::cout << (ok ? "certificate verified" : "certificate REFUTED") << '\n';
            exit_code = ok ? 0 : 1;
        });
    }
    {
        auto* bound = hg_cmd->add_subcommand("bound", "evaluate the closed-form size bounds");
        auto variant = std::make_shared<std::string>();
        auto n = std::make_shared<std::uint32_t>();
        auto m = std::make_shared<std::uint64_t>();
        auto d = std::make_shared<std::uint64_t>();
        auto eps_text = std::make_shared<std::string>();
        bound->add_option("--variant", *variant, "low | high | gen-low | gen-high")
            ->required()
            ->check(CLI::IsMember({"low", "high", "gen-low", "gen-high"}));
        bound->add_option("--n", *n, "variable count")->required();
        bound->add_option("--m", *m, "help polynomial count")->required();
        bound->add_option("--d", *d, "degree")->required();
        bound->add_option("--eps", *eps_text, "rational eps in (0,1), e.g. 1/4")->required();
        bound->callback([variant, n, m, d, eps_text]() {
            BoundVariant v = BoundVariant::low_deg;
            if (*variant == "high") v = BoundVariant::high_deg;
            if (*variant == "gen-low") v = BoundVariant::gen_low;
            if (*variant == "gen-high") v = BoundVariant::gen_high;
            auto rep = bound_report(*n, *m, *d, parse_rational(*eps_text), v);
            std::cout << "variant " << *variant << "  n " << *n << "  m " << *m << "  d " << *d << "  eps "
                      << *eps_text << '\n';
            if (rep.value.is_rational())
                std::cout << "value = " << rep.value.base.str() << (rep.value.floored ? " (floored)" : "")
                          << "  ~ " << rep.value.decimal() << '\n';
            else
                std::cout << "value = (" << rep.value.base.str() << ")^(1/" << rep.value.root << ")  ~ "
                          << rep.value.decimal() << '\n';
        });
    }

    // ----- fmt ---------------------------------------------------------
    auto* fmt_cmd = app.add_subcommand("fmt", "file format utilities");
    fmt_cmd->require_subcommand(1);
    {
        auto* check = fmt_cmd->add_subcommand("check", "parse files and confirm canonical serialization");
        auto files = std::make_shared<std::vector<std::string>>();
        check->add_option("files", *files, "files to check")->required()->expected(-1);
        check->callback([&exit_code, files]() {
            for (const auto& path : *files) {
                std::string text = io::read_file(path);
                std::string kind = io::detect_kind(text);
                std::string canon;
                if (kind == "mat")
                    canon = io::serialize_mat(io::parse_mat(text));
                else if (kind == "cutmat")
                    canon = io::serialize_cutmatrix(io::parse_cutmatrix(text));
                else if (kind == "ncpoly")
                    canon = io::serialize_ncpoly(io::parse_ncpoly(text));
                else if (kind == "abp")
                    canon = io::serialize_abp(io::parse_abp(text));
                else if (kind == "abphelps")
                    canon = io::serialize_helps(io::parse_helps(text));
                else if (kind == "cert")
                    canon = io::serialize_certificate(io::parse_certificate(text));
                else
                    canon = io::serialize_decomposition(io::parse_decomposition(text));
                if (canon == text) {
                    std::cout << path << ": " << kind << ", canonical\n";
                } else {
                    std::cout << path << ": " << kind << ", parses but is NOT canonical\n";
                    exit_code = 1;
                }
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
