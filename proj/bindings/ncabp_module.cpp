// Python bindings for the main operations: exact matrices over GF(p),
// noncommutative polynomials, branching programs, cut decompositions,
// remote-point solvers and hard-polynomial certificates.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncabp/abp.hpp"
#include "ncabp/errors.hpp"
#include "ncabp/cutmatrix.hpp"
#include "ncabp/hardgen.hpp"
#include "ncabp/io.hpp"
#include "ncabp/rmp.hpp"

#include <sstream>

namespace py = pybind11;
using namespace ncabp;

namespace {

Mat mat_from_rows(std::uint32_t p, const std::vector<std::vector<std::uint32_t>>& rows) {
    PrimeField f(p);
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f.reduce(rows[i][j]);
    }
    return m;
}

std::vector<std::vector<std::uint32_t>> mat_to_rows(const Mat& m) {
    std::vector<std::vector<std::uint32_t>> rows(m.rows, std::vector<std::uint32_t>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) rows[i][j] = m.at(i, j);
    return rows;
}

RemoteInstance instance_of(std::uint32_t p, const std::vector<Mat>& span, std::size_t n) {
    return RemoteInstance::make(PrimeField(p), n, span);
}

DistanceMode mode_of(bool exhaustive, std::uint64_t samples, std::uint64_t seed) {
    if (exhaustive) return Exhaustive{};
    return Sampled{samples, seed};
}

Rational rational_of(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

}  // namespace

PYBIND11_MODULE(_ncabp, m) {
    m.doc() = "exact toolkit for branching programs with help polynomials, cut matrices and "
              "rank-metric remote points";

    py::register_exception<parse_error>(m, "ParseError");
    py::register_exception<resource_error>(m, "ResourceError");

    py::class_<Mat>(m, "Mat")
        .def(py::init([](std::uint32_t p, const std::vector<std::vector<std::uint32_t>>& rows) {
                 return mat_from_rows(p, rows);
             }),
             py::arg("p"), py::arg("rows"))
        .def_property_readonly("p", [](const Mat& x) { return x.field.p(); })
        .def_property_readonly("rows", [](const Mat& x) { return x.rows; })
        .def_property_readonly("cols", [](const Mat& x) { return x.cols; })
        .def("to_lists", &mat_to_rows)
        .def("rank", [](const Mat& x) { return rank(x); })
        .def("serialize", [](const Mat& x) { return io::serialize_mat(x); })
        .def_static("parse", [](const std::string& text) { return io::parse_mat(text); })
        .def_static("identity", [](std::uint32_t p, std::size_t n) { return Mat::identity(PrimeField(p), n); })
        .def("__eq__", [](const Mat& a, const Mat& b) { return a == b; })
        .def("__repr__", [](const Mat& x) {
            std::ostringstream os;
            os << "Mat(GF(" << x.field.p() << "), " << x.rows << "x" << x.cols << ")";
            return os.str();
        });

    m.def("rank_distance", &rank_distance, py::arg("p"), py::arg("q"));

    py::class_<NCPoly>(m, "NCPoly")
        .def_static("parse", [](const std::string& text) { return io::parse_ncpoly(text); })
        .def_static(
            "from_terms",
            [](std::uint32_t p, std::uint32_t nvars,
               const std::vector<std::pair<std::uint32_t, Word>>& terms) {
                NCPoly f(PrimeField(p), nvars);
                for (const auto& [c, w] : terms) {
                    for (auto letter : w)
                        if (letter >= nvars) throw std::invalid_argument("letter out of range");
                    f.add_term(w, c);
                }
                return f;
            },
            py::arg("p"), py::arg("nvars"), py::arg("terms"))
        .def_property_readonly("p", [](const NCPoly& f) { return f.field().p(); })
        .def_property_readonly("nvars", &NCPoly::nvars)
        .def("degree", [](const NCPoly& f) { return f.degree(); })
        .def("is_zero", &NCPoly::is_zero)
        .def("is_homogeneous", [](const NCPoly& f) { return f.is_homogeneous(); })
        .def("term_count", &NCPoly::term_count)
        .def("coefficient", [](const NCPoly& f, const Word& w) { return f.coefficient(w); })
        .def("homogeneous_part", &NCPoly::homogeneous_part)
        .def("serialize", [](const NCPoly& f) { return io::serialize_ncpoly(f); })
        .def("__add__", [](const NCPoly& f, const NCPoly& g) { return add(f, g); })
        .def("__mul__", [](const NCPoly& f, const NCPoly& g) { return mul(f, g); })
        .def("__eq__", [](const NCPoly& f, const NCPoly& g) { return f == g; })
        .def("__repr__", [](const NCPoly& f) {
            std::ostringstream os;
            os << "NCPoly(GF(" << f.field().p() << "), " << f.term_count() << " terms)";
            return os.str();
        });

    m.def(
        "full_rank_poly",
        [](std::uint32_t p, std::uint32_t n, std::size_t d) { return full_rank_poly(PrimeField(p), n, d); },
        py::arg("p"), py::arg("n"), py::arg("d"));

    py::class_<CutMatrix>(m, "CutMatrix")
        .def_property_readonly("base", [](const CutMatrix& c) { return c.base; })
        .def_property_readonly("row_len", [](const CutMatrix& c) { return c.row_len; })
        .def_property_readonly("col_len", [](const CutMatrix& c) { return c.col_len; })
        .def("serialize", [](const CutMatrix& c) { return io::serialize_cutmatrix(c); });

    m.def(
        "cut_matrix", [](const NCPoly& f, std::size_t k) { return cut_matrix(f, k); }, py::arg("f"),
        py::arg("k"));

    py::class_<Abp>(m, "Abp")
        .def_static("parse", [](const std::string& text) { return io::parse_abp(text); })
        .def_property_readonly("size", [](const Abp& a) { return a.size(); })
        .def_property_readonly("nvars", [](const Abp& a) { return a.nvars; })
        .def_property_readonly("helps", [](const Abp& a) { return a.helps; })
        .def("validate", [](const Abp& a) { return validate(a); })
        .def("evaluate", [](const Abp& a) { return evaluate(a); })
        .def("is_homogeneous", [](const Abp& a) { return homogeneity_report(a).is_homogeneous; })
        .def("vertex_degrees", [](const Abp& a) { return homogeneity_report(a).vertex_degree; })
        .def(
            "homogenize",
            [](const Abp& a, std::size_t d) {
                auto res = homogenize(a, d);
                return res.program;
            },
            py::arg("d"))
        .def("prune_high_degree", [](const Abp& a, std::size_t d) { return prune_high_degree(a, d); })
        .def("serialize", [](const Abp& a) { return io::serialize_abp(a); });

    py::class_<DecompPiece>(m, "DecompPiece")
        .def_property_readonly("help", [](const DecompPiece& p) { return p.help; })
        .def_property_readonly("split", [](const DecompPiece& p) { return p.split; })
        .def_property_readonly("factor", [](const DecompPiece& p) { return p.factor; });

    py::class_<Decomposition>(m, "Decomposition")
        .def_property_readonly("k", [](const Decomposition& d) { return d.k; })
        .def_property_readonly("degree", [](const Decomposition& d) { return d.degree; })
        .def_property_readonly("m_prime", [](const Decomposition& d) { return d.m_prime; })
        .def_property_readonly("pieces", [](const Decomposition& d) { return d.pieces; })
        .def("serialize", [](const Decomposition& d) { return io::serialize_decomposition(d); })
        .def(
            "verify",
            [](const Decomposition& dec, const NCPoly& f, const std::vector<NCPoly>& helps,
               std::size_t d) { return verify_decomposition(dec, f, helps, d); },
            py::arg("f"), py::arg("helps"), py::arg("d"));

    m.def(
        "decompose", [](const Abp& a, std::size_t k) { return decompose(a, k); }, py::arg("abp"),
        py::arg("k"));

    m.def(
        "min_span_distance",
        [](const Mat& point, const std::vector<Mat>& span, bool exhaustive, std::uint64_t samples,
           std::uint64_t seed) {
            auto inst = instance_of(point.field.p(), span, point.rows);
            auto rep = min_span_distance(point, inst, mode_of(exhaustive, samples, seed));
            return py::make_tuple(rep.distance, rep.exact);
        },
        py::arg("point"), py::arg("span"), py::arg("exhaustive") = true, py::arg("samples") = 1000,
        py::arg("seed") = 0);

    m.def(
        "solve_simple",
        [](std::uint32_t p, std::size_t n, const std::vector<Mat>& span) {
            auto sol = solve_simple(instance_of(p, span, n));
            return py::make_tuple(sol.point, sol.r);
        },
        py::arg("p"), py::arg("n"), py::arg("span"));

    m.def(
        "solve_improved",
        [](std::uint32_t p, std::size_t n, const std::vector<Mat>& span, std::size_t ell, std::size_t r,
           std::uint32_t c0, const std::string& c) {
            ImprovedOptions opts;
            opts.c0 = c0;
            if (!c.empty()) opts.c = rational_of(c);
            return solve_improved(instance_of(p, span, n), ell, r, opts);
        },
        py::arg("p"), py::arg("n"), py::arg("span"), py::arg("ell"), py::arg("r"), py::arg("c0") = 24,
        py::arg("c") = "");

    py::class_<Certificate>(m, "Certificate")
        .def_static("parse", [](const std::string& text) { return io::parse_certificate(text); })
        .def_property_readonly("claimed_r", [](const Certificate& c) { return c.claimed_r; })
        .def_property_readonly("k", [](const Certificate& c) { return c.obstruction.size(); })
        .def_property_readonly("degree", [](const Certificate& c) { return c.degree; })
        .def_property_readonly("solver", [](const Certificate& c) { return c.solver; })
        .def_property_readonly("preproc", [](const Certificate& c) { return c.preproc; })
        .def_property_readonly("remote", [](const Certificate& c) { return c.remote; })
        .def_property_readonly("obstruction", [](const Certificate& c) { return c.obstruction; })
        .def("serialize", [](const Certificate& c) { return io::serialize_certificate(c); })
        .def(
            "verify",
            [](const Certificate& c, bool exhaustive, std::uint64_t samples, std::uint64_t seed) {
                return verify_certificate(c, mode_of(exhaustive, samples, seed));
            },
            py::arg("exhaustive") = true, py::arg("samples") = 1000, py::arg("seed") = 0);

    m.def(
        "generate_hard",
        [](std::uint32_t p, std::uint32_t nvars, const std::vector<NCPoly>& helps, std::size_t d,
           const std::string& solver, std::size_t ell, std::size_t r, std::uint32_t c0) {
            HelpSet hs = HelpSet::make(PrimeField(p), nvars, helps);
            HardSolver s = SimpleSolver{};
            if (solver == "improved") s = ImprovedSolver{ell, r, ImprovedOptions{c0, std::nullopt}};
            auto res = generate_hard(hs, d, s);
            return py::make_tuple(res.f, res.cert);
        },
        py::arg("p"), py::arg("nvars"), py::arg("helps"), py::arg("d"), py::arg("solver") = "simple",
        py::arg("ell") = 1, py::arg("r") = 1, py::arg("c0") = 24);

    m.def(
        "bound_report",
        [](std::uint32_t n, std::uint64_t m_count, std::uint64_t d, const std::string& eps,
           const std::string& variant) {
            BoundVariant v;
            if (variant == "low")
                v = BoundVariant::low_deg;
            else if (variant == "high")
                v = BoundVariant::high_deg;
            else if (variant == "gen-low")
                v = BoundVariant::gen_low;
            else if (variant == "gen-high")
                v = BoundVariant::gen_high;
            else
                throw std::invalid_argument("variant must be low | high | gen-low | gen-high");
            auto rep = bound_report(n, m_count, d, rational_of(eps), v);
            py::dict out;
            out["base"] = rep.value.base.str();
            out["root"] = rep.value.root;
            out["floored"] = rep.value.floored;
            out["decimal"] = rep.value.decimal(12);
            return out;
        },
        py::arg("n"), py::arg("m"), py::arg("d"), py::arg("eps"), py::arg("variant"));
}
