#include "ncabp/io.hpp"

#include "ncabp/errors.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace ncabp::io {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : line) {
        if (ch == ' ') {
            toks.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    toks.push_back(cur);
    return toks;
}

class LineReader {
   public:
    explicit LineReader(const std::string& text) {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                lines_.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) lines_.push_back(cur);  // tolerate a missing final newline
    }

    std::size_t line_no() const { return pos_ + 1; }
    bool at_end() const { return pos_ >= lines_.size(); }

    const std::string& peek() const {
        if (at_end()) throw parse_error("unexpected end of file", lines_.size() + 1);
        return lines_[pos_];
    }

    std::string next() {
        std::string s = peek();
        ++pos_;
        return s;
    }

    // Consumes a "<keyword> <value>" line and returns the value token.
    std::string keyword(const std::string& kw) {
        std::size_t at = line_no();
        auto toks = split(next());
        if (toks.size() != 2 || toks[0] != kw)
            throw parse_error("expected '" + kw + " <value>'", at);
        return toks[1];
    }

    std::uint64_t uint_keyword(const std::string& kw);

    void literal(const std::string& want) {
        std::size_t at = line_no();
        if (next() != want) throw parse_error("expected '" + want + "'", at);
    }

   private:
    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
};

std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok.size() > 18) throw parse_error("bad number '" + tok + "'", line);
    std::uint64_t v = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') throw parse_error("bad number '" + tok + "'", line);
        v = v * 10 + (ch - '0');
    }
    if (tok.size() > 1 && tok[0] == '0') throw parse_error("number '" + tok + "' has a leading zero", line);
    return v;
}

std::uint64_t LineReader::uint_keyword(const std::string& kw) {
    std::size_t at = line_no();
    return parse_uint(keyword(kw), at);
}

PrimeField parse_field_line(LineReader& r) {
    std::size_t at = r.line_no();
    std::uint64_t p = parse_uint(r.keyword("field"), at);
    if (!PrimeField::is_prime(static_cast<std::uint32_t>(p)))
        throw parse_error(std::to_string(p) + " is not prime", at);
    return PrimeField(static_cast<std::uint32_t>(p));
}

std::uint32_t parse_residue(const std::string& tok, const PrimeField& f, std::size_t line) {
    std::uint64_t v = parse_uint(tok, line);
    if (v >= f.p()) throw parse_error("residue " + tok + " is not reduced mod " + std::to_string(f.p()), line);
    return static_cast<std::uint32_t>(v);
}

Word parse_word(const std::string& tok, std::uint32_t nvars, std::size_t line) {
    if (tok == "e") return {};
    Word w;
    std::size_t i = 0;
    while (i < tok.size()) {
        if (tok[i] != 'x') throw parse_error("bad word token '" + tok + "'", line);
        std::size_t j = ++i;
        while (j < tok.size() && tok[j] != '.') ++j;
        std::uint64_t idx = parse_uint(tok.substr(i, j - i), line);
        if (idx >= nvars) throw parse_error("variable x" + std::to_string(idx) + " is out of range", line);
        w.push_back(static_cast<std::uint32_t>(idx));
        i = j + (j < tok.size() ? 1 : 0);
        if (j + 1 == tok.size()) throw parse_error("bad word token '" + tok + "'", line);
    }
    return w;
}

// term lines shared by ncpoly, abp helps and the helps container; terms must
// be canonical: sorted by (length, lex), one per word, coefficients reduced
// and nonzero.
void parse_terms_into(LineReader& r, NCPoly& poly, const std::string& terminator) {
    WordOrder less;
    std::optional<Word> prev;
    while (r.peek() != terminator) {
        std::size_t at = r.line_no();
        auto toks = split(r.next());
        if (toks.size() != 3 || toks[0] != "term") throw parse_error("expected 'term <coeff> <word>'", at);
        std::uint32_t c = parse_residue(toks[1], poly.field(), at);
        if (c == 0) throw parse_error("zero coefficient in term", at);
        Word w = parse_word(toks[2], poly.nvars(), at);
        if (prev && !less(*prev, w)) throw parse_error("terms are not sorted by (length, lex)", at);
        prev = w;
        poly.add_term(w, c);
    }
    r.literal(terminator);
}

void serialize_terms(std::ostringstream& out, const NCPoly& f) {
    for (const auto& [w, c] : f.terms()) out << "term " << c << ' ' << word_to_string(w) << '\n';
}

struct MatBlock {
    Mat mat;
    std::optional<std::pair<std::size_t, std::size_t>> cut_lens;
};

MatBlock parse_mat_block(LineReader& r) {
    r.literal("mat 1");
    PrimeField f = parse_field_line(r);
    std::uint64_t rows = r.uint_keyword("rows");
    std::uint64_t cols = r.uint_keyword("cols");
    std::optional<std::pair<std::size_t, std::size_t>> cut;
    if (!r.at_end() && r.peek().rfind("rowlen ", 0) == 0) {
        std::uint64_t a = r.uint_keyword("rowlen");
        std::uint64_t b = r.uint_keyword("collen");
        cut = {a, b};
    }
    Mat m(f, rows, cols);
    for (std::uint64_t row = 0; row < rows; ++row) {
        std::size_t at = r.line_no();
        auto toks = split(r.next());
        if (toks.size() != cols) throw parse_error("expected " + std::to_string(cols) + " entries", at);
        for (std::uint64_t c = 0; c < cols; ++c) m.at(row, c) = parse_residue(toks[c], f, at);
    }
    r.literal("end");
    return MatBlock{std::move(m), cut};
}

void serialize_mat_block(std::ostringstream& out, const Mat& m,
                         std::optional<std::pair<std::size_t, std::size_t>> cut_lens) {
    out << "mat 1\nfield " << m.field.p() << "\nrows " << m.rows << "\ncols " << m.cols << '\n';
    if (cut_lens) out << "rowlen " << cut_lens->first << "\ncollen " << cut_lens->second << '\n';
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) out << (c ? " " : "") << m.at(r, c);
        out << '\n';
    }
    out << "end\n";
}

void expect_done(LineReader& r) {
    if (!r.at_end()) throw parse_error("trailing content after 'end'", r.line_no());
}

}  // namespace

Mat parse_mat(const std::string& text) {
    LineReader r(text);
    MatBlock b = parse_mat_block(r);
    expect_done(r);
    if (b.cut_lens) throw parse_error("plain matrix file carries rowlen/collen headers", 1);
    return std::move(b.mat);
}

std::string serialize_mat(const Mat& m) {
    std::ostringstream out;
    serialize_mat_block(out, m, std::nullopt);
    return out.str();
}

CutMatrix parse_cutmatrix(const std::string& text) {
    LineReader r(text);
    MatBlock b = parse_mat_block(r);
    expect_done(r);
    if (!b.cut_lens) throw parse_error("cut matrix file lacks rowlen/collen headers", 1);
    auto [a, bl] = *b.cut_lens;
    // row/column counts must be n^a and n^b for a consistent alphabet size
    std::uint32_t n = 0;
    for (std::uint32_t cand = 1; cand <= 1u << 12; ++cand) {
        if (words_of_length(a, cand) == b.mat.rows && words_of_length(bl, cand) == b.mat.cols) {
            n = cand;
            break;
        }
        if ((a > 0 && words_of_length(a, cand) > b.mat.rows) ||
            (bl > 0 && words_of_length(bl, cand) > b.mat.cols))
            break;
    }
    if ((a == 0 && bl == 0)) {
        if (b.mat.rows != 1 || b.mat.cols != 1) throw parse_error("scalar cut matrix must be 1x1", 1);
        n = 1;
    }
    if (n == 0) throw parse_error("matrix shape does not match rowlen/collen for any alphabet size", 1);
    return CutMatrix{std::move(b.mat), a, bl, n};
}

std::string serialize_cutmatrix(const CutMatrix& m) {
    std::ostringstream out;
    serialize_mat_block(out, m.base, std::make_pair(m.row_len, m.col_len));
    return out.str();
}

NCPoly parse_ncpoly(const std::string& text) {
    LineReader r(text);
    r.literal("ncpoly 1");
    PrimeField f = parse_field_line(r);
    std::uint64_t n = r.uint_keyword("vars");
    NCPoly poly(f, static_cast<std::uint32_t>(n));
    parse_terms_into(r, poly, "end");
    expect_done(r);
    return poly;
}

std::string serialize_ncpoly(const NCPoly& f) {
    std::ostringstream out;
    out << "ncpoly 1\nfield " << f.field().p() << "\nvars " << f.nvars() << '\n';
    serialize_terms(out, f);
    out << "end\n";
    return out.str();
}

namespace {

std::vector<NCPoly> parse_help_blocks(LineReader& r, const PrimeField& f, std::uint32_t nvars) {
    std::vector<NCPoly> helps;
    while (!r.at_end() && r.peek().rfind("help ", 0) == 0) {
        std::size_t at = r.line_no();
        std::string name = r.keyword("help");
        if (name != "h" + std::to_string(helps.size()))
            throw parse_error("help blocks must appear in order; expected h" + std::to_string(helps.size()),
                              at);
        NCPoly h(f, nvars);
        parse_terms_into(r, h, "endhelp");
        helps.push_back(std::move(h));
    }
    return helps;
}

void serialize_help_blocks(std::ostringstream& out, const std::vector<NCPoly>& helps) {
    for (std::size_t j = 0; j < helps.size(); ++j) {
        out << "help h" << j << '\n';
        serialize_terms(out, helps[j]);
        out << "endhelp\n";
    }
}

LinForm parse_edge_label(const std::string& rest, const PrimeField& f, std::uint32_t nvars,
                         std::size_t nhelps, std::size_t at) {
    LinForm lf;
    std::size_t start = 0;
    while (start <= rest.size()) {
        std::size_t sep = rest.find(" + ", start);
        std::string part = rest.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
        std::size_t star = part.find('*');
        if (star == std::string::npos || star == 0 || star + 1 >= part.size())
            throw parse_error("expected '<coeff>*<sym>' in edge label, got '" + part + "'", at);
        std::uint32_t c = parse_residue(part.substr(0, star), f, at);
        if (c == 0) throw parse_error("zero coefficient in edge label", at);
        std::string sym = part.substr(star + 1);
        if (sym.size() < 2 || (sym[0] != 'x' && sym[0] != 'y'))
            throw parse_error("bad symbol '" + sym + "' in edge label", at);
        std::uint64_t idx = parse_uint(sym.substr(1), at);
        if (sym[0] == 'x') {
            if (idx >= nvars) throw parse_error("variable " + sym + " is out of range", at);
            if (lf.x.count(static_cast<std::uint32_t>(idx)))
                throw parse_error("repeated symbol " + sym + " in edge label", at);
            lf.x[static_cast<std::uint32_t>(idx)] = c;
        } else {
            if (idx >= nhelps) throw parse_error("help symbol " + sym + " is undefined", at);
            if (lf.y.count(static_cast<std::uint32_t>(idx)))
                throw parse_error("repeated symbol " + sym + " in edge label", at);
            lf.y[static_cast<std::uint32_t>(idx)] = c;
        }
        if (sep == std::string::npos) break;
        start = sep + 3;
    }
    return lf;
}

void serialize_edge_label(std::ostringstream& out, const LinForm& lf) {
    bool first = true;
    for (const auto& [i, c] : lf.x) {
        out << (first ? "" : " + ") << c << "*x" << i;
        first = false;
    }
    for (const auto& [j, c] : lf.y) {
        out << (first ? "" : " + ") << c << "*y" << j;
        first = false;
    }
}

}  // namespace

Abp parse_abp(const std::string& text) {
    LineReader r(text);
    r.literal("abp 1");
    PrimeField f = parse_field_line(r);
    std::uint64_t n = r.uint_keyword("vars");
    Abp a{f, static_cast<std::uint32_t>(n), {}, {}, {}, 0, 0};
    a.helps = parse_help_blocks(r, f, a.nvars);

    while (!r.at_end() && r.peek().rfind("vertex ", 0) == 0) {
        std::size_t at = r.line_no();
        std::string id = r.keyword("vertex");
        if (a.vertex_index(id)) throw parse_error("duplicate vertex id '" + id + "'", at);
        a.vertex_ids.push_back(id);
    }
    if (a.vertex_ids.empty()) throw parse_error("program declares no vertices", r.line_no());

    auto vertex_of = [&](const std::string& id, std::size_t at) {
        auto idx = a.vertex_index(id);
        if (!idx) throw parse_error("unknown vertex '" + id + "'", at);
        return *idx;
    };
    std::size_t src_at = r.line_no();
    a.source = vertex_of(r.keyword("source"), src_at);
    std::size_t sink_at = r.line_no();
    a.sink = vertex_of(r.keyword("sink"), sink_at);

    while (!r.at_end() && r.peek().rfind("edge ", 0) == 0) {
        std::size_t at = r.line_no();
        std::string line = r.next();
        std::size_t colon = line.find(" : ");
        if (colon == std::string::npos) throw parse_error("expected 'edge <u> <v> : <label>'", at);
        auto head = split(line.substr(0, colon));
        if (head.size() != 3) throw parse_error("expected 'edge <u> <v> : <label>'", at);
        std::uint32_t u = vertex_of(head[1], at);
        std::uint32_t v = vertex_of(head[2], at);
        a.edges.push_back({u, v, parse_edge_label(line.substr(colon + 3), f, a.nvars, a.helps.size(), at)});
    }
    r.literal("end");
    expect_done(r);
    return a;
}

std::string serialize_abp(const Abp& a) {
    std::ostringstream out;
    out << "abp 1\nfield " << a.field.p() << "\nvars " << a.nvars << '\n';
    serialize_help_blocks(out, a.helps);
    for (const auto& id : a.vertex_ids) out << "vertex " << id << '\n';
    out << "source " << a.vertex_ids[a.source] << "\nsink " << a.vertex_ids[a.sink] << '\n';
    for (const auto& e : a.edges) {
        out << "edge " << a.vertex_ids[e.from] << ' ' << a.vertex_ids[e.to] << " : ";
        serialize_edge_label(out, e.label);
        out << '\n';
    }
    out << "end\n";
    return out.str();
}

HelpSet parse_helps(const std::string& text) {
    LineReader r(text);
    r.literal("abphelps 1");
    PrimeField f = parse_field_line(r);
    std::uint64_t n = r.uint_keyword("vars");
    auto helps = parse_help_blocks(r, f, static_cast<std::uint32_t>(n));
    r.literal("end");
    expect_done(r);
    return HelpSet::make(f, static_cast<std::uint32_t>(n), std::move(helps));
}

std::string serialize_helps(const HelpSet& h) {
    std::ostringstream out;
    out << "abphelps 1\nfield " << h.field.p() << "\nvars " << h.nvars << '\n';
    serialize_help_blocks(out, h.polys);
    out << "end\n";
    return out.str();
}

Certificate parse_certificate(const std::string& text) {
    LineReader r(text);
    r.literal("cert 1");
    PrimeField f = parse_field_line(r);
    std::uint64_t n = r.uint_keyword("n");
    std::uint64_t degree = r.uint_keyword("degree");
    std::uint64_t claimed = r.uint_keyword("claimed-r");
    std::string solver = r.keyword("solver");
    std::string hash, preproc = "none";
    if (!r.at_end() && r.peek().rfind("helps-hash ", 0) == 0) hash = r.keyword("helps-hash");
    if (!r.at_end() && r.peek().rfind("preproc ", 0) == 0) preproc = r.keyword("preproc");
    std::size_t at = r.line_no();
    std::uint64_t count = r.uint_keyword("obstruction");
    Certificate cert{f,       static_cast<std::uint32_t>(n), degree, {}, Mat(f, 0, 0), claimed,
                     solver, hash,                          preproc};
    for (std::uint64_t i = 0; i < count; ++i) {
        MatBlock b = parse_mat_block(r);
        if (b.cut_lens) throw parse_error("embedded matrices must be plain mat blocks", at);
        cert.obstruction.push_back(std::move(b.mat));
    }
    r.literal("remote");
    MatBlock b = parse_mat_block(r);
    if (b.cut_lens) throw parse_error("embedded matrices must be plain mat blocks", r.line_no());
    cert.remote = std::move(b.mat);
    r.literal("end");
    expect_done(r);
    return cert;
}

std::string serialize_certificate(const Certificate& c) {
    std::ostringstream out;
    out << "cert 1\nfield " << c.field.p() << "\nn " << c.nvars << "\ndegree " << c.degree
        << "\nclaimed-r " << c.claimed_r << "\nsolver " << c.solver << '\n';
    if (!c.helps_hash.empty()) out << "helps-hash " << c.helps_hash << '\n';
    out << "preproc " << c.preproc << '\n';
    out << "obstruction " << c.obstruction.size() << '\n';
    for (const auto& m : c.obstruction) serialize_mat_block(out, m, std::nullopt);
    out << "remote\n";
    serialize_mat_block(out, c.remote, std::nullopt);
    out << "end\n";
    return out.str();
}

Decomposition parse_decomposition(const std::string& text) {
    LineReader r(text);
    r.literal("decomp 1");
    PrimeField f = parse_field_line(r);
    std::uint64_t n = r.uint_keyword("vars");
    std::uint64_t degree = r.uint_keyword("degree");
    std::uint64_t k = r.uint_keyword("k");
    r.literal("mprime");
    MatBlock mp = parse_mat_block(r);
    if (!mp.cut_lens) throw parse_error("mprime must carry rowlen/collen headers", r.line_no());
    Decomposition dec{f,
                      static_cast<std::uint32_t>(n),
                      degree,
                      k,
                      CutMatrix{std::move(mp.mat), mp.cut_lens->first, mp.cut_lens->second,
                                static_cast<std::uint32_t>(n)},
                      {}};
    while (!r.at_end() && r.peek().rfind("piece ", 0) == 0) {
        std::size_t at = r.line_no();
        auto toks = split(r.next());
        if (toks.size() != 3) throw parse_error("expected 'piece <help> <i>'", at);
        std::uint64_t help = parse_uint(toks[1], at);
        std::uint64_t split_pos = parse_uint(toks[2], at);
        MatBlock b = parse_mat_block(r);
        if (!b.cut_lens) throw parse_error("piece matrices must carry rowlen/collen headers", at);
        dec.pieces.push_back(DecompPiece{static_cast<std::uint32_t>(help), split_pos,
                                         CutMatrix{std::move(b.mat), b.cut_lens->first, b.cut_lens->second,
                                                   static_cast<std::uint32_t>(n)}});
    }
    r.literal("end");
    expect_done(r);
    return dec;
}

std::string serialize_decomposition(const Decomposition& d) {
    std::ostringstream out;
    out << "decomp 1\nfield " << d.field.p() << "\nvars " << d.nvars << "\ndegree " << d.degree << "\nk "
        << d.k << '\n';
    out << "mprime\n";
    serialize_mat_block(out, d.m_prime.base, std::make_pair(d.m_prime.row_len, d.m_prime.col_len));
    for (const auto& piece : d.pieces) {
        out << "piece " << piece.help << ' ' << piece.split << '\n';
        serialize_mat_block(out, piece.factor.base, std::make_pair(piece.factor.row_len, piece.factor.col_len));
    }
    out << "end\n";
    return out.str();
}

std::string detect_kind(const std::string& text) {
    LineReader r(text);
    auto toks = split(r.peek());
    if (toks.size() != 2 || toks[1] != "1") throw parse_error("missing or unsupported version line", 1);
    const std::string& kind = toks[0];
    if (kind == "mat") {
        // distinguish plain matrices from labeled cut matrices
        return text.find("\nrowlen ") != std::string::npos ? "cutmat" : "mat";
    }
    for (const char* k : {"ncpoly", "abp", "abphelps", "cert", "decomp"})
        if (kind == k) return kind;
    throw parse_error("unknown format '" + kind + "'", 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace ncabp::io
