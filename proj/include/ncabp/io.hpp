#pragma once

#include "ncabp/abp.hpp"
#include "ncabp/cutmatrix.hpp"
#include "ncabp/hardgen.hpp"
#include "ncabp/linalg.hpp"
#include "ncabp/ncpoly.hpp"

#include <string>

namespace ncabp::io {

// All formats are line based, LF terminated, no trailing whitespace, and
// versioned by their first line ("mat 1", "ncpoly 1", ...). Serialization is
// canonical: parse(serialize(v)) == v and serialize(parse(text)) == text for
// canonical text. Parsers throw parse_error with the offending line.

Mat parse_mat(const std::string& text);
std::string serialize_mat(const Mat& m);

CutMatrix parse_cutmatrix(const std::string& text);
std::string serialize_cutmatrix(const CutMatrix& m);

NCPoly parse_ncpoly(const std::string& text);
std::string serialize_ncpoly(const NCPoly& f);

Abp parse_abp(const std::string& text);
std::string serialize_abp(const Abp& a);

HelpSet parse_helps(const std::string& text);
std::string serialize_helps(const HelpSet& h);

Certificate parse_certificate(const std::string& text);
std::string serialize_certificate(const Certificate& c);

Decomposition parse_decomposition(const std::string& text);
std::string serialize_decomposition(const Decomposition& d);

// First token of the version line: "mat", "ncpoly", "abp", "abphelps",
// "cert" or "decomp". A mat file with rowlen/collen headers reports "cutmat".
std::string detect_kind(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ncabp::io
