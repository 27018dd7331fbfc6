#pragma once

// Plain-text formats.
//
//   operation table   line 1: n; then n lines of n integers (row a = a*b)
//   Σ-algebra         n; n rows of comp; blank line; n rows of star
//   edge list         line 1: n; then one "u v" line per edge
//   digraph catalog   edge lists separated by blank lines
//   kei catalog       encoded keis separated by blank lines
//   folded witness    n; tau as n integers; n rows of phi as 0/1 digits
//   encoded kei       "# encoded-kei ..." header line, then an operation table
//   verdict log       "<graph-id> <graph-id> <graph_iso> <kei_iso> <agree>"
//
// Lines starting with '#' are comments everywhere except the verdict log.

#include <keiso/digraph.hpp>
#include <keiso/error.hpp>
#include <keiso/folding.hpp>
#include <keiso/isomorphism.hpp>
#include <keiso/magma.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace keiso::io {

struct Line {
    std::size_t number;
    std::string_view text;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

/// Splits into trimmed lines, dropping comments. Blank lines are kept
/// (as empty text) only when `keep_blank` is set.
inline std::vector<Line> lines(std::string_view text, bool keep_blank) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto nl = text.find('\n');
        auto raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        auto t = trim(raw);
        if (!t.empty() && t.front() == '#')
            continue;
        if (t.empty() && !keep_blank)
            continue;
        out.push_back({number, t});
    }
    return out;
}

inline std::vector<std::uint64_t> integers(const Line& line) {
    std::vector<std::uint64_t> out;
    auto s = line.text;
    while (true) {
        s = trim(s);
        if (s.empty())
            break;
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || (p != s.data() + s.size() && *p != ' ' && *p != '\t'))
            throw ParseError(ParseError::Kind::MalformedLine, line.number,
                             "expected non-negative integers, got \"" + std::string(line.text) +
                                 "\"");
        out.push_back(v);
        s = s.substr(static_cast<std::size_t>(p - s.data()));
    }
    return out;
}

inline std::size_t read_size(const std::vector<Line>& ls, std::size_t& pos, std::size_t fallback_line,
                             const char* what) {
    if (pos >= ls.size())
        throw ParseError(ParseError::Kind::MalformedLine, fallback_line,
                         std::string("missing ") + what);
    auto v = integers(ls[pos]);
    if (v.size() != 1 || v[0] == 0)
        throw ParseError(ParseError::Kind::MalformedLine, ls[pos].number,
                         std::string("expected a positive ") + what);
    if (v[0] > 4096)
        throw ParseError(ParseError::Kind::OutOfRange, ls[pos].number,
                         std::string(what) + " is unreasonably large");
    ++pos;
    return static_cast<std::size_t>(v[0]);
}

inline std::vector<Element> read_rows(const std::vector<Line>& ls, std::size_t& pos, std::size_t n,
                                      std::size_t last_line) {
    std::vector<Element> flat;
    flat.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        if (pos >= ls.size())
            throw ParseError(ParseError::Kind::MalformedLine, last_line + 1,
                             "table truncated: expected " + std::to_string(n) + " rows, got " +
                                 std::to_string(r));
        const auto& line = ls[pos++];
        auto v = integers(line);
        if (v.size() != n)
            throw ParseError(ParseError::Kind::MalformedLine, line.number,
                             "expected " + std::to_string(n) + " entries, got " +
                                 std::to_string(v.size()));
        for (auto x : v) {
            if (x >= n)
                throw ParseError(ParseError::Kind::OutOfRange, line.number,
                                 "entry " + std::to_string(x) + " is not below " +
                                     std::to_string(n));
            flat.push_back(static_cast<Element>(x));
        }
    }
    return flat;
}

inline std::size_t last_line_number(std::string_view text) {
    std::size_t count = 0;
    for (char c : text)
        count += c == '\n';
    return count + (!text.empty() && text.back() != '\n');
}

inline void expect_end(const std::vector<Line>& ls, std::size_t pos) {
    if (pos < ls.size())
        throw ParseError(ParseError::Kind::MalformedLine, ls[pos].number, "unexpected trailing data");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Operation tables

inline Magma parse_table(std::string_view text) {
    const auto ls = detail::lines(text, false);
    std::size_t pos = 0;
    const auto n = detail::read_size(ls, pos, 1, "carrier size");
    auto flat = detail::read_rows(ls, pos, n, detail::last_line_number(text));
    detail::expect_end(ls, pos);
    return Magma(n, std::move(flat));
}

inline std::string format_rows(const Magma& m) {
    std::string s;
    const auto n = static_cast<Element>(m.size());
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            if (b)
                s += ' ';
            s += std::to_string(m.at(a, b));
        }
        s += '\n';
    }
    return s;
}

inline std::string format_table(const Magma& m) {
    return std::to_string(m.size()) + "\n" + format_rows(m);
}

inline FiniteGroup parse_group(std::string_view text) { return FiniteGroup(parse_table(text)); }

// ---------------------------------------------------------------------------
// Σ-algebras

inline SigmaAlgebra parse_sigma(std::string_view text) {
    const auto ls = detail::lines(text, false);
    std::size_t pos = 0;
    const auto n = detail::read_size(ls, pos, 1, "carrier size");
    const auto last = detail::last_line_number(text);
    auto comp = detail::read_rows(ls, pos, n, last);
    auto star = detail::read_rows(ls, pos, n, last);
    detail::expect_end(ls, pos);
    return SigmaAlgebra(Magma(n, std::move(comp)), Magma(n, std::move(star)));
}

inline std::string format_sigma(const SigmaAlgebra& s) {
    return std::to_string(s.size()) + "\n" + format_rows(s.comp_table()) + "\n" +
           format_rows(s.star_table());
}

// ---------------------------------------------------------------------------
// Edge lists

inline Digraph parse_edge_list(std::string_view text) {
    const auto ls = detail::lines(text, false);
    std::size_t pos = 0;
    const auto n = detail::read_size(ls, pos, 1, "vertex count");
    Digraph g(n);
    for (; pos < ls.size(); ++pos) {
        const auto& line = ls[pos];
        auto v = detail::integers(line);
        if (v.size() != 2)
            throw ParseError(ParseError::Kind::MalformedLine, line.number,
                             "expected \"u v\", got \"" + std::string(line.text) + "\"");
        if (v[0] >= n || v[1] >= n)
            throw ParseError(ParseError::Kind::OutOfRange, line.number,
                             "vertex " + std::to_string(std::max(v[0], v[1])) +
                                 " is not below " + std::to_string(n));
        if (v[0] == v[1])
            throw ParseError(ParseError::Kind::SelfLoop, line.number,
                             "self-loop on vertex " + std::to_string(v[0]));
        g.add_edge(static_cast<Element>(v[0]), static_cast<Element>(v[1]));
    }
    return g;
}

inline std::string format_edge_list(const Digraph& g) {
    std::string s = std::to_string(g.size()) + "\n";
    for (auto [u, v] : g.edges())
        s += std::to_string(u) + " " + std::to_string(v) + "\n";
    return s;
}

inline std::string format_catalog(const std::vector<Digraph>& graphs) {
    std::string s;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (i)
            s += '\n';
        s += format_edge_list(graphs[i]);
    }
    return s;
}

namespace detail {

/// Splits text into blank-line separated records.
inline std::vector<std::string> records(std::string_view text) {
    std::vector<std::string> out;
    std::string record;
    auto flush = [&] {
        if (!lines(record, false).empty())
            out.push_back(record);
        record.clear();
    };
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (trim(raw).empty())
            flush();
        else {
            record.append(raw);
            record += '\n';
        }
    }
    flush();
    return out;
}

} // namespace detail

inline std::vector<Digraph> parse_catalog(std::string_view text) {
    std::vector<Digraph> out;
    for (const auto& r : detail::records(text))
        out.push_back(parse_edge_list(r));
    return out;
}

/// Several operation tables separated by blank lines, e.g. a kei catalog.
inline std::vector<Magma> parse_tables(std::string_view text) {
    std::vector<Magma> out;
    for (const auto& r : detail::records(text))
        out.push_back(parse_table(r));
    return out;
}

// ---------------------------------------------------------------------------
// Folded witnesses and encoded keis

inline std::string format_witness(const FoldedWitness& w) {
    const auto n = static_cast<Element>(w.size());
    std::string s = std::to_string(n) + "\n";
    for (Element a = 0; a < n; ++a) {
        if (a)
            s += ' ';
        s += std::to_string(w.tau()[a]);
    }
    s += '\n';
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b)
            s += w.phi().contains(a, b) ? '1' : '0';
        s += '\n';
    }
    return s;
}

inline FoldedWitness parse_witness(std::string_view text) {
    const auto ls = detail::lines(text, false);
    std::size_t pos = 0;
    const auto n = detail::read_size(ls, pos, 1, "carrier size");
    if (pos >= ls.size())
        throw ParseError(ParseError::Kind::MalformedLine, detail::last_line_number(text) + 1,
                         "missing tau line");
    const auto& tau_line = ls[pos++];
    auto t = detail::integers(tau_line);
    if (t.size() != n)
        throw ParseError(ParseError::Kind::MalformedLine, tau_line.number,
                         "tau must list " + std::to_string(n) + " entries");
    std::vector<Element> tau;
    for (auto x : t) {
        if (x >= n)
            throw ParseError(ParseError::Kind::OutOfRange, tau_line.number, "tau entry out of range");
        tau.push_back(static_cast<Element>(x));
    }
    Membership phi(n);
    for (Element a = 0; a < n; ++a) {
        if (pos >= ls.size())
            throw ParseError(ParseError::Kind::MalformedLine, detail::last_line_number(text) + 1,
                             "phi matrix truncated");
        const auto& line = ls[pos++];
        std::string digits;
        for (char c : line.text)
            if (c != ' ' && c != '\t')
                digits += c;
        if (digits.size() != n || digits.find_first_not_of("01") != std::string::npos)
            throw ParseError(ParseError::Kind::MalformedLine, line.number,
                             "phi row must have " + std::to_string(n) + " 0/1 digits");
        for (Element b = 0; b < n; ++b)
            phi.set(a, b, digits[b] == '1');
    }
    detail::expect_end(ls, pos);
    return FoldedWitness(std::move(tau), std::move(phi));
}

inline std::string format_encoded_kei(const EncodedKei& k) {
    return "# encoded-kei n_vertices=" + std::to_string(k.graph.size()) +
           " index=(v,i)->2v+i\n" + format_table(k.magma);
}

// ---------------------------------------------------------------------------
// Verdict log

inline std::string format_verdict(const std::string& id_a, const std::string& id_b, const Verdict& v) {
    return id_a + " " + id_b + " " + (v.graph_iso ? "1" : "0") + " " + (v.kei_iso ? "1" : "0") +
           " " + (v.agree ? "1" : "0");
}

struct VerdictRecord {
    std::string id_a, id_b;
    Verdict verdict;
};

inline VerdictRecord parse_verdict(std::string_view line) {
    std::istringstream in{std::string(line)};
    VerdictRecord r;
    int g = -1, k = -1, a = -1;
    std::string extra;
    if (!(in >> r.id_a >> r.id_b >> g >> k >> a) || (in >> extra) || g < 0 || g > 1 || k < 0 ||
        k > 1 || a < 0 || a > 1)
        throw ParseError(ParseError::Kind::MalformedLine, 1, "bad verdict record");
    r.verdict.graph_iso = g;
    r.verdict.kei_iso = k;
    r.verdict.agree = a;
    return r;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path);
    out << content;
}

} // namespace keiso::io
