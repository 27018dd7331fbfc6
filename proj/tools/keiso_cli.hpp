#pragma once

// Command-line front end. Exit codes: 0 success / property holds,
// 1 semantic failure, 2 malformed input or usage.

#include <keiso/keiso.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace keiso::cli {

enum ExitCode : int { ok = 0, failure = 1, malformed = 2 };

namespace detail {

inline std::string join(const std::vector<Element>& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

/// Writes to `path`, or to `out` when no path was given.
inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty())
        out << content;
    else
        io::write_file(path, content);
}

inline std::vector<Element> parse_subset(const std::string& text) {
    std::vector<Element> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size())
            throw ParseError(ParseError::Kind::MalformedLine, 1, "bad subset entry \"" + item + "\"");
        out.push_back(static_cast<Element>(v));
    }
    return out;
}

/// Every violating tuple of one axiom, up to `limit`. Used by --verbose.
inline std::vector<std::vector<Element>> all_violations(const Magma& m, const std::string& axiom,
                                                        std::size_t limit) {
    std::vector<std::vector<Element>> out;
    const auto n = static_cast<Element>(m.size());
    auto add = [&](std::vector<Element> w) {
        AxiomReport r = AxiomReport::fail(axiom, w);
        if (out.size() < limit && reproduces_violation(m, r))
            out.push_back(std::move(w));
    };
    if (axiom == axiom_names::ld) {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Element c = 0; c < n; ++c)
                    add({a, b, c});
    } else if (axiom == axiom_names::idempotent) {
        for (Element a = 0; a < n; ++a)
            add({a});
    } else {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                add({a, b});
    }
    return out;
}

struct Options {
    std::string input, input2, output, witness, expect, subset, log, mode = "exhaustive",
                                                                 keis_out;
    std::size_t n = 0, n_max = 3, pairs = 500, oracle_limit = 6;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool verbose = false, all = false, dedupe = false, keis = false, tables = false,
         canonical = false, group = false, sigma = false;
};

inline int cmd_check(const Options& o, std::ostream& out) {
    const Magma m = io::parse_table(io::read_file(o.input));
    const auto c = classify_detailed(m);
    out << "is_ld " << c.ladder.is_ld << "\n"
        << "is_rack " << c.ladder.is_rack << "\n"
        << "is_quandle " << c.ladder.is_quandle << "\n"
        << "is_kei " << c.ladder.is_kei << "\n";
    for (const auto* r : {&c.ld, &c.unique_left_division, &c.idempotent, &c.involutory}) {
        if (r->holds)
            continue;
        out << r->describe() << "\n";
        if (o.verbose)
            for (const auto& w : all_violations(m, r->axiom, 50))
                out << "  " << r->axiom << " (" << join(w, ",") << ")\n";
    }
    if (o.expect.empty())
        return ok;
    bool holds = false;
    if (o.expect == "kei")
        holds = c.ladder.is_kei;
    else if (o.expect == "quandle")
        holds = c.ladder.is_quandle;
    else if (o.expect == "rack")
        holds = c.ladder.is_rack;
    else if (o.expect == "ld")
        holds = c.ladder.is_ld;
    return holds ? ok : failure;
}

inline int cmd_encode(const Options& o, std::ostream& out) {
    const Digraph g = io::parse_edge_list(io::read_file(o.input));
    emit(o.output, io::format_encoded_kei(encode_kei(g)), out);
    return ok;
}

inline int cmd_detect(const Options& o, std::ostream& out) {
    const Magma m = io::parse_table(io::read_file(o.input));
    const auto witnesses = detect_folded_all(m, o.all ? SIZE_MAX : 1);
    if (witnesses.empty()) {
        out << "not folded\n";
        return failure;
    }
    std::string text;
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        if (i)
            text += "\n";
        text += io::format_witness(witnesses[i]);
    }
    emit(o.output, text, out);
    if (o.all)
        out << "# " << witnesses.size() << " witnesses\n";
    return ok;
}

inline int cmd_decode(const Options& o, std::ostream& out) {
    const Magma m = io::parse_table(io::read_file(o.input));
    std::optional<FoldedWitness> w;
    if (!o.witness.empty()) {
        w = io::parse_witness(io::read_file(o.witness));
    } else {
        w = detect_folded(m);
        if (!w) {
            out << "not folded\n";
            return failure;
        }
    }
    const auto d = decode_graph(m, *w);
    if (!is_magma_isomorphism(encode_kei(d.graph).magma, m, d.iso))
        throw InternalContradiction("decoded isomorphism does not verify");
    emit(o.output, io::format_edge_list(d.graph), out);
    out << "# iso (v,i)->x: " << join(d.iso.map()) << "\n";
    return ok;
}

inline int cmd_iso(const Options& o, std::ostream& out) {
    if (o.tables) {
        const Magma a = io::parse_table(io::read_file(o.input));
        const Magma b = io::parse_table(io::read_file(o.input2));
        const auto f = magma_iso_search(a, b);
        if (a.size() == b.size() && a.size() <= bruteforce_limit &&
            magma_iso_bruteforce(a, b).has_value() != f.has_value())
            throw InternalContradiction("search and brute force disagree");
        if (!f) {
            out << "not isomorphic\n";
            return failure;
        }
        out << "isomorphic\n" << "map " << join(f->map()) << "\n";
        return ok;
    }
    const Digraph g = io::parse_edge_list(io::read_file(o.input));
    const Digraph h = io::parse_edge_list(io::read_file(o.input2));
    ReductionOptions ro;
    ro.oracle_limit = o.oracle_limit;
    const auto v = reduction_check(g, h, ro);
    out << io::format_verdict(graph_id(g), graph_id(h), v) << "\n";
    if (auto f = find_graph_isomorphism(g, h))
        out << "graph map " << join(f->map()) << "\n";
    if (!v.agree) {
        out << "DISAGREEMENT\n";
        return failure;
    }
    return v.graph_iso ? ok : failure;
}

inline int cmd_reduce_test(const Options& o, std::ostream& out) {
    std::vector<GraphPair> pairs;
    if (o.mode == "exhaustive") {
        if (o.canonical)
            pairs = canonical_pairs(o.n_max);
        else if (o.n_max > max_all_pairs_vertices)
            throw TooLarge("exhaustive all-pairs mode is limited to --n-max 3; pass --canonical "
                           "for n = 4 or use --mode sampled");
        else
            pairs = all_labeled_pairs(o.n_max);
    } else if (o.mode == "sampled") {
        if (o.n_max > 8)
            throw TooLarge("sampled mode is limited to --n-max 8");
        pairs = sampled_pairs(o.n_max, o.pairs, o.seed);
    } else {
        throw ParseError(ParseError::Kind::MalformedLine, 1, "unknown mode " + o.mode);
    }
    ReductionOptions ro;
    ro.oracle_limit = o.oracle_limit;
    const auto result = run_battery(pairs, ro, o.jobs);
    std::string log;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        log += io::format_verdict(graph_id(pairs[i].first), graph_id(pairs[i].second),
                                  result.verdicts[i]) + "\n";
    if (!o.log.empty())
        io::write_file(o.log, log);
    std::size_t iso = 0;
    for (const auto& v : result.verdicts)
        iso += v.graph_iso;
    out << "pairs " << pairs.size() << "\n"
        << "isomorphic " << iso << "\n"
        << "agreements " << result.agreements << "\n"
        << "disagreements " << result.disagreements.size() << "\n";
    for (auto i : result.disagreements)
        out << "  " << graph_id(pairs[i].first) << " " << graph_id(pairs[i].second) << "\n";
    return result.disagreements.empty() ? ok : failure;
}

inline int cmd_sigma_check(const Options& o, std::ostream& out) {
    const std::string text = io::read_file(o.input);
    const bool as_group = o.group || (!o.sigma && [&] {
        // One table block means a group file.
        try {
            io::parse_table(text);
            return true;
        } catch (const ParseError&) {
            return false;
        }
    }());
    const SigmaAlgebra s = as_group ? group_to_sigma(io::parse_group(text)) : io::parse_sigma(text);
    bool all = true;
    for (int k = 1; k <= 4; ++k) {
        const auto r = check_sigma_identity(s, k);
        out << r.describe() << "\n";
        all = all && r.holds;
    }
    if (all) {
        const auto r = check_sigma_implies_ld(s);
        out << r.describe() << "\n";
        all = r.holds;
    }
    return all ? ok : failure;
}

inline int cmd_enumerate(const Options& o, std::ostream& out) {
    const auto graphs = enumerate_digraphs(o.n, o.dedupe);
    emit(o.output, io::format_catalog(graphs), out);
    std::ostream& report = o.output.empty() ? std::cerr : out;
    report << "graphs " << graphs.size() << "\n";
    if (o.keis) {
        std::string tables;
        std::size_t keis = 0;
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            const auto k = encode_kei(graphs[i]);
            keis += classify(k.magma).is_kei;
            if (i)
                tables += "\n";
            tables += io::format_encoded_kei(k);
        }
        const std::string path =
            !o.keis_out.empty() ? o.keis_out : (o.output.empty() ? "" : o.output + ".keis");
        if (path.empty())
            throw PreconditionViolated("--keis needs -o or --keis-out");
        io::write_file(path, tables);
        report << "keis " << keis << "\n";
        if (keis != graphs.size())
            return failure;
    }
    return ok;
}

inline int cmd_apex(const Options& o, std::ostream& out) {
    const Digraph g = io::parse_edge_list(io::read_file(o.input));
    const auto w = parse_subset(o.subset);
    emit(o.output, io::format_edge_list(apex_extension(g, w)), out);
    return ok;
}

} // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    detail::Options o;
    CLI::App app{"Finite left-distributive algebras, keis of digraphs, and isomorphism checks", "keiso"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Classify an operation table on the axiom ladder");
    check->add_option("table", o.input)->required();
    check->add_option("--expect", o.expect)->check(CLI::IsMember({"kei", "quandle", "rack", "ld"}));
    check->add_flag("-v,--verbose", o.verbose, "List every violating tuple");

    auto* encode = app.add_subcommand("encode", "Write the kei of a digraph");
    encode->add_option("graph", o.input)->required();
    encode->add_option("-o,--output", o.output);

    auto* detect = app.add_subcommand("detect", "Find a folded-kei witness for a table");
    detect->add_option("table", o.input)->required();
    detect->add_option("-o,--output", o.output);
    detect->add_flag("--all", o.all, "Emit every witness");

    auto* decode = app.add_subcommand("decode", "Recover a digraph from a folded kei");
    decode->add_option("table", o.input)->required();
    decode->add_option("--witness", o.witness);
    decode->add_option("-o,--output", o.output);

    auto* iso = app.add_subcommand("iso", "Decide isomorphism of two graphs (or two tables)");
    iso->add_option("first", o.input)->required();
    iso->add_option("second", o.input2)->required();
    iso->add_flag("--tables", o.tables, "Inputs are operation tables");
    iso->add_option("--oracle-limit", o.oracle_limit);

    auto* reduce = app.add_subcommand("reduce-test", "Compare graph and kei isomorphism verdicts");
    reduce->add_option("--n-max", o.n_max);
    reduce->add_option("--mode", o.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    reduce->add_flag("--canonical", o.canonical, "Pairs of canonical representatives");
    reduce->add_option("--pairs", o.pairs);
    reduce->add_option("--seed", o.seed);
    reduce->add_option("--log", o.log);
    reduce->add_option("--jobs", o.jobs);
    reduce->add_option("--oracle-limit", o.oracle_limit);

    auto* sigma = app.add_subcommand("sigma-check", "Check the four identities on a group or algebra");
    sigma->add_option("file", o.input)->required();
    sigma->add_flag("--group", o.group, "Input is a group table");
    sigma->add_flag("--sigma", o.sigma, "Input is a two-table algebra");

    auto* enumerate = app.add_subcommand("enumerate", "Write the catalog of digraphs on n vertices");
    enumerate->add_option("n", o.n)->required();
    enumerate->add_flag("--dedupe", o.dedupe, "Canonical representatives only");
    enumerate->add_flag("--keis", o.keis, "Also write each kei table");
    enumerate->add_option("--keis-out", o.keis_out);
    enumerate->add_option("-o,--output", o.output);

    auto* apex = app.add_subcommand("apex", "Add an apex vertex pointing at a subset");
    apex->add_option("graph", o.input)->required();
    apex->add_option("--subset", o.subset, "Comma-separated vertices");
    apex->add_option("-o,--output", o.output);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return malformed;
    }

    try {
        if (*check) return detail::cmd_check(o, out);
        if (*encode) return detail::cmd_encode(o, out);
        if (*detect) return detail::cmd_detect(o, out);
        if (*decode) return detail::cmd_decode(o, out);
        if (*iso) return detail::cmd_iso(o, out);
        if (*reduce) return detail::cmd_reduce_test(o, out);
        if (*sigma) return detail::cmd_sigma_check(o, out);
        if (*enumerate) return detail::cmd_enumerate(o, out);
        if (*apex) return detail::cmd_apex(o, out);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return malformed;
    } catch (const IoError& e) {
        err << e.what() << "\n";
        return malformed;
    } catch (const InvalidStructure& e) {
        err << "invalid input: " << e.what() << "\n";
        return malformed;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return failure;
    }
    return malformed;
}

} // namespace keiso::cli
