#ifndef MINCYC_IO_HPP
#define MINCYC_IO_HPP

/**
 * Text and JSON formats.
 *
 * smesh:   `dim n`, `vertices N`, then one top simplex per line as n+1
 *          whitespace-separated labels. `#` starts a comment.
 * chain:   one simplex per line as vertex labels; the dimension is the arity
 *          minus one. A basis file holds several chains separated by `---`.
 * weights: `u v weight` per line; unlisted edges weigh 1.
 *
 * Labels are remapped to dense ids: numerically if every label is a
 * nonnegative integer, lexicographically otherwise.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mincyc/complex.hpp"
#include "mincyc/covering.hpp"
#include "mincyc/error.hpp"
#include "mincyc/index_function.hpp"
#include "mincyc/mincycle.hpp"
#include "mincyc/weights.hpp"

namespace mincyc::io {

using Json = nlohmann::ordered_json;

/// Vertex labels; labels[id] is the label of dense vertex id.
class LabelMap {
public:
    LabelMap() = default;
    explicit LabelMap(std::vector<std::string> labels) : labels_(std::move(labels))
    {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            ids_.emplace(labels_[i], static_cast<VertexId>(i));
    }

    static LabelMap identity(std::size_t n)
    {
        std::vector<std::string> l;
        for (std::size_t i = 0; i < n; ++i)
            l.push_back(std::to_string(i));
        return LabelMap(std::move(l));
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(VertexId v) const { return labels_.at(v); }
    std::optional<VertexId> id(const std::string& label) const
    {
        auto it = ids_.find(label);
        if (it == ids_.end())
            return std::nullopt;
        return it->second;
    }
    bool is_identity() const
    {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] != std::to_string(i))
                return false;
        return true;
    }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> ids_;
};

struct ParsedMesh {
    SimplicialComplex complex;
    LabelMap labels;
};

struct ParseOptions {
    bool allow_open = false;
};

namespace detail {

inline std::string at_line(std::size_t line, const std::string& msg)
{
    return "line " + std::to_string(line) + ": " + msg;
}

/// Lines with comments stripped, paired with 1-based line numbers; blank lines dropped.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenize(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view line = text.substr(pos, end - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::istringstream in{std::string(line)};
        std::vector<std::string> tokens;
        for (std::string tok; in >> tok;)
            tokens.push_back(tok);
        if (!tokens.empty())
            out.emplace_back(line_no, std::move(tokens));
        pos = end + 1;
    }
    return out;
}

inline std::optional<std::uint64_t> parse_unsigned(const std::string& s)
{
    if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        return std::nullopt;
    return std::stoull(s);
}

inline bool label_less_numeric(const std::string& a, const std::string& b)
{
    return *parse_unsigned(a) < *parse_unsigned(b);
}

} // namespace detail

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content))
        throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
}

inline ParsedMesh parse_mesh(std::string_view text, ParseOptions opts = {})
{
    const auto lines = detail::tokenize(text);
    auto header = [&](std::size_t i, const char* key) -> std::pair<std::size_t, std::uint64_t> {
        if (i >= lines.size())
            throw Error(ErrorCode::ParseError, std::string("missing '") + key + "' header");
        const auto& [no, tok] = lines[i];
        if (tok.size() != 2 || tok[0] != key || !detail::parse_unsigned(tok[1]))
            throw Error(ErrorCode::ParseError, detail::at_line(no, std::string("expected '") + key + " <count>'"));
        return {no, *detail::parse_unsigned(tok[1])};
    };
    const auto [dim_line, n] = header(0, "dim");
    const auto [count_line, declared] = header(1, "vertices");
    if (n < 1 || n > 16)
        throw Error(ErrorCode::ParseError, detail::at_line(dim_line, "dimension must be between 1 and 16"));

    std::vector<std::string> seen;
    std::unordered_map<std::string, std::size_t> first_use;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto& [no, tok] = lines[i];
        if (tok.size() != n + 1)
            throw Error(ErrorCode::BadArity, detail::at_line(no, "expected " + std::to_string(n + 1) + " labels, got " +
                                                                     std::to_string(tok.size())));
        for (const auto& label : tok)
            if (first_use.emplace(label, no).second)
                seen.push_back(label);
    }
    if (seen.size() != declared)
        throw Error(ErrorCode::ParseError, detail::at_line(count_line, "declared " + std::to_string(declared) +
                                                                           " vertices, simplices use " +
                                                                           std::to_string(seen.size())));
    const bool numeric =
        std::all_of(seen.begin(), seen.end(), [](const std::string& s) { return detail::parse_unsigned(s).has_value(); });
    if (numeric)
        std::sort(seen.begin(), seen.end(), detail::label_less_numeric);
    else
        std::sort(seen.begin(), seen.end());
    LabelMap labels(seen);

    std::vector<Simplex> top;
    std::vector<std::size_t> line_of;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto& [no, tok] = lines[i];
        Simplex s;
        for (const auto& label : tok)
            s.push_back(*labels.id(label));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(ErrorCode::BadArity, detail::at_line(no, "repeated vertex in simplex"));
        top.push_back(std::move(s));
        line_of.push_back(no);
    }
    {
        std::vector<std::size_t> order(top.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return top[a] < top[b]; });
        for (std::size_t i = 1; i < order.size(); ++i)
            if (top[order[i]] == top[order[i - 1]])
                throw Error(ErrorCode::DuplicateSimplex,
                            detail::at_line(line_of[std::max(order[i], order[i - 1])], "duplicate simplex"));
    }

    ParsedMesh out{build_complex(static_cast<int>(n), std::move(top), declared), std::move(labels)};
    if (!opts.allow_open) {
        const auto report = verify_closed_pseudomanifold(out.complex);
        if (!report.ok)
            throw Error(ErrorCode::NonManifold, report.violations.front().describe() +
                                                    (report.violations.size() > 1
                                                         ? " (and " + std::to_string(report.violations.size() - 1) + " more)"
                                                         : std::string()));
    }
    return out;
}

/// Canonical form: top simplices in index order, labels in ascending vertex order.
inline std::string serialize_mesh(const SimplicialComplex& c, const LabelMap* labels = nullptr)
{
    std::ostringstream out;
    out << "dim " << c.dimension() << "\nvertices " << c.vertex_count() << "\n";
    for (const auto& s : c.simplices(c.dimension())) {
        for (std::size_t i = 0; i < s.size(); ++i)
            out << (i ? " " : "") << (labels ? labels->label(s[i]) : std::to_string(s[i]));
        out << "\n";
    }
    return out.str();
}

namespace detail {

inline Chain parse_chain_lines(const SimplicialComplex& c, const LabelMap& labels,
                               const std::vector<std::pair<std::size_t, std::vector<std::string>>>& lines,
                               std::size_t begin, std::size_t end, std::optional<int> expected_dim)
{
    if (begin == end) {
        if (!expected_dim)
            throw Error(ErrorCode::ParseError, "empty chain without a known dimension");
        return c.zero_chain(*expected_dim);
    }
    const int k = static_cast<int>(lines[begin].second.size()) - 1;
    if (expected_dim && *expected_dim != k)
        throw Error(ErrorCode::BadArity, at_line(lines[begin].first, "expected a " + std::to_string(*expected_dim) +
                                                                         "-simplex"));
    if (k > c.dimension())
        throw Error(ErrorCode::BadDimension, at_line(lines[begin].first, "simplex dimension exceeds the complex"));
    Chain chain = c.zero_chain(k);
    for (std::size_t i = begin; i < end; ++i) {
        const auto& [no, tok] = lines[i];
        if (static_cast<int>(tok.size()) != k + 1)
            throw Error(ErrorCode::BadArity, at_line(no, "mixed simplex dimensions in one chain"));
        Simplex s;
        for (const auto& label : tok) {
            auto v = labels.id(label);
            if (!v)
                throw Error(ErrorCode::ParseError, at_line(no, "unknown vertex label '" + label + "'"));
            s.push_back(*v);
        }
        std::sort(s.begin(), s.end());
        auto idx = c.find(s);
        if (!idx)
            throw Error(ErrorCode::UnknownSimplex, at_line(no, "not a simplex of the mesh"));
        chain.toggle(*idx);
    }
    return chain;
}

} // namespace detail

/// A single chain; `dim` is required to read an empty chain.
inline Chain parse_chain(std::string_view text, const SimplicialComplex& c, const LabelMap& labels,
                         std::optional<int> dim = std::nullopt)
{
    const auto lines = detail::tokenize(text);
    for (const auto& [no, tok] : lines)
        if (tok.size() == 1 && tok[0] == "---")
            throw Error(ErrorCode::ParseError, detail::at_line(no, "separator in a single-chain file"));
    return detail::parse_chain_lines(c, labels, lines, 0, lines.size(), dim);
}

inline std::vector<Chain> parse_basis(std::string_view text, const SimplicialComplex& c, const LabelMap& labels,
                                      std::optional<int> dim = std::nullopt)
{
    const auto lines = detail::tokenize(text);
    std::vector<Chain> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= lines.size(); ++i) {
        if (i < lines.size() && !(lines[i].second.size() == 1 && lines[i].second[0] == "---"))
            continue;
        if (i > begin)
            out.push_back(detail::parse_chain_lines(c, labels, lines, begin, i, dim));
        begin = i + 1;
    }
    return out;
}

inline std::string serialize_chain(const SimplicialComplex& c, const Chain& x, const LabelMap* labels = nullptr)
{
    std::ostringstream out;
    x.bits.for_each_set([&](std::size_t i) {
        const auto& s = c.simplex(x.dim, static_cast<SimplexIndex>(i));
        for (std::size_t j = 0; j < s.size(); ++j)
            out << (j ? " " : "") << (labels ? labels->label(s[j]) : std::to_string(s[j]));
        out << "\n";
    });
    return out.str();
}

inline std::string serialize_basis(const SimplicialComplex& c, const std::vector<Chain>& basis,
                                   const LabelMap* labels = nullptr)
{
    std::string out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i)
            out += "---\n";
        out += serialize_chain(c, basis[i], labels);
    }
    return out;
}

inline WeightFunction parse_weights(std::string_view text, const SimplicialComplex& c, const LabelMap& labels)
{
    std::vector<double> w(c.edge_count(), 1.0);
    std::vector<char> given(c.edge_count(), 0);
    for (const auto& [no, tok] : detail::tokenize(text)) {
        if (tok.size() != 3)
            throw Error(ErrorCode::ParseError, detail::at_line(no, "expected 'u v weight'"));
        auto u = labels.id(tok[0]);
        auto v = labels.id(tok[1]);
        if (!u || !v)
            throw Error(ErrorCode::ParseError, detail::at_line(no, "unknown vertex label"));
        auto e = c.edge(*u, *v);
        if (!e)
            throw Error(ErrorCode::ParseError, detail::at_line(no, "not an edge of the mesh"));
        double value = 0.0;
        std::size_t used = 0;
        try {
            value = std::stod(tok[2], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok[2].size() || !std::isfinite(value))
            throw Error(ErrorCode::ParseError, detail::at_line(no, "bad weight '" + tok[2] + "'"));
        if (value < 0.0)
            throw Error(ErrorCode::NegativeWeight, detail::at_line(no, "negative weight " + tok[2]));
        if (given[*e])
            throw Error(ErrorCode::ParseError, detail::at_line(no, "edge listed twice"));
        given[*e] = 1;
        w[*e] = value;
    }
    return WeightFunction(std::move(w));
}

/// Integral labels become JSON integers, others strings.
inline Json label_json(const LabelMap& labels, VertexId v)
{
    const auto& l = labels.label(v);
    if (auto n = detail::parse_unsigned(l); n && std::to_string(*n) == l)
        return *n;
    return l;
}

/// Integral values print without a fractional part.
inline Json number_json(double x)
{
    if (std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 9.0e15)
        return static_cast<std::int64_t>(x);
    return x;
}

inline Json simplex_json(const LabelMap& labels, const Simplex& s)
{
    Json a = Json::array();
    for (VertexId v : s)
        a.push_back(label_json(labels, v));
    return a;
}

inline Json edges_json(const SimplicialComplex& c, const LabelMap& labels, const Chain& x)
{
    Json a = Json::array();
    x.bits.for_each_set([&](std::size_t e) { a.push_back(simplex_json(labels, c.simplex(x.dim, static_cast<SimplexIndex>(e)))); });
    return a;
}

/// {class_index, weight, edges, witness, path_weight, start}
inline Json min_cycle_json(const SimplicialComplex& c, const LabelMap& labels, const MinCycleResult& r)
{
    Json j;
    j["class_index"] = r.class_index.to_bits();
    j["weight"] = number_json(r.weight);
    j["edges"] = edges_json(c, labels, r.cycle);
    Json witness = Json::array();
    for (const auto& w : r.witness)
        witness.push_back(Json::array({label_json(labels, w.base), w.sheet.to_bits()}));
    j["witness"] = std::move(witness);
    j["path_weight"] = number_json(r.path_weight);
    j["start"] = r.start ? label_json(labels, *r.start) : Json(nullptr);
    return j;
}

inline std::string min_cycle_text(const SimplicialComplex& c, const LabelMap& labels, const MinCycleResult& r)
{
    std::ostringstream out;
    out << "class " << (r.class_index.size() ? r.class_index.to_bits() : "-") << "\n";
    out << "weight " << number_json(r.weight).dump() << "\n";
    out << "edges";
    r.cycle.bits.for_each_set([&](std::size_t e) {
        const auto& s = c.simplex(1, static_cast<SimplexIndex>(e));
        out << " " << labels.label(s[0]) << "-" << labels.label(s[1]);
    });
    out << "\n";
    return out.str();
}

/// Per-edge J as hex (bit k = coordinate k) plus the audit sets of every basis cycle.
inline Json index_table_json(const SimplicialComplex& c, const LabelMap& labels, const IndexTable& t)
{
    Json j;
    j["r"] = t.rank();
    j["edge_count"] = t.edge_count();
    Json edges = Json::array();
    for (SimplexIndex e = 0; e < t.edge_count(); ++e)
        edges.push_back(Json{{"edge", simplex_json(labels, c.simplex(1, e))}, {"J", t[e].to_hex()}});
    j["edges"] = std::move(edges);
    Json cycles = Json::array();
    for (std::size_t k = 0; k < t.rank(); ++k) {
        const auto& a = t.audit(k);
        Json ck;
        ck["k"] = k;
        ck["indexed_edges"] = edges_json(c, labels, a.indexed_edges);
        ck["faces_crossed"] = a.faces_crossed;
        ck["max_crossings_per_face"] = a.max_crossings_per_face;
        ck["cycle_faces_crossed"] = a.cycle_faces_crossed;
        ck["cycle_edges_indexed"] = a.cycle_edges_indexed;
        Json vs = Json::array();
        for (const auto& va : a.vertices) {
            Json m = Json::array(), sigma = Json::array();
            for (SimplexIndex e : va.edges)
                m.push_back(simplex_json(labels, c.simplex(1, e)));
            for (SimplexIndex s : va.simplices)
                sigma.push_back(simplex_json(labels, c.simplex(c.dimension(), s)));
            vs.push_back(Json{{"vertex", label_json(labels, va.vertex)},
                              {"seeds", va.seeds},
                              {"M", std::move(m)},
                              {"Sigma", std::move(sigma)}});
        }
        ck["vertices"] = std::move(vs);
        cycles.push_back(std::move(ck));
    }
    j["cycles"] = std::move(cycles);
    return j;
}

/// Materialized cover in smesh form with vertex labels `v@g`, g as a bit string.
inline std::string serialize_cover(const MaterializedCover& m, const LabelMap& base_labels)
{
    std::vector<std::string> l;
    for (VertexId v = 0; v < m.complex.vertex_count(); ++v) {
        const auto cv = m.vertex(v);
        l.push_back(base_labels.label(cv.base) + "@" + cv.sheet.to_bits());
    }
    const LabelMap labels(std::move(l));
    return serialize_mesh(m.complex, &labels);
}

} // namespace mincyc::io

#endif
