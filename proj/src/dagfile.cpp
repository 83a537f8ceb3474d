#include "dagtrace/dagfile.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace dagtrace {

namespace {

constexpr std::string_view kMagic = "dagfile v1";

std::string expect_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError(std::string("dag file truncated while reading ") + what);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::int64_t parse_int(const std::string& token, const char* what) {
    try {
        std::size_t used = 0;
        const std::int64_t value = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw ValidationError(std::string("bad integer for ") + what + ": '" + token + "'");
    }
}

std::int64_t parse_keyed(std::istream& in, const std::string& key) {
    std::istringstream line(expect_line(in, key.c_str()));
    std::string k, v, extra;
    line >> k >> v;
    if (k != key || v.empty() || (line >> extra)) {
        throw ValidationError("expected '" + key + " <value>' line");
    }
    return parse_int(v, key.c_str());
}

Value parse_weight(const std::string& token, const char* what) {
    const std::int64_t raw = parse_int(token, what);
    if (raw == std::numeric_limits<std::int64_t>::min()) {
        throw ValidationError(std::string(what) + " value out of range");
    }
    return Value::of(raw);
}

} // namespace

void write_dag_file(const DpDag& dag, std::ostream& out) {
    out << kMagic << "\n";
    out << "semiring " << to_string(dag.semiring_tag()) << "\n";
    out << "vertices " << dag.vertex_count() << "\n";
    out << "delta_max " << dag.delta_max() << "\n";
    out << "sources " << dag.sources().size() << "\n";
    for (const SourceSpec& s : dag.sources()) {
        out << s.vertex << " " << s.init.payload() << "\n";
    }
    out << "sinks " << dag.sinks().size() << "\n";
    for (Vertex s : dag.sinks()) out << s << "\n";
    out << "edges " << dag.edge_count() << "\n";
    for (Vertex u = 1; u <= dag.vertex_count(); ++u) {
        const auto succ = dag.successors(u);
        const auto weights = dag.successor_weights(u);
        for (std::size_t i = 0; i < succ.size(); ++i) {
            out << u << " " << succ[i] << " " << weights[i].payload() << "\n";
        }
    }
}

void write_dag_file(const DpDag& dag, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_dag_file(dag, out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

DpDag read_dag_file(std::istream& in) {
    if (expect_line(in, "header") != kMagic) {
        throw ValidationError("not a dag file (bad magic line)");
    }
    std::istringstream tag_line(expect_line(in, "semiring"));
    std::string k, tag_token, tag_extra;
    tag_line >> k >> tag_token;
    if (k != "semiring" || tag_token.empty() || (tag_line >> tag_extra)) {
        throw ValidationError("expected 'semiring <tag>' line");
    }
    const SemiringTag tag = parse_semiring_tag(tag_token);

    const std::int64_t vertex_count = parse_keyed(in, "vertices");
    const std::int64_t delta_max = parse_keyed(in, "delta_max");
    if (vertex_count < 1 || vertex_count > std::numeric_limits<Vertex>::max()) {
        throw ValidationError("vertex count out of range");
    }
    if (delta_max < 1 || delta_max > std::numeric_limits<int>::max()) {
        throw ValidationError("delta_max out of range");
    }

    const std::int64_t source_count = parse_keyed(in, "sources");
    std::vector<SourceSpec> sources;
    sources.reserve(static_cast<std::size_t>(source_count));
    for (std::int64_t i = 0; i < source_count; ++i) {
        std::istringstream line(expect_line(in, "source"));
        std::string a, b, extra;
        line >> a >> b;
        if (a.empty() || b.empty() || (line >> extra)) {
            throw ValidationError("expected '<vertex> <init>' source line");
        }
        sources.push_back({static_cast<Vertex>(parse_int(a, "source vertex")),
                           parse_weight(b, "source init")});
    }

    const std::int64_t sink_count = parse_keyed(in, "sinks");
    std::vector<Vertex> sinks;
    sinks.reserve(static_cast<std::size_t>(sink_count));
    for (std::int64_t i = 0; i < sink_count; ++i) {
        std::istringstream line(expect_line(in, "sink"));
        std::string a, extra;
        line >> a;
        if (a.empty() || (line >> extra)) throw ValidationError("expected '<vertex>' sink line");
        sinks.push_back(static_cast<Vertex>(parse_int(a, "sink vertex")));
    }

    const std::int64_t edge_count = parse_keyed(in, "edges");
    std::vector<EdgeSpec> edges;
    edges.reserve(static_cast<std::size_t>(edge_count));
    for (std::int64_t i = 0; i < edge_count; ++i) {
        std::istringstream line(expect_line(in, "edge"));
        std::string a, b, c, extra;
        line >> a >> b >> c;
        if (a.empty() || b.empty() || c.empty() || (line >> extra)) {
            throw ValidationError("expected '<from> <to> <weight>' edge line");
        }
        EdgeSpec e{static_cast<Vertex>(parse_int(a, "edge tail")),
                   static_cast<Vertex>(parse_int(b, "edge head")),
                   parse_weight(c, "edge weight")};
        if (!edges.empty() && (edges.back().from > e.from ||
                               (edges.back().from == e.from && edges.back().to >= e.to))) {
            throw ValidationError("edges must be sorted by (from, to)");
        }
        edges.push_back(e);
    }

    std::string trailing;
    while (std::getline(in, trailing)) {
        if (!trailing.empty() && trailing != "\r") {
            throw ValidationError("unexpected trailing content in dag file");
        }
    }

    return DpDag::build(static_cast<Vertex>(vertex_count), std::move(edges), std::move(sources),
                        std::move(sinks), tag, static_cast<int>(delta_max));
}

DpDag read_dag_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return read_dag_file(in);
}

} // namespace dagtrace
