#include "twinet/exporter.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "twinet/csv.hpp"
#include "twinet/errors.hpp"
#include "twinet/metrics.hpp"

namespace twinet {

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string dot_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out;
}

std::string format_double(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

/// Importance per vertex under the ranking semantics; non-users get zero.
std::vector<double> vertex_importance(const InteractionGraph& g, int inorm_divisor) {
    std::vector<double> scores(g.vertex_count(), 0.0);
    for (const RankedUser& row :
         rank_users(g, RankBy::Importance, g.vertex_count(), inorm_divisor)) {
        scores[row.vertex] = row.importance;
    }
    return scores;
}

// Fill colors cycled by community index.
constexpr const char* kPalette[] = {
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

} // namespace

void write_gexf(std::ostream& out, const InteractionGraph& g, const ExportAnnotations& ann) {
    std::vector<double> importance = vertex_importance(g, ann.inorm_divisor);

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
    out << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n";
    out << "    <attributes class=\"node\">\n";
    out << "      <attribute id=\"0\" title=\"kind\" type=\"string\"/>\n";
    out << "      <attribute id=\"1\" title=\"community\" type=\"integer\">\n";
    out << "        <default>-1</default>\n";
    out << "      </attribute>\n";
    out << "      <attribute id=\"2\" title=\"importance\" type=\"double\"/>\n";
    out << "    </attributes>\n";
    out << "    <nodes>\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "      <node id=\"" << v << "\" label=\"" << xml_escape(g.key(v)) << "\">\n";
        out << "        <attvalues>\n";
        out << "          <attvalue for=\"0\" value=\"" << to_string(g.kind(v)) << "\"/>\n";
        if (auto it = ann.communities.find(v); it != ann.communities.end()) {
            out << "          <attvalue for=\"1\" value=\"" << it->second << "\"/>\n";
        }
        out << "          <attvalue for=\"2\" value=\"" << format_double(importance[v])
            << "\"/>\n";
        out << "        </attvalues>\n";
        out << "      </node>\n";
    }
    out << "    </nodes>\n";
    out << "    <edges>\n";
    std::uint32_t edge_id = 0;
    for (const Edge& e : g.edges()) {
        out << "      <edge id=\"" << edge_id++ << "\" source=\"" << e.src << "\" target=\""
            << e.dst << "\" weight=\"" << e.weight << "\" label=\"" << to_string(e.kind)
            << "\"/>\n";
    }
    out << "    </edges>\n";
    out << "  </graph>\n";
    out << "</gexf>\n";
}

void write_dot(std::ostream& out, const InteractionGraph& g, const ExportAnnotations& ann) {
    std::vector<double> importance;
    double min_importance = 0.0;
    double max_importance = 0.0;
    if (ann.size_by_importance) {
        importance = vertex_importance(g, ann.inorm_divisor);
        if (!importance.empty()) {
            auto [lo, hi] = std::minmax_element(importance.begin(), importance.end());
            min_importance = *lo;
            max_importance = *hi;
        }
    }

    std::uint64_t min_weight = 0;
    for (const Edge& e : g.edges()) {
        if (min_weight == 0 || e.weight < min_weight) {
            min_weight = e.weight;
        }
    }

    out << "digraph interaction {\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "  n" << v << " [label=\"" << dot_escape(g.key(v)) << "\"";
        if (ann.size_by_importance) {
            double width = 1.0;
            if (max_importance > min_importance) {
                width = 0.1 + 1.9 * (importance[v] - min_importance) /
                                  (max_importance - min_importance);
            }
            out << ", width=" << format_double(width) << ", fixedsize=true";
        }
        if (auto it = ann.communities.find(v); it != ann.communities.end()) {
            out << ", style=filled, fillcolor=\"" << kPalette[it->second % kPaletteSize]
                << "\", community=" << it->second;
        }
        out << "];\n";
    }
    for (const Edge& e : g.edges()) {
        double penwidth =
            static_cast<double>(e.weight) / static_cast<double>(std::max<std::uint64_t>(1, min_weight));
        out << "  n" << e.src << " -> n" << e.dst << " [penwidth=" << format_double(penwidth)
            << ", label=\"" << to_string(e.kind) << "\"];\n";
    }
    out << "}\n";
}

void write_edge_csv(std::ostream& out, const InteractionGraph& g) {
    out << "src_key,dst_key,kind,weight\n";
    for (const Edge& e : g.edges()) {
        out << csv::escape(g.key(e.src)) << ',' << csv::escape(g.key(e.dst)) << ','
            << to_string(e.kind) << ',' << e.weight << '\n';
    }
}

void write_communities_csv(std::ostream& out, const InteractionGraph& g,
                           const std::vector<std::uint32_t>& labels) {
    out << "vertex_key,kind,community\n";
    for (VertexId v = 0; v < g.vertex_count() && v < labels.size(); ++v) {
        out << csv::escape(g.key(v)) << ',' << to_string(g.kind(v)) << ',' << labels[v] << '\n';
    }
}

namespace {

/// Minimal RFC 4180 row split; enough for the files this tool writes.
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

} // namespace

std::unordered_map<VertexId, std::uint32_t> load_communities_csv(std::istream& in,
                                                                 const InteractionGraph& g) {
    std::unordered_map<VertexId, std::uint32_t> communities;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) {
            continue; // header
        }
        std::vector<std::string> fields = split_csv_row(line);
        if (fields.size() != 3) {
            throw InputError("communities file line " + std::to_string(line_no) +
                             ": expected vertex_key,kind,community");
        }
        std::optional<VertexKind> kind = vertex_kind_from(fields[1]);
        if (!kind) {
            throw InputError("communities file line " + std::to_string(line_no) +
                             ": unknown kind " + fields[1]);
        }
        VertexId v = g.find(*kind, fields[0]);
        if (v == kNoVertex) {
            throw InputError("communities file line " + std::to_string(line_no) +
                             ": unknown vertex " + fields[0]);
        }
        try {
            communities[v] = static_cast<std::uint32_t>(std::stoul(fields[2]));
        } catch (const std::exception&) {
            throw InputError("communities file line " + std::to_string(line_no) +
                             ": bad community id " + fields[2]);
        }
    }
    return communities;
}

} // namespace twinet
