#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rvi/diagram.hpp"
#include "rvi/rational.hpp"

namespace rvi {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

inline std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// every artifact embeds one of these; same seed + same flags => identical bytes
inline json manifest(const std::string& command, std::uint64_t seed,
                     const std::string& class_hash) {
    return json{{"command", command},
                {"seed", seed},
                {"version", kVersion},
                {"class_hash", class_hash}};
}

inline std::string manifest_csv_line(const json& m) {
    return "# manifest " + m.dump();
}

inline json diagram_json(const RauzyDiagram& g) {
    json verts = json::array();
    for (int v = 0; v < g.vertex_count(); ++v) verts.push_back(g.vertex(v).row_text());
    json arrows = json::array();
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& at = g.arrows_at(v);
        for (auto [a, side] : {std::pair{&at.left, "L"}, std::pair{&at.right, "R"}}) {
            if (!a->defined) continue;
            const auto& alph = g.vertex(v).alphabet();
            arrows.push_back(json{{"from", v},
                                  {"to", a->to},
                                  {"side", side},
                                  {"winner", alph.letter_name(a->winner)},
                                  {"loser", alph.letter_name(a->loser)}});
        }
    }
    return json{{"vertices", verts}, {"arrows", arrows}};
}

inline std::string diagram_dot(const RauzyDiagram& g) {
    std::ostringstream out;
    out << "digraph rauzy {\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        out << "  v" << v << " [label=\"" << g.vertex(v).row_text() << "\"];\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& at = g.arrows_at(v);
        for (auto [a, side] : {std::pair{&at.left, "L"}, std::pair{&at.right, "R"}}) {
            if (!a->defined) continue;
            const auto& alph = g.vertex(v).alphabet();
            out << "  v" << v << " -> v" << a->to << " [label=\"" << side << " "
                << alph.class_name(letter_class(a->winner)) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw structural_error("cannot open output file: " + path);
    out << content;
}

inline json rat_vector_json(const std::vector<Rat>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(rat_string(x));
    return out;
}

}  // namespace rvi
