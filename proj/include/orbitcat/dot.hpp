#pragma once

#include <sstream>
#include <string>

#include "orbitcat/derived.hpp"
#include "orbitcat/orbit.hpp"

namespace orbitcat {

// Stable node identifier for a repetition-quiver coordinate. Negative slices
// get an 'm' marker so the id stays a valid DOT name: (-2,3) -> "xm2_3".
inline std::string dot_node_id(ZQVertex v) {
    std::string s = "x";
    if (v.p < 0)
        s += "m" + std::to_string(-v.p);
    else
        s += std::to_string(v.p);
    s += "_" + std::to_string(v.i);
    return s;
}

// DOT rendering of the slice window [p_min, p_max] of the repetition quiver,
// each vertex labeled with its coordinate and the object it stands for.
// Output is byte-stable for a fixed quiver and window.
inline std::string zq_window_dot(DerivedCategory& dc, int p_min, int p_max) {
    if (p_min > p_max) throw validation_error("empty slice window");
    const Quiver& q = dc.quiver();
    std::ostringstream out;
    out << "digraph zq_" << q.hash_hex().substr(0, 8) << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=box];\n";
    for (int p = p_min; p <= p_max; ++p)
        for (int i = 1; i <= q.rank(); ++i) {
            ZQVertex v{p, i};
            DerivedIndec obj = dc.resolve(v);
            out << "  " << dot_node_id(v) << " [label=\"" << v.str() << " "
                << dim_str(obj.dimv) << "@" << obj.shift << "\"];\n";
        }
    for (int p = p_min; p <= p_max; ++p)
        for (int i = 1; i <= q.rank(); ++i) {
            ZQVertex v{p, i};
            for (const ZQArrow& a : zq_arrows_out(q, v)) {
                ZQVertex t = zq_target(q, a);
                if (t.p < p_min || t.p > p_max) continue;
                out << "  " << dot_node_id(v) << " -> " << dot_node_id(t) << ";\n";
            }
        }
    out << "}\n";
    return out.str();
}

// DOT rendering of the quiver of irreducible maps between canonical orbit
// objects. Solid edges are irreducible maps (kept with multiplicity), dashed
// edges show the translation. Byte-stable for a fixed category.
inline std::string ar_quiver_dot(const Quiver& q, const ArQuiverData& ar) {
    std::ostringstream out;
    out << "digraph ar_" << q.hash_hex().substr(0, 8) << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=box];\n";
    for (std::size_t k = 0; k < ar.vertices.size(); ++k)
        out << "  v" << k << " [label=\"" << ar.vertices[k].str() << "\"];\n";
    for (const auto& e : ar.edges) out << "  v" << e.first << " -> v" << e.second << ";\n";
    for (std::size_t k = 0; k < ar.tau_of.size(); ++k)
        out << "  v" << k << " -> v" << ar.tau_of[k] << " [style=dashed, constraint=false];\n";
    out << "}\n";
    return out.str();
}

}  // namespace orbitcat
