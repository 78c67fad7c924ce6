#pragma once

// Finite quivers with validation, Dynkin classification, and JSON I/O.
//
// A quiver is valid when its vertex ids are exactly 1..n (input order kept),
// its arrow labels are unique, and it is acyclic (loops count as cycles).
// Validity does not imply Dynkin: classification is a separate step that
// reports the family or a concrete rejection witness, so callers can decide
// whether a non-Dynkin input is an error (engine operations) or an answer
// (the classify command).

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitcat/errors.hpp"

namespace orbitcat {

struct Arrow {
    int from = 0;
    int to = 0;
    std::string label;

    friend bool operator==(const Arrow& a, const Arrow& b) {
        return a.from == b.from && a.to == b.to && a.label == b.label;
    }
};

class Quiver {
public:
    Quiver(std::vector<int> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        validate();
    }

    int rank() const { return static_cast<int>(vertices_.size()); }
    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    // Arrow indices leaving / entering a vertex, in input order.
    const std::vector<int>& arrows_from(int v) const { return out_.at(v - 1); }
    const std::vector<int>& arrows_into(int v) const { return in_.at(v - 1); }

    int arrow_count(int from, int to) const {
        auto it = pair_count_.find({from, to});
        return it == pair_count_.end() ? 0 : it->second;
    }

    int undirected_degree(int v) const {
        return static_cast<int>(out_.at(v - 1).size() + in_.at(v - 1).size());
    }

    // Admissible ordering: every arrow goes forward in it.
    const std::vector<int>& topological_order() const { return topo_; }

    bool connected() const { return connected_; }

    // Stable content hash (FNV-1a over the canonical serialization); used for
    // DOT graph names and cache file names.
    std::uint64_t hash() const { return hash_; }
    std::string hash_hex() const {
        static const char* hex = "0123456789abcdef";
        std::string s(16, '0');
        std::uint64_t h = hash_;
        for (int i = 15; i >= 0; --i) {
            s[static_cast<std::size_t>(i)] = hex[h & 0xf];
            h >>= 4;
        }
        return s;
    }

    // Same underlying graph, arrows at `v` reversed. Labels are kept.
    Quiver reflected_at(int v) const {
        std::vector<Arrow> arr = arrows_;
        for (auto& a : arr)
            if (a.from == v || a.to == v) std::swap(a.from, a.to);
        return Quiver(vertices_, std::move(arr));
    }

    bool is_sink(int v) const { return out_.at(v - 1).empty(); }
    bool is_source(int v) const { return in_.at(v - 1).empty(); }

    friend bool operator==(const Quiver& a, const Quiver& b) {
        return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
    }

private:
    void validate() {
        const int n = static_cast<int>(vertices_.size());
        if (n == 0) throw validation_error("quiver has no vertices");
        std::set<int> seen;
        for (int v : vertices_) {
            if (v < 1 || v > n)
                throw validation_error("vertex id " + std::to_string(v) +
                                       " outside 1.." + std::to_string(n));
            if (!seen.insert(v).second)
                throw validation_error("duplicate vertex id " + std::to_string(v));
        }
        std::set<std::string> labels;
        for (const auto& a : arrows_) {
            if (a.from < 1 || a.from > n || a.to < 1 || a.to > n)
                throw validation_error("arrow '" + a.label + "' endpoint outside 1.." +
                                       std::to_string(n));
            if (a.label.empty())
                throw validation_error("arrow with empty label");
            if (!labels.insert(a.label).second)
                throw validation_error("duplicate arrow label '" + a.label + "'");
        }

        out_.assign(static_cast<std::size_t>(n), {});
        in_.assign(static_cast<std::size_t>(n), {});
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            out_[static_cast<std::size_t>(arrows_[i].from - 1)].push_back(static_cast<int>(i));
            in_[static_cast<std::size_t>(arrows_[i].to - 1)].push_back(static_cast<int>(i));
            pair_count_[{arrows_[i].from, arrows_[i].to}]++;
        }

        // Kahn topological sort; leftover vertices lie on a directed cycle.
        std::vector<int> indeg(static_cast<std::size_t>(n), 0);
        for (const auto& a : arrows_) indeg[static_cast<std::size_t>(a.to - 1)]++;
        std::vector<int> queue;
        for (int v = 1; v <= n; ++v)
            if (indeg[static_cast<std::size_t>(v - 1)] == 0) queue.push_back(v);
        topo_.clear();
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            topo_.push_back(v);
            for (int ai : out_[static_cast<std::size_t>(v - 1)]) {
                int w = arrows_[static_cast<std::size_t>(ai)].to;
                if (--indeg[static_cast<std::size_t>(w - 1)] == 0) queue.push_back(w);
            }
        }
        if (static_cast<int>(topo_.size()) != n) {
            std::string cyc;
            for (int v = 1; v <= n; ++v)
                if (indeg[static_cast<std::size_t>(v - 1)] > 0)
                    cyc += (cyc.empty() ? "" : ",") + std::to_string(v);
            throw validation_error("quiver has a directed cycle through vertices {" + cyc + "}");
        }

        // Undirected connectivity.
        std::vector<char> vis(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{1};
        vis[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int ai : out_[static_cast<std::size_t>(v - 1)]) {
                int w = arrows_[static_cast<std::size_t>(ai)].to;
                if (!vis[static_cast<std::size_t>(w - 1)]) { vis[static_cast<std::size_t>(w - 1)] = 1; stack.push_back(w); }
            }
            for (int ai : in_[static_cast<std::size_t>(v - 1)]) {
                int w = arrows_[static_cast<std::size_t>(ai)].from;
                if (!vis[static_cast<std::size_t>(w - 1)]) { vis[static_cast<std::size_t>(w - 1)] = 1; stack.push_back(w); }
            }
        }
        connected_ = std::all_of(vis.begin(), vis.end(), [](char c) { return c != 0; });

        // FNV-1a over "n|from>to:label|..." with arrows sorted canonically.
        std::vector<Arrow> sorted = arrows_;
        std::sort(sorted.begin(), sorted.end(), [](const Arrow& a, const Arrow& b) {
            return std::tie(a.from, a.to, a.label) < std::tie(b.from, b.to, b.label);
        });
        std::string repr = std::to_string(n);
        for (const auto& a : sorted)
            repr += "|" + std::to_string(a.from) + ">" + std::to_string(a.to) + ":" + a.label;
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : repr) {
            h ^= c;
            h *= 1099511628211ull;
        }
        hash_ = h;
    }

    std::vector<int> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> out_, in_;
    std::map<std::pair<int, int>, int> pair_count_;
    std::vector<int> topo_;
    bool connected_ = false;
    std::uint64_t hash_ = 0;
};

enum class Family { A, D, E, NotDynkin };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::D: return "D";
        case Family::E: return "E";
        default: return "NotDynkin";
    }
}

struct DynkinClass {
    Family family = Family::NotDynkin;
    int rank = 0;
    int coxeter_number = 0;
    std::string witness; // set when family == NotDynkin

    bool is_dynkin() const { return family != Family::NotDynkin; }

    std::string name() const {
        if (!is_dynkin()) return "NotDynkin(" + witness + ")";
        return std::string(family_name(family)) + std::to_string(rank);
    }
};

// Classify the underlying undirected graph. Orientation never matters.
inline DynkinClass classify_dynkin(const Quiver& q) {
    const int n = q.rank();
    DynkinClass res;
    res.rank = n;

    auto reject = [&](const std::string& w) {
        res.family = Family::NotDynkin;
        res.witness = w;
        return res;
    };

    if (!q.connected()) return reject("disconnected underlying graph");
    for (int v = 1; v <= n; ++v)
        for (int w = v; w <= n; ++w) {
            int m = q.arrow_count(v, w) + (v == w ? 0 : q.arrow_count(w, v));
            if (v == w && m > 0) return reject("loop at vertex " + std::to_string(v));
            if (v != w && m > 1)
                return reject("double edge between vertices " + std::to_string(v) +
                              " and " + std::to_string(w));
        }
    if (static_cast<int>(q.arrows().size()) != n - 1)
        return reject("cycle in underlying graph"); // connected + simple + #edges != n-1

    std::vector<int> branch;
    for (int v = 1; v <= n; ++v) {
        int d = q.undirected_degree(v);
        if (d >= 4)
            return reject("vertex " + std::to_string(v) + " of degree " + std::to_string(d));
        if (d == 3) branch.push_back(v);
    }
    if (branch.size() >= 2)
        return reject("two branch vertices (" + std::to_string(branch[0]) + "," +
                      std::to_string(branch[1]) + ")");

    if (branch.empty()) {
        res.family = Family::A;
        res.coxeter_number = n + 1;
        return res;
    }

    // One degree-3 vertex: measure the three arm lengths (in edges).
    int c = branch[0];
    std::vector<int> arms;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + 1));
    for (const auto& a : q.arrows()) {
        adj[static_cast<std::size_t>(a.from)].push_back(a.to);
        adj[static_cast<std::size_t>(a.to)].push_back(a.from);
    }
    for (int next : adj[static_cast<std::size_t>(c)]) {
        int len = 1, prev = c, cur = next;
        while (true) {
            int cont = 0, deg = 0;
            for (int w : adj[static_cast<std::size_t>(cur)]) {
                ++deg;
                if (w != prev) cont = w;
            }
            if (deg == 1) break; // reached a leaf
            prev = cur;
            cur = cont;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms.size() != 3) throw internal_error("branch vertex arm scan");
    int a1 = arms[0], a2 = arms[1], a3 = arms[2];
    if (a1 == 1 && a2 == 1) {
        res.family = Family::D;
        res.rank = a3 + 3; // == n
        res.coxeter_number = 2 * (res.rank - 1);
        return res;
    }
    if (a1 == 1 && a2 == 2 && a3 >= 2 && a3 <= 4) {
        res.family = Family::E;
        res.rank = a3 + 4; // 6, 7, 8
        res.coxeter_number = a3 == 2 ? 12 : (a3 == 3 ? 18 : 30);
        return res;
    }
    return reject("branch arm lengths (" + std::to_string(a1) + "," + std::to_string(a2) +
                  "," + std::to_string(a3) + ") not Dynkin");
}

// ---- JSON ----------------------------------------------------------------
// {"vertices":[1,2,3],"arrows":[{"from":1,"to":2,"label":"a"}]}

inline Quiver quiver_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw validation_error("quiver JSON: top level must be an object");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw validation_error("quiver JSON: \"vertices\" must be an array of integers");
    std::vector<int> verts;
    for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
        const auto& v = j["vertices"][i];
        if (!v.is_number_integer())
            throw validation_error("quiver JSON: vertices[" + std::to_string(i) +
                                   "] is not an integer");
        verts.push_back(v.get<int>());
    }
    std::vector<Arrow> arrows;
    if (j.contains("arrows")) {
        if (!j["arrows"].is_array())
            throw validation_error("quiver JSON: \"arrows\" must be an array");
        for (std::size_t i = 0; i < j["arrows"].size(); ++i) {
            const auto& a = j["arrows"][i];
            const std::string ctx = "quiver JSON: arrows[" + std::to_string(i) + "]";
            if (!a.is_object()) throw validation_error(ctx + " is not an object");
            for (const char* key : {"from", "to"})
                if (!a.contains(key) || !a[key].is_number_integer())
                    throw validation_error(ctx + "." + key + " must be an integer");
            if (!a.contains("label") || !a["label"].is_string())
                throw validation_error(ctx + ".label must be a string");
            arrows.push_back({a["from"].get<int>(), a["to"].get<int>(),
                              a["label"].get<std::string>()});
        }
    }
    return Quiver(std::move(verts), std::move(arrows));
}

inline nlohmann::ordered_json quiver_to_json(const Quiver& q) {
    nlohmann::ordered_json j;
    j["vertices"] = q.vertices();
    j["arrows"] = nlohmann::ordered_json::array();
    for (const auto& a : q.arrows()) {
        nlohmann::ordered_json ja;
        ja["from"] = a.from;
        ja["to"] = a.to;
        ja["label"] = a.label;
        j["arrows"].push_back(std::move(ja));
    }
    return j;
}

} // namespace orbitcat
