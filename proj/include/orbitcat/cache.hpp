#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "orbitcat/mesh.hpp"

namespace orbitcat {

// Advisory on-disk cache for hom dimensions between repetition-quiver
// coordinates, one file per quiver keyed by the quiver's content hash.
//
// The file format is a version line followed by "p i p' i' dim" records.
// A missing directory, a wrong version line, or any malformed record makes
// the cache start empty; IO failures on write are swallowed. Correctness
// never depends on the cache, it only skips recomputation.
class HomCache {
public:
    static constexpr const char* kVersion = "orbitcat-cache/1";

    HomCache() = default;

    HomCache(std::string dir, std::string quiver_hash)
        : dir_(std::move(dir)), hash_(std::move(quiver_hash)) {
        if (enabled()) load();
    }

    bool enabled() const { return !dir_.empty(); }

    std::optional<std::int64_t> lookup(ZQVertex x, ZQVertex y) const {
        auto it = entries_.find(key(x, y));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void store(ZQVertex x, ZQVertex y, std::int64_t dim) {
        if (!enabled()) return;
        auto [it, inserted] = entries_.emplace(key(x, y), dim);
        if (inserted)
            dirty_ = true;
        else if (it->second != dim) {
            it->second = dim;
            dirty_ = true;
        }
    }

    std::size_t size() const { return entries_.size(); }

    // Rewrite the backing file (write-then-rename). Failures are ignored.
    void flush() {
        if (!enabled() || !dirty_) return;
        try {
            namespace fs = std::filesystem;
            fs::create_directories(dir_);
            const fs::path target = path();
            const fs::path tmp = target.string() + ".tmp";
            {
                std::ofstream out(tmp, std::ios::trunc);
                if (!out) return;
                out << kVersion << "\n";
                for (const auto& [k, dim] : entries_)
                    out << std::get<0>(k) << " " << std::get<1>(k) << " " << std::get<2>(k)
                        << " " << std::get<3>(k) << " " << dim << "\n";
                if (!out.good()) return;
            }
            fs::rename(tmp, target);
            dirty_ = false;
        } catch (...) {
        }
    }

private:
    using Key = std::tuple<int, int, int, int>;

    static Key key(ZQVertex x, ZQVertex y) { return {x.p, x.i, y.p, y.i}; }

    std::filesystem::path path() const {
        return std::filesystem::path(dir_) / (hash_ + ".homs");
    }

    void load() {
        std::ifstream in(path());
        if (!in) return;
        std::string header;
        if (!std::getline(in, header) || header != kVersion) return;
        std::map<Key, std::int64_t> fresh;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            int p1, i1, p2, i2;
            std::int64_t dim;
            std::string extra;
            if (!(ls >> p1 >> i1 >> p2 >> i2 >> dim) || (ls >> extra)) return;
            fresh[{p1, i1, p2, i2}] = dim;
        }
        entries_ = std::move(fresh);
    }

    std::string dir_;
    std::string hash_;
    std::map<Key, std::int64_t> entries_;
    bool dirty_ = false;
};

}  // namespace orbitcat
