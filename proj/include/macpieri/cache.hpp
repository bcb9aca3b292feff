#pragma once

// Cache of interpolation polynomials, with two layers. The in-memory layer
// is always active and shares fully-built polynomials between independent
// builders within one process. The disk layer is optional (empty directory
// path = memory only): each record is one JSON file under the cache
// directory, named by a 64-bit FNV-1a hash of its key; the record stores the
// key itself (guarding against hash collisions and stray files), a
// format-version tag, and the monomial terms with canonical coefficient
// strings. Anything unreadable, version-mismatched, or malformed is silently
// ignored and recomputed. Writes go through a temporary file plus rename so
// that concurrent readers never observe a half-written record.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

#include "macpieri/composition.hpp"
#include "macpieri/laurent.hpp"
#include "macpieri/macdonald.hpp"
#include "macpieri/qt_scalar.hpp"

namespace macpieri {

inline constexpr const char* kCacheFormatVersion = "macpieri-cache-1";

class PolyCache {
  public:
    PolyCache() = default;  // memory-only
    explicit PolyCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        if (dir_.empty()) return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
    }

    const std::filesystem::path& dir() const { return dir_; }

    static std::string estar_key(const Composition& eta) {
        return "estar|n=" + std::to_string(eta.n()) + "|eta=" + eta.to_string();
    }

    std::optional<LaurentPoly<QTScalar>> load(const std::string& key, int nvars) const {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = memory_.find(key);
            if (it != memory_.end()) return it->second;
        }
        if (dir_.empty()) return std::nullopt;
        auto fromdisk = load_from_disk(key, nvars);
        if (fromdisk) {
            std::lock_guard<std::mutex> lock(mutex_);
            memory_.emplace(key, *fromdisk);
        }
        return fromdisk;
    }

  private:
    std::optional<LaurentPoly<QTScalar>> load_from_disk(const std::string& key,
                                                        int nvars) const {
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
        if (doc.value("version", "") != kCacheFormatVersion) return std::nullopt;
        if (doc.value("key", "") != key) return std::nullopt;
        if (!doc.contains("terms") || !doc["terms"].is_array()) return std::nullopt;
        LaurentPoly<QTScalar> poly(nvars);
        try {
            for (const auto& t : doc["terms"]) {
                if (!t.is_object() || !t.contains("comp") || !t.contains("coeff"))
                    return std::nullopt;
                std::vector<int> e = t["comp"].get<std::vector<int>>();
                if (static_cast<int>(e.size()) != nvars) return std::nullopt;
                poly.add_term(std::move(e), QTScalar::parse(t["coeff"].get<std::string>()));
            }
        } catch (...) {
            return std::nullopt;
        }
        return poly;
    }

  public:
    void store(const std::string& key, const LaurentPoly<QTScalar>& poly) const {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            memory_.emplace(key, poly);
        }
        if (dir_.empty()) return;
        nlohmann::ordered_json doc;
        doc["version"] = kCacheFormatVersion;
        doc["key"] = key;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [e, c] : poly.terms()) {
            nlohmann::ordered_json t;
            t["comp"] = e;
            t["coeff"] = c.to_string();
            arr.push_back(std::move(t));
        }
        doc["terms"] = std::move(arr);

        std::lock_guard<std::mutex> lock(mutex_);
        std::filesystem::path target = path_for(key);
        std::filesystem::path tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) return;  // unwritable cache directory: caching is best-effort
            out << doc.dump();
        }
        std::error_code ec;
        std::filesystem::rename(tmp, target, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

  private:
    std::filesystem::path path_for(const std::string& key) const {
        char name[17];
        std::snprintf(name, sizeof(name), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(key)));
        return dir_ / (std::string(name) + ".json");
    }

    std::filesystem::path dir_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, LaurentPoly<QTScalar>> memory_;
};

// estar through the cache: a hit is preloaded into the builder, a miss is
// built and persisted. Only the symbolic scalar round-trips through disk;
// sampled evaluations are cheap enough to recompute.
inline const LaurentPoly<QTScalar>& cached_estar(MacdonaldBuilder<QTScalar>& builder,
                                                 const Composition& eta, const PolyCache* cache) {
    if (cache == nullptr || builder.has_estar(eta)) return builder.estar(eta);
    std::string key = PolyCache::estar_key(eta);
    if (auto hit = cache->load(key, eta.n())) {
        builder.preload_estar(eta, std::move(*hit));
        return builder.estar(eta);
    }
    const LaurentPoly<QTScalar>& built = builder.estar(eta);
    cache->store(key, built);
    return built;
}

}  // namespace macpieri
