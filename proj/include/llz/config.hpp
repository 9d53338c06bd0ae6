#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace llz {

inline constexpr const char* kVersion = "llz 0.1.0";

// flat key=value configuration; command-line flags override file values
struct RunConfig {
    std::map<std::string, std::string> kv;

    static RunConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("config: cannot open " + path);
        RunConfig c;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config: expected key=value, got: " + line);
            c.kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
        return c;
    }

    void set(const std::string& k, const std::string& v) { kv[k] = v; }
    bool has(const std::string& k) const { return kv.count(k) != 0; }

    std::string str(const std::string& k, const std::string& dflt = "") const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
    double num(const std::string& k, double dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : std::stod(it->second);
    }
    std::int64_t integer(const std::string& k, std::int64_t dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : std::stoll(it->second);
    }

    // canonical serialization (sorted keys) used for the output hash
    std::string canonical() const {
        std::ostringstream os;
        for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
        return os.str();
    }

    std::uint64_t hash() const {
        // FNV-1a
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (char c : canonical()) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

// trailing metadata comment block appended to every CSV
inline void write_csv_metadata(std::ostream& out, const RunConfig& cfg) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(cfg.hash()));
    out << "# version=" << kVersion << "\n";
    out << "# config-hash=" << buf << "\n";
    std::istringstream is(cfg.canonical());
    std::string line;
    while (std::getline(is, line)) out << "# config " << line << "\n";
}

} // namespace llz
