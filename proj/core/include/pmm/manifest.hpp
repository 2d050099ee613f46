#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pmm {

// Library version string embedded in every manifest.
std::string version_string();

// Run metadata sink, serialized as pretty JSON.  Keys keep insertion order.
// Every config field that influenced a run is echoed here, defaulted or not,
// so an artifact directory is self-describing.
class Manifest {
public:
    using Value = std::variant<bool, long long, double, std::string,
                               std::vector<double>, std::vector<long long>,
                               std::vector<std::string>>;

    void set(const std::string& key, bool v) { put(key, Value(v)); }
    void set(const std::string& key, int v) { put(key, Value(static_cast<long long>(v))); }
    void set(const std::string& key, long long v) { put(key, Value(v)); }
    void set(const std::string& key, std::uint64_t v) { put(key, Value(static_cast<long long>(v))); }
    void set(const std::string& key, double v) { put(key, Value(v)); }
    void set(const std::string& key, const char* v) { put(key, Value(std::string(v))); }
    void set(const std::string& key, const std::string& v) { put(key, Value(v)); }
    void set(const std::string& key, const std::vector<double>& v) { put(key, Value(v)); }
    void set(const std::string& key, const std::vector<long long>& v) { put(key, Value(v)); }
    void set(const std::string& key, const std::vector<std::string>& v) { put(key, Value(v)); }
    void set(const std::string& key, const std::vector<int>& v);

    // Serialized JSON text (includes version and wall-clock timestamp).
    std::string text() const;
    void write(const std::string& path) const;

private:
    void put(const std::string& key, Value v);
    std::vector<std::pair<std::string, Value>> entries_;
};

} // namespace pmm
