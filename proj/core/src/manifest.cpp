#include "pmm/manifest.hpp"

#include "pmm/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>

namespace pmm {

std::string version_string() {
#ifdef PMM_GIT_REV
    return std::string("pmm_lab 0.1.0+") + PMM_GIT_REV;
#else
    return "pmm_lab 0.1.0";
#endif
}

void Manifest::set(const std::string& key, const std::vector<int>& v) {
    std::vector<long long> w(v.begin(), v.end());
    put(key, Value(w));
}

void Manifest::put(const std::string& key, Value v) {
    for (auto& e : entries_) {
        if (e.first == key) {
            e.second = std::move(v);
            return;
        }
    }
    entries_.emplace_back(key, std::move(v));
}

namespace {

std::string iso_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::string Manifest::text() const {
    nlohmann::ordered_json j;
    j["version"] = version_string();
    j["written_at"] = iso_now();
    for (const auto& [key, value] : entries_) {
        std::visit([&](const auto& v) { j[key] = v; }, value);
    }
    return j.dump(2) + "\n";
}

void Manifest::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open manifest output: " + path);
    out << text();
}

} // namespace pmm
