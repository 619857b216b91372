#include "gqlab/report.hpp"

#include <sstream>

#include "json.hpp"

namespace gqlab {

void report::put(const std::string& key, std::string value) {
    entries_.emplace_back(key, std::move(value));
}

void report::put(const std::string& key, const char* value) { put(key, std::string(value)); }

void report::put(const std::string& key, long long value) { entries_.emplace_back(key, value); }

void report::put(const std::string& key, bool value) { entries_.emplace_back(key, value); }

std::string report::text() const {
    std::ostringstream out;
    for (const auto& [key, val] : entries_) {
        out << key << ": ";
        if (std::holds_alternative<std::string>(val))
            out << std::get<std::string>(val);
        else if (std::holds_alternative<long long>(val))
            out << std::get<long long>(val);
        else
            out << (std::get<bool>(val) ? "yes" : "no");
        out << "\n";
    }
    return out.str();
}

std::string report::json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, val] : entries_) {
        if (std::holds_alternative<std::string>(val))
            j[key] = std::get<std::string>(val);
        else if (std::holds_alternative<long long>(val))
            j[key] = std::get<long long>(val);
        else
            j[key] = std::get<bool>(val);
    }
    return j.dump(2) + "\n";
}

} // namespace gqlab
