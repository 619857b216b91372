#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gqlab {

// Ordered flat key/value report. The text and JSON renderings carry
// exactly the same keys in the same order; only value formatting differs
// (text prints booleans as yes/no).
class report {
  public:
    void put(const std::string& key, std::string value);
    void put(const std::string& key, const char* value);
    void put(const std::string& key, long long value);
    void put(const std::string& key, int value) { put(key, (long long)value); }
    void put(const std::string& key, std::size_t value) { put(key, (long long)value); }
    void put(const std::string& key, bool value);

    std::string text() const;
    std::string json() const;
    std::string render(bool as_json) const { return as_json ? json() : text(); }

  private:
    using value = std::variant<std::string, long long, bool>;
    std::vector<std::pair<std::string, value>> entries_;
};

} // namespace gqlab
