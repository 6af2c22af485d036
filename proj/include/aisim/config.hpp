#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace aisim {

// Minimal INI-style key-value file: [section] headers, key = value lines,
// '#' or ';' comments. Unknown keys are preserved; lookups fall back to defaults.
class IniFile {
public:
    IniFile() = default;
    static IniFile parse(std::istream& in);
    static IniFile parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace aisim
