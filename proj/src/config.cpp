#include "crkdg/config.hpp"
#include "crkdg/errors.hpp"

#include <fstream>
#include <sstream>

namespace crkdg {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

bool ConfigSection::has(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return true;
    return false;
}

std::string ConfigSection::get(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    throw ConfigError("missing key '" + key + "' in section [" + name + "]");
}

std::string ConfigSection::get_or(const std::string& key, const std::string& def) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return def;
}

double ConfigSection::get_double(const std::string& key) const {
    const std::string v = get(key);
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw ConfigError("bad numeric value for '" + key + "': " + v);
    return x;
}

double ConfigSection::get_double_or(const std::string& key, double def) const {
    return has(key) ? get_double(key) : def;
}

int ConfigSection::get_int(const std::string& key) const {
    const std::string v = get(key);
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw ConfigError("bad integer value for '" + key + "': " + v);
    return x;
}

int ConfigSection::get_int_or(const std::string& key, int def) const {
    return has(key) ? get_int(key) : def;
}

bool ConfigSection::get_bool_or(const std::string& key, bool def) const {
    if (!has(key)) return def;
    const std::string v = get(key);
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError("bad boolean value for '" + key + "': " + v);
}

std::vector<double> ConfigSection::get_doubles(const std::string& key) const {
    std::istringstream is(get(key));
    std::vector<double> out;
    double x;
    while (is >> x) out.push_back(x);
    if (!is.eof()) throw ConfigError("bad numeric list for '" + key + "'");
    return out;
}

std::vector<ConfigSection> parse_config(const std::string& text) {
    std::vector<ConfigSection> sections;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
            sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (sections.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": entry before any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        sections.back().entries.emplace_back(key, val);
    }
    return sections;
}

std::vector<ConfigSection> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace crkdg
