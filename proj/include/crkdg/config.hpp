#ifndef CRKDG_CONFIG_HPP
#define CRKDG_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

namespace crkdg {

// Line-oriented config: `[section]` headers, `key = value` entries, `#` comments.
struct ConfigSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double def) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int def) const;
    bool get_bool_or(const std::string& key, bool def) const;
    std::vector<double> get_doubles(const std::string& key) const; // space-separated
};

std::vector<ConfigSection> parse_config(const std::string& text);
std::vector<ConfigSection> parse_config_file(const std::string& path);

} // namespace crkdg

#endif
