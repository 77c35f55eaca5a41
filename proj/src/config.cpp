#include "cytovisc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cytovisc/errors.hpp"

namespace cytovisc {
namespace {

std::string_view trim(std::string_view s) {
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

double to_double(std::string_view text, std::string const& key) {
    text = trim(text);
    double v = 0.0;
    auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("'" + key + "': expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

ConfigFile ConfigFile::parse(std::string_view text) {
    ConfigFile cfg;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("line " + std::to_string(line_no) + ": unterminated section");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        auto const key = trim(line.substr(0, eq));
        auto const value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key or value");
        cfg.set(section.empty() ? std::string(key) : section + "." + std::string(key), std::string(value));
    }
    return cfg;
}

ConfigFile ConfigFile::load(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void ConfigFile::apply_override(std::string_view assignment) {
    auto const eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ParseError("override must look like section.key=value");
    set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

void ConfigFile::set(std::string key, std::string raw_value) { values_[std::move(key)] = std::move(raw_value); }

std::vector<std::string> ConfigFile::keys() const {
    std::vector<std::string> out;
    for (auto const& [k, v] : values_) out.push_back(k);
    return out;
}

std::optional<double> ConfigFile::get_double(std::string const& key) const {
    auto const it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return to_double(it->second, key);
}

std::optional<std::uint64_t> ConfigFile::get_uint(std::string const& key) const {
    auto const it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    auto const text = trim(it->second);
    std::uint64_t v = 0;
    auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("'" + key + "': expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

std::optional<bool> ConfigFile::get_bool(std::string const& key) const {
    auto const it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw ParseError("'" + key + "': expected true or false");
}

std::optional<std::string> ConfigFile::get_string(std::string const& key) const {
    auto const it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string_view v = it->second;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    return std::string(v);
}

std::optional<std::vector<double>> ConfigFile::get_list(std::string const& key) const {
    auto const it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string_view v = trim(it->second);
    if (v.empty() || v.front() != '[') return std::vector<double>{to_double(v, key)};
    if (v.back() != ']') throw ParseError("'" + key + "': unterminated list");
    v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    while (!trim(v).empty()) {
        auto const comma = v.find(',');
        out.push_back(to_double(v.substr(0, comma), key));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

void ConfigFile::require_known_keys(std::vector<std::string_view> const& known) const {
    for (auto const& [k, v] : values_) {
        if (std::find(known.begin(), known.end(), k) == known.end()) throw ParseError("unknown config key '" + k + "'");
    }
}

}  // namespace cytovisc
