#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cytovisc {

/// Flat sectioned key-value configuration in a TOML subset:
///
///   # comment
///   [physics]
///   temperature_K = 310
///   [simulation]
///   convention = "total3d"
///   thermal_noise = true
///   [sweep]
///   observation_s = [1, 10, 60]
///
/// Keys are addressed as "section.key". Values are numbers, booleans, quoted
/// strings or bracketed number lists; they are stored as text and converted
/// by the typed getters.
class ConfigFile {
  public:
    static ConfigFile parse(std::string_view text);
    static ConfigFile load(std::filesystem::path const& path);

    /// Applies a "section.key=value" override (the CLI --set flag).
    void apply_override(std::string_view assignment);
    void set(std::string key, std::string raw_value);

    bool contains(std::string const& key) const { return values_.count(key) != 0; }
    std::vector<std::string> keys() const;

    std::optional<double> get_double(std::string const& key) const;
    std::optional<std::uint64_t> get_uint(std::string const& key) const;
    std::optional<bool> get_bool(std::string const& key) const;
    std::optional<std::string> get_string(std::string const& key) const;
    std::optional<std::vector<double>> get_list(std::string const& key) const;

    /// Throws ParseError naming the first key not in `known`.
    void require_known_keys(std::vector<std::string_view> const& known) const;

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace cytovisc
