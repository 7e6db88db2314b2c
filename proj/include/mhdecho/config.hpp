#ifndef MHDECHO_CONFIG_HPP
#define MHDECHO_CONFIG_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace mhdecho {

/// Scalar or array value of the experiment configuration.
struct ConfigValue {
    enum class Kind { number, boolean, string, array };
    Kind kind = Kind::number;
    double num = 0.0;
    bool b = false;
    std::string str;
    std::vector<ConfigValue> arr;

    static ConfigValue number(double v);
    static ConfigValue boolean(bool v);
    static ConfigValue string_v(std::string v);
    static ConfigValue array(std::vector<double> v);
};

/// Flat key -> value map; table keys are flattened as "table.key".
using ConfigMap = std::map<std::string, ConfigValue>;

/// Parse a TOML-style config text: [tables], key = value, # comments,
/// numbers, booleans, "strings" and single-line [arrays].
ConfigMap parse_toml(const std::string& text);
ConfigMap parse_toml_file(const std::string& path);

/// Serialize to a canonical single-line JSON object (sorted keys, 17
/// significant digits); parse_config_json inverts it.
std::string config_to_json(const ConfigMap& cfg);
ConfigMap parse_config_json(const std::string& json_text);

/// Extract the "# config = {...}" header from a previously written output
/// file (CSV, JSON or JSON-lines). Throws validation_error if absent.
ConfigMap load_config_from_output(const std::string& path);

/// Reads a config file by extension: .toml/.cfg via parse_toml, anything else
/// is treated as an output file with an embedded header.
ConfigMap load_config_any(const std::string& path);

/// Typed, consuming view over a ConfigMap. Every key must be consumed:
/// finish() rejects unknown keys, matching the strict-config contract.
class ConfigView {
  public:
    explicit ConfigView(const ConfigMap& cfg) : cfg_(cfg) {}

    bool has(const std::string& key) const { return cfg_.count(key) != 0; }

    double num(const std::string& key, double fallback);
    double num_required(const std::string& key);
    int integer(const std::string& key, int fallback);
    bool boolean(const std::string& key, bool fallback);
    std::string str(const std::string& key, const std::string& fallback);
    std::vector<double> num_array(const std::string& key);

    /// Throws validation_error naming any keys never consumed.
    void finish() const;

  private:
    const ConfigValue* fetch(const std::string& key);

    const ConfigMap& cfg_;
    std::set<std::string> consumed_;
};

} // namespace mhdecho

#endif
