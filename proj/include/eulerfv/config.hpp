#ifndef EULERFV_CONFIG_HPP
#define EULERFV_CONFIG_HPP

#include <string>
#include <utility>
#include <vector>

#include "eulerfv/kconv.hpp"

namespace efv {

// Sectioned key-value text; order-preserving so a resolved config can be
// echoed byte-for-byte into result directories.
class IniDocument {
public:
  using Section = std::vector<std::pair<std::string, std::string>>;

  static IniDocument parse(const std::string& text);     // throws ConfigError
  static IniDocument load_file(const std::string& path); // throws ConfigError

  // dotted_key = "section.key"; creates section/key as needed
  void set(const std::string& dotted_key, const std::string& value);
  const std::string* find(const std::string& section, const std::string& key) const;
  std::string serialize() const;

  std::vector<std::pair<std::string, Section>> sections;
};

struct OutputOptions {
  std::string directory = "out";
  bool vtk = false;
};

struct RunConfig {
  StudyConfig study;
  OutputOptions output;
  std::string resolved_text; // the config as actually used, for echoing
};

// Applies defaults, validates every field (including the scheme parameter
// gate), throws ConfigError with the violated constraint spelled out.
RunConfig resolve_config(const IniDocument& doc);

} // namespace efv

#endif
