#include "glotbench/grid_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "glotbench/error.hpp"

namespace glotbench {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::config, "grid config: " + what); }

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t at = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, at == std::string_view::npos ? s.npos : at - pos)));
    if (at == std::string_view::npos) break;
    pos = at + 1;
  }
  return out;
}

double parse_number(const std::string& s, const std::string& key) {
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "inf" || lower == "+inf" || lower == "clean") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::logic_error&) {
  }
  bad("'" + key + "': bad number '" + s + "'");
}

std::vector<double> parse_numbers(const std::string& value, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split(value, ',')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_number(item, key));
      continue;
    }
    if (parts.size() != 3) bad("'" + key + "': range must be start:stop:step");
    const double start = parse_number(parts[0], key);
    const double stop = parse_number(parts[1], key);
    const double step = parse_number(parts[2], key);
    if (!(step > 0.0) || stop < start) bad("'" + key + "': empty or invalid range");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (count > 100000) bad("'" + key + "': range too long");
    for (long i = 0; i <= count; ++i) {
      // Rounded to 1e-6 so 0.1 ranges do not print as 0.30000000000000004.
      out.push_back(std::round((start + static_cast<double>(i) * step) * 1e6) / 1e6);
    }
  }
  if (out.empty()) bad("'" + key + "' is empty");
  return out;
}

std::vector<char> parse_vowels(const std::vector<std::string>& items) {
  std::vector<char> out;
  for (const auto& v : items) {
    if (v.empty()) continue;
    if (v.size() != 1) bad("vowel labels are single letters, got '" + v + "'");
    out.push_back(v[0]);
  }
  if (out.empty()) bad("'vowels' is empty");
  return out;
}

LfShape parse_shape(const std::string& item) {
  const auto parts = split(item, '/');
  if (parts.size() != 3) bad("lf shape must be oq/am/qa, got '" + item + "'");
  return {parse_number(parts[0], "lf_shapes"), parse_number(parts[1], "lf_shapes"),
          parse_number(parts[2], "lf_shapes")};
}

std::size_t parse_count(const std::string& s, const std::string& key) {
  const double v = parse_number(s, key);
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) bad("'" + key + "' must be a positive integer");
  return static_cast<std::size_t>(v);
}

std::string canonical_key(const std::string& key) {
  if (key == "f0" || key == "f0_values") return "f0";
  if (key == "vowel" || key == "vowels") return "vowels";
  if (key == "snr" || key == "snr_db" || key == "snr_values") return "snr";
  if (key == "gci_error" || key == "gci_error_frac" || key == "gci_error_fracs") return "gci_error";
  if (key == "lf_shapes" || key == "lf_shape_values" || key == "shapes") return "lf_shapes";
  if (key == "n_periods" || key == "periods") return "n_periods";
  if (key == "fs" || key == "sample_rate") return "fs";
  bad("unknown key '" + key + "'");
}

std::string json_scalar_text(const nlohmann::json& v, const std::string& key) {
  if (v.is_number()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  bad("'" + key + "': unsupported JSON value");
}

GridSpec parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("JSON grid must be an object");
  GridSpec g = GridSpec::desk();
  for (const auto& [raw_key, v] : doc.items()) {
    const std::string key = canonical_key(raw_key);
    std::vector<std::string> items;
    if (v.is_array()) {
      for (const auto& e : v) {
        if (key == "lf_shapes" && e.is_array()) {
          if (e.size() != 3) bad("lf shape arrays need 3 entries");
          items.push_back(json_scalar_text(e[0], key) + "/" + json_scalar_text(e[1], key) + "/" +
                          json_scalar_text(e[2], key));
        } else if (key == "lf_shapes" && e.is_object()) {
          try {
            items.push_back(json_scalar_text(e.at("oq"), key) + "/" +
                            json_scalar_text(e.at("am"), key) + "/" +
                            json_scalar_text(e.at("qa"), key));
          } catch (const nlohmann::json::exception&) {
            bad("lf shape objects need oq, am and qa");
          }
        } else {
          items.push_back(json_scalar_text(e, key));
        }
      }
    } else {
      items.push_back(json_scalar_text(v, key));
    }
    std::string joined;
    for (std::size_t i = 0; i < items.size(); ++i) joined += (i ? "," : "") + items[i];
    if (key == "f0") g.f0_values = parse_numbers(joined, key);
    else if (key == "vowels") g.vowels = parse_vowels(items);
    else if (key == "snr") g.snr_values = parse_numbers(joined, key);
    else if (key == "gci_error") g.gci_error_fracs = parse_numbers(joined, key);
    else if (key == "lf_shapes") {
      g.lf_shapes.clear();
      for (const auto& s : items) g.lf_shapes.push_back(parse_shape(s));
      if (g.lf_shapes.empty()) bad("'lf_shapes' is empty");
    } else if (key == "n_periods") g.n_periods = parse_count(joined, key);
    else if (key == "fs") g.fs = static_cast<int>(parse_count(joined, key));
  }
  return g;
}

GridSpec parse_key_value(const std::string& text) {
  GridSpec g = GridSpec::desk();
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = canonical_key(trim(std::string_view(line).substr(0, eq)));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      value = trim(std::string_view(value).substr(1, value.size() - 2));
    }
    if (key == "f0") g.f0_values = parse_numbers(value, key);
    else if (key == "vowels") g.vowels = parse_vowels(split(value, ','));
    else if (key == "snr") g.snr_values = parse_numbers(value, key);
    else if (key == "gci_error") g.gci_error_fracs = parse_numbers(value, key);
    else if (key == "lf_shapes") {
      g.lf_shapes.clear();
      for (const auto& s : split(value, ',')) {
        if (!s.empty()) g.lf_shapes.push_back(parse_shape(s));
      }
      if (g.lf_shapes.empty()) bad("'lf_shapes' is empty");
    } else if (key == "n_periods") g.n_periods = parse_count(value, key);
    else if (key == "fs") g.fs = static_cast<int>(parse_count(value, key));
  }
  return g;
}

}  // namespace

GridSpec parse_grid_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  GridSpec g = (first != std::string::npos && text[first] == '{') ? parse_json(text)
                                                                   : parse_key_value(text);
  g.validate();
  return g;
}

GridSpec parse_grid_config(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grid_text(buf.str());
}

GridSpec load_grid_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open grid file " + path.string());
  return parse_grid_config(in);
}

std::string format_grid_config(const GridSpec& spec) {
  auto list = [](const std::vector<double>& v) {
    std::string s;
    char buf[64];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (std::isinf(v[i])) std::snprintf(buf, sizeof buf, "inf");
      else std::snprintf(buf, sizeof buf, "%.12g", v[i]);
      s += (i ? ", " : "") + std::string(buf);
    }
    return s;
  };
  std::string out;
  out += "f0 = " + list(spec.f0_values) + "\n";
  out += "vowels = ";
  for (std::size_t i = 0; i < spec.vowels.size(); ++i) {
    out += (i ? ", " : "") + std::string(1, spec.vowels[i]);
  }
  out += "\nsnr = " + list(spec.snr_values) + "\n";
  out += "gci_error = " + list(spec.gci_error_fracs) + "\n";
  out += "lf_shapes = ";
  char buf[96];
  for (std::size_t i = 0; i < spec.lf_shapes.size(); ++i) {
    const auto& s = spec.lf_shapes[i];
    std::snprintf(buf, sizeof buf, "%s%.12g/%.12g/%.12g", i ? ", " : "", s.oq, s.am, s.qa);
    out += buf;
  }
  out += "\nn_periods = " + std::to_string(spec.n_periods) + "\n";
  out += "fs = " + std::to_string(spec.fs) + "\n";
  return out;
}

}  // namespace glotbench
