#include "eulerfv/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "eulerfv/errors.hpp"

namespace efv {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& section, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: [" + section + "] " + key + " = '" + v + "' is not a number");
  }
}

int parse_int(const std::string& section, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: [" + section + "] " + key + " = '" + v + "' is not an integer");
  }
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: [" + section + "] " + key + " = '" + v + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(v);
  while (std::getline(is, item, ',')) parts.push_back(trim(item));
  if (!v.empty() && v.back() == ',') parts.push_back("");
  return parts;
}

} // namespace

IniDocument IniDocument::parse(const std::string& text) {
  IniDocument doc;
  std::istringstream is(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("config: malformed section header at line " + std::to_string(lineno));
      current = trim(t.substr(1, t.size() - 2));
      if (current.empty())
        throw ConfigError("config: empty section name at line " + std::to_string(lineno));
      doc.sections.emplace_back(current, Section{});
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key=value at line " + std::to_string(lineno));
    if (current.empty())
      throw ConfigError("config: key outside any section at line " + std::to_string(lineno));
    doc.sections.back().second.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return doc;
}

IniDocument IniDocument::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void IniDocument::set(const std::string& dotted_key, const std::string& value) {
  const std::size_t dot = dotted_key.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == dotted_key.size())
    throw ConfigError("config: override key must look like section.key, got '" + dotted_key + "'");
  const std::string sec = dotted_key.substr(0, dot);
  const std::string key = dotted_key.substr(dot + 1);
  for (auto& [name, entries] : sections) {
    if (name != sec) continue;
    for (auto& [k, v] : entries)
      if (k == key) {
        v = value;
        return;
      }
    entries.emplace_back(key, value);
    return;
  }
  sections.emplace_back(sec, Section{{key, value}});
}

const std::string* IniDocument::find(const std::string& section, const std::string& key) const {
  for (const auto& [name, entries] : sections) {
    if (name != section) continue;
    for (const auto& [k, v] : entries)
      if (k == key) return &v;
  }
  return nullptr;
}

std::string IniDocument::serialize() const {
  std::ostringstream os;
  for (const auto& [name, entries] : sections) {
    os << "[" << name << "]\n";
    for (const auto& [k, v] : entries) os << k << " = " << v << "\n";
    os << "\n";
  }
  return os.str();
}

namespace {

struct Reader {
  const IniDocument& doc;
  std::set<std::string> consumed;

  const std::string* get(const std::string& sec, const std::string& key) {
    consumed.insert(sec + "." + key);
    return doc.find(sec, key);
  }
  double number(const std::string& sec, const std::string& key, double dflt) {
    const std::string* v = get(sec, key);
    return v ? parse_double(sec, key, *v) : dflt;
  }
  int integer(const std::string& sec, const std::string& key, int dflt) {
    const std::string* v = get(sec, key);
    return v ? parse_int(sec, key, *v) : dflt;
  }
  bool boolean(const std::string& sec, const std::string& key, bool dflt) {
    const std::string* v = get(sec, key);
    return v ? parse_bool(sec, key, *v) : dflt;
  }
  std::string text(const std::string& sec, const std::string& key, std::string dflt) {
    const std::string* v = get(sec, key);
    return v ? *v : dflt;
  }

  void reject_unknown() const {
    for (const auto& [name, entries] : doc.sections)
      for (const auto& [k, v] : entries)
        if (!consumed.count(name + "." + k))
          throw ConfigError("config: unknown key [" + name + "] " + k);
  }
};

} // namespace

RunConfig resolve_config(const IniDocument& doc) {
  Reader r{doc, {}};
  RunConfig cfg;
  StudyConfig& st = cfg.study;

  const double a = r.number("gas", "a", 1.0);
  const double gamma = r.number("gas", "gamma", 1.5);
  try {
    st.gas = GasLaw{a, gamma};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  st.scheme.alpha = r.number("scheme", "alpha", 0.5);
  st.scheme.beta = r.number("scheme", "beta", -0.8);
  st.scheme.c_t = r.number("scheme", "c_t", 0.5);
  st.scheme.tol_nl = r.number("scheme", "tol_nl", 1e-11);
  st.scheme.max_nl_iter = r.integer("scheme", "max_nl_iter", 50);
  st.scheme.max_dt_halvings = r.integer("scheme", "max_dt_halvings", 4);
  st.scheme.vacuum_shift = r.boolean("scheme", "vacuum_shift", false);
  if (!(st.scheme.c_t > 0.0)) throw ConfigError("config: [scheme] c_t must be positive");
  if (!(st.scheme.tol_nl > 0.0)) throw ConfigError("config: [scheme] tol_nl must be positive");
  if (st.scheme.max_nl_iter < 1) throw ConfigError("config: [scheme] max_nl_iter must be >= 1");
  if (st.scheme.max_dt_halvings < 0)
    throw ConfigError("config: [scheme] max_dt_halvings must be >= 0");

  st.dim = r.integer("mesh", "dim", 1);
  if (st.dim < 1 || st.dim > 3) throw ConfigError("config: [mesh] dim must be 1, 2 or 3");
  {
    const std::string n_text = r.text("mesh", "n", "64");
    const auto parts = split_list(n_text);
    if (parts.size() != 1 && parts.size() != static_cast<std::size_t>(st.dim))
      throw ConfigError("config: [mesh] n needs 1 or dim entries");
    for (int axis = 0; axis < st.dim; ++axis) {
      const std::string& p = parts.size() == 1 ? parts[0] : parts[static_cast<std::size_t>(axis)];
      st.base_cells[axis] = parse_int("mesh", "n", p);
      if (st.base_cells[axis] < 2)
        throw ConfigError("config: [mesh] n must be at least 2 per axis");
    }
  }

  const std::string case_id = r.text("case", "id", "smooth_periodic");
  if (case_id == "smooth_periodic") {
    st.study_case = StudyCase::smooth_periodic;
    st.smooth.mean_rho = r.number("case", "mean_rho", 1.0);
    st.smooth.amp_rho = r.number("case", "amp_rho", 0.2);
    st.smooth.freq_rho[0] = r.integer("case", "freq_rho", 1);
    const double amp_u = r.number("case", "amp_u", 0.3);
    const int freq_u = r.integer("case", "freq_u", 1);
    for (int j = 0; j < st.dim; ++j) {
      st.smooth.amp_u[j] = amp_u;
      st.smooth.freq_u[j] = freq_u;
    }
    for (int axis = 1; axis < st.dim; ++axis) st.smooth.freq_rho[axis] = 0;
    if (!(st.smooth.mean_rho - std::fabs(st.smooth.amp_rho) > 0.0))
      throw ConfigError("config: [case] mean_rho must exceed |amp_rho|");
  } else if (case_id == "riemann") {
    if (st.dim != 1) throw ConfigError("config: riemann case requires dim = 1");
    st.study_case = StudyCase::riemann;
    RiemannState left{r.number("case", "rho_left", 1.0), r.number("case", "u_left", 0.0)};
    RiemannState right;
    right.rho = r.number("case", "rho_right", 0.7);
    const std::string* u_right_text = r.get("case", "u_right");
    if (u_right_text) {
      right.u = parse_double("case", "u_right", *u_right_text);
    } else {
      // default: connect along the 1-rarefaction curve through the left state
      right.u = left.u + 2.0 / (gamma - 1.0) *
                             (sound_speed(st.gas, left.rho) - sound_speed(st.gas, right.rho));
    }
    const double window = r.number("case", "window", 0.5);
    try {
      st.riemann = make_riemann(st.gas, left, right, window);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  } else if (case_id == "two_state_synthetic") {
    st.study_case = StudyCase::two_state_synthetic;
    st.two_state.a.rho = r.number("case", "rho_a", 1.0);
    st.two_state.b.rho = r.number("case", "rho_b", 3.0);
    const auto ma = split_list(r.text("case", "m_a", "0"));
    const auto mb = split_list(r.text("case", "m_b", "0"));
    for (int j = 0; j < st.dim; ++j) {
      st.two_state.a.m[j] = parse_double(
          "case", "m_a", ma.size() == 1 ? ma[0] : ma.at(static_cast<std::size_t>(j)));
      st.two_state.b.m[j] = parse_double(
          "case", "m_b", mb.size() == 1 ? mb[0] : mb.at(static_cast<std::size_t>(j)));
    }
    if (!(st.two_state.a.rho > 0.0 && st.two_state.b.rho > 0.0))
      throw ConfigError("config: [case] synthetic states need positive density");
  } else {
    throw ConfigError("config: unknown case id '" + case_id + "'");
  }

  st.t_end = r.number("study", "t_end", 0.5);
  if (st.study_case == StudyCase::riemann && st.riemann.has_value())
    st.t_end = std::min(st.t_end, st.riemann->t_valid);
  if (!(st.t_end > 0.0)) throw ConfigError("config: [study] t_end must be positive");
  st.levels = r.integer("study", "levels", 2);
  if (st.levels < 1) throw ConfigError("config: [study] levels must be >= 1");
  {
    const std::string snaps = r.text("study", "snapshot_times", "");
    if (snaps.empty()) {
      st.snapshot_times = {0.5 * st.t_end, st.t_end};
    } else {
      st.snapshot_times.clear();
      for (const std::string& p : split_list(snaps))
        st.snapshot_times.push_back(parse_double("study", "snapshot_times", p));
    }
    for (double ts : st.snapshot_times)
      if (ts < 0.0 || ts > st.t_end)
        throw ConfigError("config: [study] snapshot times must lie in [0, t_end]");
    if (!std::is_sorted(st.snapshot_times.begin(), st.snapshot_times.end()))
      throw ConfigError("config: [study] snapshot times must be ascending");
  }
  st.probe_stride = r.integer("study", "probe_stride", 4);
  if (st.probe_stride < 1) throw ConfigError("config: [study] probe_stride must be >= 1");
  {
    const std::string w = r.text("study", "probe_window", "");
    if (!w.empty()) {
      const auto parts = split_list(w);
      if (parts.size() != 2) throw ConfigError("config: [study] probe_window needs two entries");
      st.probe_window[0] = parse_double("study", "probe_window", parts[0]);
      st.probe_window[1] = parse_double("study", "probe_window", parts[1]);
      if (!(st.probe_window[0] < st.probe_window[1]))
        throw ConfigError("config: [study] probe_window must be an interval");
    }
  }
  st.thresholds.eps_meas = r.number("study", "eps_meas", -1.0);
  st.thresholds.tau_osc = r.number("study", "tau_osc", -1.0);
  st.thresholds.tau_dirac = r.number("study", "tau_dirac", -1.0);
  st.bump_grid = r.integer("study", "bump_grid", 3);
  if (st.bump_grid < 1 || st.bump_grid % 2 == 0)
    throw ConfigError("config: [study] bump_grid must be odd");

  cfg.output.directory = r.text("output", "directory", "out");
  cfg.output.vtk = r.boolean("output", "vtk", false);
  if (cfg.output.directory.empty())
    throw ConfigError("config: [output] directory must not be empty");

  r.reject_unknown();

  // the scheme parameter gate guards every solver-backed case
  if (st.study_case != StudyCase::two_state_synthetic) {
    const std::string why = check_parameters(gamma, st.scheme.alpha, st.scheme.beta);
    if (!why.empty()) throw ConfigError("config: scheme parameters rejected: " + why);
  }

  // echo the resolved configuration deterministically
  IniDocument echo;
  auto put = [&echo](const std::string& sec, const std::string& key, const std::string& val) {
    echo.set(sec + "." + key, val);
  };
  std::ostringstream num;
  auto fmt = [&num](double v) {
    num.str("");
    num.precision(17);
    num << v;
    return num.str();
  };
  put("gas", "a", fmt(a));
  put("gas", "gamma", fmt(gamma));
  put("scheme", "alpha", fmt(st.scheme.alpha));
  put("scheme", "beta", fmt(st.scheme.beta));
  put("scheme", "c_t", fmt(st.scheme.c_t));
  put("scheme", "tol_nl", fmt(st.scheme.tol_nl));
  put("scheme", "max_nl_iter", std::to_string(st.scheme.max_nl_iter));
  put("scheme", "max_dt_halvings", std::to_string(st.scheme.max_dt_halvings));
  put("scheme", "vacuum_shift", st.scheme.vacuum_shift ? "true" : "false");
  put("mesh", "dim", std::to_string(st.dim));
  {
    std::string n_text;
    for (int axis = 0; axis < st.dim; ++axis)
      n_text += (axis ? "," : "") + std::to_string(st.base_cells[axis]);
    put("mesh", "n", n_text);
  }
  put("case", "id", case_id);
  if (st.study_case == StudyCase::smooth_periodic) {
    put("case", "mean_rho", fmt(st.smooth.mean_rho));
    put("case", "amp_rho", fmt(st.smooth.amp_rho));
    put("case", "freq_rho", std::to_string(st.smooth.freq_rho[0]));
    put("case", "amp_u", fmt(st.smooth.amp_u[0]));
    put("case", "freq_u", std::to_string(st.smooth.freq_u[0]));
  } else if (st.study_case == StudyCase::riemann) {
    put("case", "rho_left", fmt(st.riemann->left.rho));
    put("case", "u_left", fmt(st.riemann->left.u));
    put("case", "rho_right", fmt(st.riemann->right.rho));
    put("case", "u_right", fmt(st.riemann->right.u));
    put("case", "window", fmt(st.riemann->window));
  } else {
    put("case", "rho_a", fmt(st.two_state.a.rho));
    put("case", "m_a", fmt(st.two_state.a.m[0]));
    put("case", "rho_b", fmt(st.two_state.b.rho));
    put("case", "m_b", fmt(st.two_state.b.m[0]));
  }
  put("study", "t_end", fmt(st.t_end));
  put("study", "levels", std::to_string(st.levels));
  {
    std::string snaps;
    for (std::size_t i = 0; i < st.snapshot_times.size(); ++i)
      snaps += (i ? "," : "") + fmt(st.snapshot_times[i]);
    put("study", "snapshot_times", snaps);
  }
  put("study", "probe_stride", std::to_string(st.probe_stride));
  put("study", "probe_window", fmt(st.probe_window[0]) + "," + fmt(st.probe_window[1]));
  put("study", "eps_meas", fmt(st.thresholds.eps_meas));
  put("study", "tau_osc", fmt(st.thresholds.tau_osc));
  put("study", "tau_dirac", fmt(st.thresholds.tau_dirac));
  put("study", "bump_grid", std::to_string(st.bump_grid));
  put("output", "directory", cfg.output.directory);
  put("output", "vtk", cfg.output.vtk ? "true" : "false");
  cfg.resolved_text = echo.serialize();
  return cfg;
}

} // namespace efv
