#include "capspec/cli/config.hpp"

#include "capspec/norms.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace capspec::cli {

ConfigError::ConfigError(const std::string& message, int line, std::string field)
    : std::runtime_error(message), line_(line), field_(std::move(field)) {}

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_string(DatumSpec::Kind kind) {
  switch (kind) {
    case DatumSpec::Kind::zero: return "zero";
    case DatumSpec::Kind::modes: return "modes";
    case DatumSpec::Kind::cosines: return "cosines";
    case DatumSpec::Kind::random: return "random";
  }
  return "unknown";
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

// Value parsers report a bare message; the caller prefixes location and field.
struct BadValue {
  std::string message;
};

template <class T>
T parse_number(const std::string& s) {
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    if constexpr (std::is_floating_point_v<T>) throw BadValue{"expected a number, got '" + s + "'"};
    throw BadValue{"expected an integer, got '" + s + "'"};
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw BadValue{"expected a finite number, got '" + s + "'"};
  }
  return value;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw BadValue{"expected true or false, got '" + s + "'"};
}

std::vector<double> parse_doubles(const std::string& s) {
  if (s.empty()) return {};
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_number<double>(item));
  return out;
}

std::vector<std::pair<int, double>> parse_cosines(const std::string& s) {
  if (s.empty()) return {};
  std::vector<std::pair<int, double>> out;
  for (const auto& item : split(s, ',')) {
    auto f = split(item, ':');
    if (f.size() != 2) throw BadValue{"expected n:amplitude, got '" + item + "'"};
    out.emplace_back(parse_number<int>(f[0]), parse_number<double>(f[1]));
  }
  return out;
}

std::vector<std::tuple<int, double, double>> parse_modes(const std::string& s) {
  if (s.empty()) return {};
  std::vector<std::tuple<int, double, double>> out;
  for (const auto& item : split(s, ',')) {
    auto f = split(item, ':');
    if (f.size() != 3) throw BadValue{"expected n:re:im, got '" + item + "'"};
    out.emplace_back(parse_number<int>(f[0]), parse_number<double>(f[1]), parse_number<double>(f[2]));
  }
  return out;
}

DatumSpec::Kind parse_kind(const std::string& s) {
  for (auto k : {DatumSpec::Kind::zero, DatumSpec::Kind::modes, DatumSpec::Kind::cosines, DatumSpec::Kind::random})
    if (to_string(k) == s) return k;
  throw BadValue{"expected zero, modes, cosines or random, got '" + s + "'"};
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& setters() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"datum",
       {
           {"type", [](RunConfig& c, const std::string& v) { c.datum.kind = parse_kind(v); }},
           {"modes", [](RunConfig& c, const std::string& v) { c.datum.modes = parse_modes(v); }},
           {"cosines", [](RunConfig& c, const std::string& v) { c.datum.cosines = parse_cosines(v); }},
           {"seed", [](RunConfig& c, const std::string& v) { c.datum.seed = parse_number<std::uint64_t>(v); }},
           {"profile",
            [](RunConfig& c, const std::string& v) {
              try {
                c.datum.profile = parse_band_profile(v);
              } catch (const std::invalid_argument&) {
                throw BadValue{"expected flat, decaying or high_band, got '" + v + "'"};
              }
            }},
           {"band_lo", [](RunConfig& c, const std::string& v) { c.datum.band_lo = parse_number<int>(v); }},
           {"band_hi", [](RunConfig& c, const std::string& v) { c.datum.band_hi = parse_number<int>(v); }},
           {"norm",
            [](RunConfig& c, const std::string& v) {
              if (v == "none") {
                c.datum.norm.reset();
                return;
              }
              c.datum.norm = parse_number<double>(v);
              if (*c.datum.norm < 0.0) throw BadValue{"must be non-negative"};
            }},
           {"amplitudes", [](RunConfig& c, const std::string& v) { c.datum.amplitudes = parse_doubles(v); }},
       }},
      {"solver",
       {
           {"cutoff", [](RunConfig& c, const std::string& v) { c.solver.cutoff = parse_number<int>(v); }},
           {"dt", [](RunConfig& c, const std::string& v) { c.solver.dt = parse_number<double>(v); }},
           {"horizon", [](RunConfig& c, const std::string& v) { c.solver.horizon = parse_number<double>(v); }},
           {"integrator",
            [](RunConfig& c, const std::string& v) {
              try {
                c.solver.integrator = parse_integrator(v);
              } catch (const std::invalid_argument&) {
                throw BadValue{"expected etdrk4 or ifrk4, got '" + v + "'"};
              }
            }},
           {"record_every", [](RunConfig& c, const std::string& v) { c.solver.record_every = parse_number<int>(v); }},
           {"blowup_threshold",
            [](RunConfig& c, const std::string& v) {
              if (v == "auto")
                c.solver.blowup_threshold.reset();
              else
                c.solver.blowup_threshold = parse_number<double>(v);
            }},
           {"tail_alarm", [](RunConfig& c, const std::string& v) { c.solver.tail_alarm = parse_number<double>(v); }},
           {"linear_only", [](RunConfig& c, const std::string& v) { c.solver.linear_only = parse_bool(v); }},
           {"picard_tol", [](RunConfig& c, const std::string& v) { c.picard_tol = parse_number<double>(v); }},
           {"picard_maxit", [](RunConfig& c, const std::string& v) { c.picard_maxit = parse_number<int>(v); }},
       }},
      {"outputs",
       {
           {"dir", [](RunConfig& c, const std::string& v) { c.outputs.dir = v; }},
           {"snapshots", [](RunConfig& c, const std::string& v) { c.outputs.snapshots = parse_bool(v); }},
       }},
      {"verify",
       {
           {"seed", [](RunConfig& c, const std::string& v) { c.verify.seed = parse_number<std::uint64_t>(v); }},
           {"random_pairs", [](RunConfig& c, const std::string& v) { c.verify.random_pairs = parse_number<int>(v); }},
           {"probe_samples",
            [](RunConfig& c, const std::string& v) { c.verify.probe_samples = parse_number<int>(v); }},
           {"support_cutoff",
            [](RunConfig& c, const std::string& v) { c.verify.support_cutoff = parse_number<int>(v); }},
           {"support_inputs",
            [](RunConfig& c, const std::string& v) { c.verify.support_inputs = parse_number<int>(v); }},
           {"scaling_dt", [](RunConfig& c, const std::string& v) { c.verify.scaling_dt = parse_number<double>(v); }},
           {"refinement_levels",
            [](RunConfig& c, const std::string& v) { c.verify.refinement_levels = parse_number<int>(v); }},
       }},
  };
  return table;
}

// Validation messages from SolverConfig start with a short field tag.
std::string config_key_for(const std::string& tag) {
  if (tag == "N") return "cutoff";
  if (tag == "T") return "horizon";
  return tag;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig config;
  std::map<std::string, int> seen;  // "section.key" -> line
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  auto fail = [&](int line, const std::string& field, const std::string& message) -> ConfigError {
    std::string where = source + ":" + std::to_string(line) + ": ";
    if (!field.empty()) where += field + ": ";
    return ConfigError(where + message, line, field);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto hash = raw.find_first_of("#;");
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw fail(line_no, "", "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!setters().count(section)) throw fail(line_no, "[" + section + "]", "unknown section");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw fail(line_no, "", "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw fail(line_no, key, "key outside of any section");
    const std::string field = section + "." + key;
    const auto& keys = setters().at(section);
    auto it = keys.find(key);
    if (it == keys.end()) throw fail(line_no, field, "unknown key");
    if (seen.count(field)) throw fail(line_no, field, "duplicate key (first set on line " +
                                                       std::to_string(seen[field]) + ")");
    seen[field] = line_no;
    try {
      it->second(config, value);
    } catch (const BadValue& e) {
      throw fail(line_no, field, e.message);
    }
  }

  auto line_of = [&](const std::string& field) { return seen.count(field) ? seen[field] : 0; };

  try {
    config.solver.validate();
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    auto colon = msg.find(':');
    std::string field = "solver." + config_key_for(msg.substr(0, colon));
    throw fail(line_of(field), field, trim(msg.substr(colon + 1)));
  }
  if (!(config.picard_tol > 0.0)) throw fail(line_of("solver.picard_tol"), "solver.picard_tol", "must be positive");
  if (config.picard_maxit < 1) throw fail(line_of("solver.picard_maxit"), "solver.picard_maxit", "must be at least 1");

  const auto& d = config.datum;
  const int n_max = config.solver.cutoff;
  for (const auto& [n, re, im] : d.modes)
    if (n < 1 || n > n_max)
      throw fail(line_of("datum.modes"), "datum.modes",
                 "mode " + std::to_string(n) + " outside 1.." + std::to_string(n_max));
  for (const auto& [n, a] : d.cosines)
    if (n < 1 || n > n_max)
      throw fail(line_of("datum.cosines"), "datum.cosines",
                 "mode " + std::to_string(n) + " outside 1.." + std::to_string(n_max));
  if (d.kind == DatumSpec::Kind::random && (d.band_lo < 1 || d.band_hi > n_max || d.band_lo > d.band_hi))
    throw fail(line_of("datum.band_hi") ? line_of("datum.band_hi") : line_of("datum.band_lo"), "datum.band_hi",
               "band must satisfy 1 <= band_lo <= band_hi <= cutoff");

  const auto& v = config.verify;
  if (v.random_pairs < 1) throw fail(line_of("verify.random_pairs"), "verify.random_pairs", "must be at least 1");
  if (v.probe_samples < 1) throw fail(line_of("verify.probe_samples"), "verify.probe_samples", "must be at least 1");
  if (v.support_cutoff < 1) throw fail(line_of("verify.support_cutoff"), "verify.support_cutoff", "must be at least 1");
  if (v.support_inputs < 1) throw fail(line_of("verify.support_inputs"), "verify.support_inputs", "must be at least 1");
  if (!(v.scaling_dt > 0.0)) throw fail(line_of("verify.scaling_dt"), "verify.scaling_dt", "must be positive");
  if (v.refinement_levels < 2)
    throw fail(line_of("verify.refinement_levels"), "verify.refinement_levels", "must be at least 2");
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file", 0, "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream out;
  auto join = [](const auto& items, auto render) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) s += ", ";
      s += render(items[i]);
    }
    return s;
  };
  out << "[datum]\n";
  out << "type = " << to_string(c.datum.kind) << "\n";
  out << "modes = " << join(c.datum.modes, [](const auto& m) {
    return std::to_string(std::get<0>(m)) + ":" + fmt17(std::get<1>(m)) + ":" + fmt17(std::get<2>(m));
  }) << "\n";
  out << "cosines = " << join(c.datum.cosines, [](const auto& m) {
    return std::to_string(m.first) + ":" + fmt17(m.second);
  }) << "\n";
  out << "seed = " << c.datum.seed << "\n";
  out << "profile = " << to_string(c.datum.profile) << "\n";
  out << "band_lo = " << c.datum.band_lo << "\n";
  out << "band_hi = " << c.datum.band_hi << "\n";
  out << "norm = " << (c.datum.norm ? fmt17(*c.datum.norm) : "none") << "\n";
  out << "amplitudes = " << join(c.datum.amplitudes, [](double a) { return fmt17(a); }) << "\n";

  out << "\n[solver]\n";
  out << "cutoff = " << c.solver.cutoff << "\n";
  out << "dt = " << fmt17(c.solver.dt) << "\n";
  out << "horizon = " << fmt17(c.solver.horizon) << "\n";
  out << "integrator = " << to_string(c.solver.integrator) << "\n";
  out << "record_every = " << c.solver.record_every << "\n";
  out << "blowup_threshold = " << (c.solver.blowup_threshold ? fmt17(*c.solver.blowup_threshold) : "auto") << "\n";
  out << "tail_alarm = " << fmt17(c.solver.tail_alarm) << "\n";
  out << "linear_only = " << (c.solver.linear_only ? "true" : "false") << "\n";
  out << "picard_tol = " << fmt17(c.picard_tol) << "\n";
  out << "picard_maxit = " << c.picard_maxit << "\n";

  out << "\n[outputs]\n";
  out << "dir = " << c.outputs.dir << "\n";
  out << "snapshots = " << (c.outputs.snapshots ? "true" : "false") << "\n";

  out << "\n[verify]\n";
  out << "seed = " << c.verify.seed << "\n";
  out << "random_pairs = " << c.verify.random_pairs << "\n";
  out << "probe_samples = " << c.verify.probe_samples << "\n";
  out << "support_cutoff = " << c.verify.support_cutoff << "\n";
  out << "support_inputs = " << c.verify.support_inputs << "\n";
  out << "scaling_dt = " << fmt17(c.verify.scaling_dt) << "\n";
  out << "refinement_levels = " << c.verify.refinement_levels << "\n";
  return out.str();
}

SpectralField build_datum(const RunConfig& config) {
  const auto& d = config.datum;
  const int n_max = config.solver.cutoff;
  SpectralField f(n_max);
  switch (d.kind) {
    case DatumSpec::Kind::zero: break;
    case DatumSpec::Kind::modes: {
      std::vector<std::pair<int, Complex>> list;
      for (const auto& [n, re, im] : d.modes) list.emplace_back(n, Complex(re, im));
      f = SpectralField::from_modes(list, n_max);
      break;
    }
    case DatumSpec::Kind::cosines: f = SpectralField::cosines(d.cosines, n_max); break;
    case DatumSpec::Kind::random: f = random_field(d.seed, n_max, d.profile, d.band_lo, d.band_hi); break;
  }
  if (d.norm) {
    const double current = hs_norm(f, 1.5);
    if (current > 0.0) f *= *d.norm / current;
  }
  return f;
}

}  // namespace capspec::cli
