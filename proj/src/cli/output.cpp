#include "capspec/cli/output.hpp"

#include <boost/crc.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace capspec::cli {

using nlohmann::ordered_json;

std::uint32_t crc32_of(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

void write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& content,
                    RunManifest& manifest) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to " + (dir / name).string());
  manifest.artifacts.push_back({name, crc32_of(content), content.size()});
}

namespace {

// JSON numbers cannot be inf/nan; such values go out as strings.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return fmt17(v);
}

std::string crc_hex(std::uint32_t crc) {
  char buf[12];
  std::snprintf(buf, sizeof buf, "%08x", crc);
  return buf;
}

const char* kind_name(VerificationReport::Kind kind) {
  switch (kind) {
    case VerificationReport::Kind::inequality: return "inequality";
    case VerificationReport::Kind::lower_bound: return "lower_bound";
    case VerificationReport::Kind::identity: return "identity";
  }
  return "unknown";
}

std::string dump(const ordered_json& j) {
  return j.dump(2) + "\n";
}

}  // namespace

void write_manifest(const std::filesystem::path& dir, const RunManifest& m, const std::string& name) {
  ordered_json j;
  j["command"] = m.command;
  j["output_dir"] = m.output_dir;
  j["datum"] = m.datum_spec;
  j["config_echo"] = m.config_echo;
  j["artifacts"] = ordered_json::array();
  for (const auto& a : m.artifacts)
    j["artifacts"].push_back({{"file", a.file}, {"crc32", crc_hex(a.crc32)}, {"bytes", a.bytes}});
  j["timings_seconds"] = ordered_json::object();
  for (const auto& [k, v] : m.timings) j["timings_seconds"][k] = number(v);
  j["flags"] = ordered_json::object();
  for (const auto& [k, v] : m.flags) j["flags"][k] = v;

  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << dump(j);
}

std::string trace_csv(const NormTrace& trace) {
  std::ostringstream out;
  out << "t,h32,h94,h3,l4_h94\n";
  if (trace.empty()) return out.str();
  const auto h32 = trace.column(1.5);
  const auto h94 = trace.column(2.25);
  const auto h3 = trace.column(3.0);
  const auto acc = trace.accumulator(4.0, 2.25);
  const auto& t = trace.times();
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << fmt17(t[i]) << ',' << fmt17(h32[i]) << ',' << fmt17(h94[i]) << ',' << fmt17(h3[i]) << ','
        << fmt17(std::pow(acc[i], 0.25)) << '\n';
  }
  return out.str();
}

std::string snapshots_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,n,re,im\n";
  for (std::size_t m = 0; m < traj.snapshots.size(); ++m) {
    const auto& f = traj.snapshots[m];
    for (int n = 1; n <= f.cutoff(); ++n)
      out << fmt17(traj.snapshot_times[m]) << ',' << n << ',' << fmt17(f[n].real()) << ',' << fmt17(f[n].imag())
          << '\n';
  }
  return out.str();
}

std::string metadata_json(const Trajectory& traj, const RunConfig& config) {
  ordered_json j;
  j["termination"] = to_string(traj.termination);
  j["final_time"] = number(traj.final_time());
  j["steps"] = traj.steps;
  j["snapshots"] = traj.snapshots.size();
  j["trace_rows"] = traj.norms.size();
  const auto& s = traj.config;
  j["solver"] = {
      {"cutoff", s.cutoff},
      {"dt", number(s.dt)},
      {"horizon", number(s.horizon)},
      {"integrator", to_string(s.integrator)},
      {"record_every", s.record_every},
      {"blowup_threshold", s.blowup_threshold ? number(*s.blowup_threshold) : ordered_json("auto")},
      {"tail_alarm", number(s.tail_alarm)},
      {"linear_only", s.linear_only},
  };
  j["datum"] = describe_datum(config.datum);
  if (!traj.norms.empty()) {
    j["final_h32"] = number(traj.norms.column(1.5).back());
    j["l4_h94"] = number(lpt_hs_norm(traj.norms, 4.0, 2.25));
    j["int_h3_squared"] = number(traj.norms.accumulator(2.0, 3.0).back());
  }
  return dump(j);
}

std::string reports_json(const std::vector<VerificationReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json ctx = ordered_json::object();
    for (const auto& [k, v] : r.context) ctx[k] = v;
    arr.push_back({
        {"check_name", r.check_name},
        {"kind", kind_name(r.kind)},
        {"measured", number(r.measured)},
        {"bound", number(r.bound_or_target)},
        {"tolerance", number(r.tolerance)},
        {"ratio", number(r.ratio())},
        {"passed", r.passed},
        {"context", ctx},
    });
  }
  return dump(ordered_json{{"reports", arr}});
}

std::string reports_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  out << "check_name,measured,bound,tolerance,passed\n";
  for (const auto& r : reports)
    out << r.check_name << ',' << fmt17(r.measured) << ',' << fmt17(r.bound_or_target) << ',' << fmt17(r.tolerance)
        << ',' << (r.passed ? "true" : "false") << '\n';
  return out.str();
}

std::string picard_csv(const PicardDiagnostics& diag) {
  std::ostringstream out;
  out << "iterate,distance,contraction_factor\n";
  for (std::size_t j = 0; j < diag.distances.size(); ++j) {
    out << j + 1 << ',' << fmt17(diag.distances[j]) << ',';
    if (j > 0) out << fmt17(diag.contraction_factors[j - 1]);
    out << '\n';
  }
  return out.str();
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "amplitude,initial_h32,termination,final_h32,max_h32,monotone_decay\n";
  for (const auto& r : table.rows)
    out << fmt17(r.amplitude) << ',' << fmt17(r.initial_h32) << ',' << to_string(r.termination) << ','
        << fmt17(r.final_h32) << ',' << fmt17(r.max_h32) << ',' << (r.monotone_decay ? "true" : "false") << '\n';
  return out.str();
}

std::string sweep_bracket_line(const SweepTable& table) {
  if (table.bracket)
    return "threshold bracket: [" + fmt17(table.bracket->first) + ", " + fmt17(table.bracket->second) + "]";
  bool all = true;
  for (const auto& r : table.rows) all = all && r.monotone_decay;
  return std::string("threshold bracket: none (") + (all ? "every amplitude decays" : "no amplitude decays") + ")";
}

std::string describe_datum(const DatumSpec& d) {
  std::ostringstream out;
  out << to_string(d.kind);
  switch (d.kind) {
    case DatumSpec::Kind::zero: break;
    case DatumSpec::Kind::modes:
      for (std::size_t i = 0; i < d.modes.size(); ++i)
        out << (i ? ", " : " ") << std::get<0>(d.modes[i]) << ':' << fmt17(std::get<1>(d.modes[i])) << ':'
            << fmt17(std::get<2>(d.modes[i]));
      break;
    case DatumSpec::Kind::cosines:
      for (std::size_t i = 0; i < d.cosines.size(); ++i)
        out << (i ? ", " : " ") << d.cosines[i].first << ':' << fmt17(d.cosines[i].second);
      break;
    case DatumSpec::Kind::random:
      out << " seed=" << d.seed << " profile=" << to_string(d.profile) << " band=" << d.band_lo << ".."
          << d.band_hi;
      break;
  }
  if (d.norm) out << " norm=" << fmt17(*d.norm);
  return out.str();
}

}  // namespace capspec::cli
