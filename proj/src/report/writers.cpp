#include "wmlab/report/writers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "wmlab/core/config_text.hpp"
#include "wmlab/core/error.hpp"

namespace wmlab::report {

namespace {

using Json = nlohmann::ordered_json;

// Non-finite reals become strings; JSON has no inf.
Json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string slug(std::string s) {
  for (char& ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_')) ch = '_';
  return s;
}

std::string file_stem(const SuiteOutcome& o, const std::string& what) {
  return slug(o.model) + "__" + slug(o.suite) + "__" + slug(what);
}

Json report_json(const BoundReport& r) {
  Json j;
  j["name"] = r.name;
  j["verdict"] = to_string(r.verdict);
  j["hard"] = r.hard;
  j["samples"] = r.samples.size();
  j["conclusive"] = r.conclusive_count();
  j["violations"] = r.violations();
  j["min_margin"] = num(r.min_margin());
  Json constants = Json::object();
  for (const auto& [k, v] : r.constants) constants[k] = num(v);
  j["constants"] = constants;
  Json notes = Json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  j["notes"] = notes;
  j["warnings"] = r.warnings;
  return j;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  f.close();
  if (!f) throw Error("cannot write " + p.string());
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string summary_json(const RunResult& res) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = res.config_text;
  j["exit_code"] = res.exit_code;
  Json suites = Json::array();
  for (const auto& o : res.outcomes) {
    Json s;
    s["suite"] = o.suite;
    s["model"] = o.model;
    s["status"] = !o.error.empty() ? "error" : o.failed() ? "fail" : "ok";
    if (!o.error.empty()) s["error"] = o.error;
    Json values = Json::object();
    for (const auto& [k, v] : o.values) values[k] = num(v);
    s["values"] = values;
    Json notes = Json::object();
    for (const auto& [k, v] : o.notes) notes[k] = v;
    s["notes"] = notes;
    s["skipped"] = o.skipped;
    Json reports = Json::array();
    for (const auto& r : o.reports) {
      Json rj = report_json(r);
      rj["csv"] = file_stem(o, r.name) + ".csv";
      reports.push_back(rj);
    }
    s["reports"] = reports;
    Json tables = Json::array();
    for (const auto& t : o.tables) tables.push_back(file_stem(o, t.name) + ".csv");
    s["tables"] = tables;
    suites.push_back(s);
  }
  j["suites"] = suites;
  return j.dump(2) + "\n";
}

std::string csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      const auto& c = cells[i];
      if (c.find_first_of(",\"\r\n") == std::string::npos) {
        out += c;
        continue;
      }
      out += '"';
      for (char ch : c) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      out += '"';
    }
    out += "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string margin_svg(const BoundReport& rep) {
  const double W = 640, H = 320, pad = 40;
  std::vector<double> m;
  for (const auto& s : rep.samples)
    if (s.split == "validation" && std::isfinite(s.margin)) m.push_back(s.margin);
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << pad << "\" y=\"20\" font-family=\"monospace\" font-size=\"12\">"
     << xml_escape(rep.name) << " margin (" << to_string(rep.verdict) << ")</text>\n";
  if (!m.empty()) {
    double lo = std::min(0.0, *std::min_element(m.begin(), m.end()));
    double hi = std::max(0.0, *std::max_element(m.begin(), m.end()));
    if (hi == lo) hi = lo + 1.0;
    auto x = [&](std::size_t i) { return pad + (W - 2 * pad) * (m.size() > 1 ? double(i) / double(m.size() - 1) : 0.5); };
    auto y = [&](double v) { return H - pad - (H - 2 * pad) * (v - lo) / (hi - lo); };
    os << "<line x1=\"" << pad << "\" y1=\"" << y(0.0) << "\" x2=\"" << W - pad << "\" y2=\"" << y(0.0)
       << "\" stroke=\"gray\" stroke-dasharray=\"4 2\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? " " : "") << x(i) << "," << y(m[i]);
    os << "\"/>\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
      os << "<circle cx=\"" << x(i) << "\" cy=\"" << y(m[i]) << "\" r=\"2.5\" fill=\""
         << (m[i] < 0 ? "crimson" : "steelblue") << "\"/>\n";
    }
    os << "<text x=\"4\" y=\"" << y(hi) + 4 << "\" font-family=\"monospace\" font-size=\"10\">" << hi << "</text>\n";
    os << "<text x=\"4\" y=\"" << y(lo) + 4 << "\" font-family=\"monospace\" font-size=\"10\">" << lo << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_bundle(const RunResult& res, const std::filesystem::path& dir, bool svg) {
  namespace fs = std::filesystem;
  const fs::path target = fs::absolute(dir).lexically_normal();
  const fs::path parent = target.parent_path();
  fs::create_directories(parent);
  const std::string tag = std::to_string(::getpid());
  const fs::path tmp = parent / ("." + target.filename().string() + ".partial-" + tag);
  fs::remove_all(tmp);
  fs::create_directory(tmp);
  try {
    write_file(tmp / "summary.json", summary_json(res));
    for (const auto& o : res.outcomes) {
      for (const auto& r : o.reports) {
        write_file(tmp / (file_stem(o, r.name) + ".csv"), csv(report_table(r)));
        if (svg) write_file(tmp / (file_stem(o, r.name) + ".svg"), margin_svg(r));
      }
      for (const auto& t : o.tables) write_file(tmp / (file_stem(o, t.name) + ".csv"), csv(t));
    }
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::ostringstream stamp;
    stamp << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
    Json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["tool"] = "wmlab";
    meta["created_utc"] = stamp.str();
    meta["output_dir"] = target.string();
    write_file(tmp / "metadata.json", meta.dump(2) + "\n");

    // Swap in: an existing bundle moves aside first, then is removed.
    const fs::path old = parent / ("." + target.filename().string() + ".old-" + tag);
    const bool had = fs::exists(target);
    if (had) fs::rename(target, old);
    fs::rename(tmp, target);
    if (had) fs::remove_all(old);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(tmp, ec);
    throw;
  }
}

}  // namespace wmlab::report
