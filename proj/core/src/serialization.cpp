#include "mfzero/serialization.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mfzero/errors.hpp"

namespace mfzero {

using ordered_json = nlohmann::ordered_json;

std::string format_significant(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0) return "0";  // also folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_significant(value, digits).c_str(), nullptr);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

ordered_json config_object(std::string_view config_json) {
  if (config_json.empty()) return ordered_json::object();
  try {
    return ordered_json::parse(config_json);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("run configuration is not valid JSON: ") + e.what());
  }
}

std::string csv_preamble(std::string_view config_json) {
  return "# format_version=" + std::to_string(kOutputFormatVersion) + "\n# config: " +
         config_object(config_json).dump() + "\n";
}

ordered_json json_head(std::string_view config_json) {
  ordered_json j;
  j["format_version"] = kOutputFormatVersion;
  j["config"] = config_object(config_json);
  return j;
}

// Finite values rounded to `digits`; non-finite become null.
ordered_json number(double v, int digits) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v, digits);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

double parse_double(std::string_view s, const char* what, std::size_t line) {
  double v = 0;
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << "zero list line " << line << ": bad " << what << " '" << s << "'";
    throw FormatError(msg.str());
  }
  return v;
}

}  // namespace

std::string zeros_to_csv(const ZeroList& zeros, std::string_view config_json) {
  std::string out = csv_preamble(config_json);
  out += "# t_max=" + format_significant(zeros.t_max, kZeroDigits) + "\n";
  out += "# count_estimate=" + format_significant(zeros.count_estimate, kZeroDigits) + "\n";
  out += std::string("# complete=") + (zeros.complete ? "true" : "false") + "\n";
  out += "t,multiplicity\n";
  for (const Zero& z : zeros.zeros)
    out += format_significant(z.t, kZeroDigits) + "," + std::to_string(z.multiplicity) + "\n";
  return out;
}

std::string zeros_to_json(const ZeroList& zeros, std::string_view config_json) {
  ordered_json j = json_head(config_json);
  j["t_max"] = number(zeros.t_max, kZeroDigits);
  j["count_estimate"] = number(zeros.count_estimate, kZeroDigits);
  j["complete"] = zeros.complete;
  j["count"] = zeros.found();
  ordered_json rows = ordered_json::array();
  for (const Zero& z : zeros.zeros)
    rows.push_back({{"t", number(z.t, kZeroDigits)}, {"multiplicity", z.multiplicity}});
  j["zeros"] = std::move(rows);
  return j.dump(2) + "\n";
}

ZeroList zeros_from_csv(std::string_view text) {
  ZeroList out;
  bool have_t_max = false, have_complete = false, have_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;

    if (line.front() == '#') {
      line = trim(line.substr(1));
      const auto take = [&](std::string_view key) {
        if (line.substr(0, key.size()) != key) return false;
        line = line.substr(key.size());
        return true;
      };
      if (take("format_version=")) {
        if (parse_double(line, "format_version", line_no) != kOutputFormatVersion)
          throw FormatError("unsupported zero list format_version");
      } else if (take("t_max=")) {
        out.t_max = parse_double(line, "t_max", line_no);
        have_t_max = true;
      } else if (take("count_estimate=")) {
        out.count_estimate = parse_double(line, "count_estimate", line_no);
      } else if (take("complete=")) {
        if (line != "true" && line != "false") throw FormatError("bad complete flag in zero list");
        out.complete = line == "true";
        have_complete = true;
      }
      continue;
    }

    if (!have_header) {
      if (line != "t,multiplicity") throw FormatError("zero list header must be 't,multiplicity'");
      have_header = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw FormatError("zero list line " + std::to_string(line_no) + ": expected two fields");
    Zero z;
    z.t = parse_double(line.substr(0, comma), "ordinate", line_no);
    const double m = parse_double(line.substr(comma + 1), "multiplicity", line_no);
    if (m < 1 || m != std::floor(m) || m > 1e6)
      throw FormatError("zero list line " + std::to_string(line_no) + ": bad multiplicity");
    z.multiplicity = static_cast<int>(m);
    if (z.t < 0 || (!out.zeros.empty() && !(z.t > out.zeros.back().t)))
      throw FormatError("zero list line " + std::to_string(line_no) +
                        ": ordinates must be nonnegative and increasing");
    out.zeros.push_back(z);
  }
  if (!have_header) throw FormatError("zero list has no header");
  if (!have_t_max || !have_complete) throw FormatError("zero list lacks t_max or complete");
  if (!out.zeros.empty() && out.zeros.back().t > out.t_max)
    throw FormatError("zero list has ordinates above t_max");
  return out;
}

std::string report_to_json(const ExplicitFormulaReport& r, std::string_view config_json) {
  ordered_json j = json_head(config_json);
  j["zero_side"] = number(r.zero_side, kReportDigits);
  j["prime_side"] = number(r.prime_side, kReportDigits);
  j["arch_side"] = number(r.arch_side, kReportDigits);
  j["residual"] = number(r.residual, kReportDigits);
  j["tails"] = {{"zero", number(r.zero_tail, kReportDigits)},
                {"prime", number(r.prime_tail, kReportDigits)},
                {"quad", number(r.quad_error, kReportDigits)}};
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const ExplicitFormulaReport& r, std::string_view config_json) {
  const auto f = [](double v) { return format_significant(v, kReportDigits); };
  std::string out = csv_preamble(config_json);
  out += "zero_side,prime_side,arch_side,residual,tail_zero,tail_prime,tail_quad,pass\n";
  out += f(r.zero_side) + "," + f(r.prime_side) + "," + f(r.arch_side) + "," + f(r.residual) +
         "," + f(r.zero_tail) + "," + f(r.prime_tail) + "," + f(r.quad_error) + "," +
         (r.pass ? "true" : "false") + "\n";
  return out;
}

std::string equidist_to_csv(const EquidistReport& report, std::string_view config_json) {
  const auto f = [](double v) { return format_significant(v, kEquidistDigits); };
  std::string out = csv_preamble(config_json);
  out += "label,level,weight,log_qf,alpha,measure_value,target,error,tail\n";
  for (const EquidistRow& r : report.rows) {
    out += csv_field(r.label) + "," + std::to_string(r.level) + "," + std::to_string(r.weight) +
           "," + f(r.log_qf) + "," + f(r.alpha) + "," + f(r.measure_value) + "," + f(r.target) +
           "," + f(r.error) + "," + f(r.tail) + "\n";
  }
  return out;
}

std::string equidist_to_json(const EquidistReport& report, std::string_view config_json) {
  ordered_json j = json_head(config_json);
  j["fitted_C"] = number(report.fitted_C, kEquidistDigits);
  j["pass"] = report.pass;
  j["median_decreases"] = report.median_decreases;
  j["failing"] = report.failing;
  ordered_json rows = ordered_json::array();
  for (const EquidistRow& r : report.rows) {
    rows.push_back({{"label", r.label},
                    {"level", r.level},
                    {"weight", r.weight},
                    {"log_qf", number(r.log_qf, kEquidistDigits)},
                    {"alpha", number(r.alpha, kEquidistDigits)},
                    {"measure_value", number(r.measure_value, kEquidistDigits)},
                    {"target", number(r.target, kEquidistDigits)},
                    {"error", number(r.error, kEquidistDigits)},
                    {"tail", number(r.tail, kEquidistDigits)}});
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace mfzero
