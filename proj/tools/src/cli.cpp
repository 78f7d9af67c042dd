#include "mfzero_cli/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mfzero/errors.hpp"
#include "mfzero/explicit_formula.hpp"
#include "mfzero/lfunction.hpp"
#include "mfzero/newform_data.hpp"
#include "mfzero/newform_io.hpp"
#include "mfzero/serialization.hpp"
#include "mfzero/zero_measure.hpp"

namespace fs = std::filesystem;

namespace mfzero::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  // global
  int precision = 30;
  std::string out;
  std::string format;  // empty: the command's default
  unsigned threads = 1;
  bool no_cache = false;
  // coeffs
  std::string builtin;
  int weight = 0;
  std::string a_invariants;
  std::uint64_t level = 0;
  std::size_t terms = 0;
  // zeros / explicit-check / equidist
  std::string form;
  std::string forms_dir;
  double t_max = 40;
  std::string test_fn = "gaussian";
  double sigma = 1;
  double a = 1;
  std::size_t afe_terms = 0;
  std::uint64_t sieve_limit = 100'000'000;
};

// Raised for conditions that map straight to an exit code.
struct Exit {
  int code;
  std::string message;
};

class Command {
 public:
  Command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err) {}

  int coeffs();
  int zeros();
  int explicit_check();
  int equidist();

 private:
  Precision precision() const {
    Precision p;
    p.working_digits = cfg_.precision;
    return p;
  }
  EngineOptions engine() const {
    EngineOptions e;
    e.precision = precision();
    e.fixed_terms = cfg_.afe_terms;
    return e;
  }
  ExplicitFormulaOptions formula() const {
    ExplicitFormulaOptions f;
    f.precision = precision();
    f.sieve_limit = cfg_.sieve_limit;
    f.threads = cfg_.threads;
    return f;
  }
  std::string format_or(const char* fallback) const {
    return cfg_.format.empty() ? fallback : cfg_.format;
  }

  TestFunction test_function() const;
  NewformData load(const fs::path& path) const;
  ZeroList obtain_zeros(const NewformData& form, const fs::path& form_path) const;
  ordered_json config(const char* command) const;
  void emit(const std::string& content) const;

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kExitUsage, "cannot read " + path.string()};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  file.close();
  if (!file) throw Error("cannot write " + path.string());
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

AInvariants parse_invariants(const std::string& text) {
  AInvariants a{};
  std::stringstream in(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    if (i >= a.size()) throw Exit{kExitUsage, "--a-invariants takes exactly five integers"};
    try {
      std::size_t used = 0;
      a[i] = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Exit{kExitUsage, "--a-invariants: '" + item + "' is not an integer"};
    }
    ++i;
  }
  if (i != a.size()) throw Exit{kExitUsage, "--a-invariants takes exactly five integers"};
  return a;
}

ordered_json Command::config(const char* command) const {
  ordered_json j;
  j["command"] = command;
  j["precision"] = cfg_.precision;
  j["format"] = format_or(std::string(command) == "explicit-check" ? "json" : "csv");
  if (!cfg_.form.empty()) j["form"] = cfg_.form;
  if (!cfg_.forms_dir.empty()) j["forms"] = cfg_.forms_dir;
  j["t_max"] = round_significant(cfg_.t_max, kZeroDigits);
  if (std::string(command) != "zeros") {
    j["test_fn"] = test_function().describe();
    j["sieve_limit"] = cfg_.sieve_limit;
  }
  j["afe_terms"] = cfg_.afe_terms;
  return j;
}

void Command::emit(const std::string& content) const {
  if (cfg_.out.empty())
    out_ << content;
  else
    write_text(cfg_.out, content);
}

TestFunction Command::test_function() const {
  if (cfg_.test_fn == "gaussian") return make_gaussian(cfg_.sigma);
  return make_sech(cfg_.a);
}

NewformData Command::load(const fs::path& path) const {
  try {
    return parse_form(read_text(path));
  } catch (const FormatError& e) {
    throw Exit{kExitUsage, path.string() + ": " + e.what()};
  } catch (const InvariantError& e) {
    throw Exit{kExitUsage, path.string() + ": " + e.what()};
  } catch (const DomainError& e) {
    throw Exit{kExitUsage, path.string() + ": " + e.what()};
  }
}

// Zero lists are cached next to the form file, keyed by the form's
// fingerprint, t_max, working precision and AFE override.  Freshly computed
// lists go through the same 12-digit text as cached ones so that both paths
// give identical results.
ZeroList Command::obtain_zeros(const NewformData& form, const fs::path& form_path) const {
  std::string name = form_path.filename().string() + ".zeros-" + hex64(form_fingerprint(form)) +
                     "-t" + format_significant(cfg_.t_max, kZeroDigits) + "-p" +
                     std::to_string(cfg_.precision);
  if (cfg_.afe_terms != 0) name += "-m" + std::to_string(cfg_.afe_terms);
  const fs::path cache = form_path.parent_path() / (name + ".csv");

  if (!cfg_.no_cache && fs::exists(cache)) {
    try {
      ZeroList cached = zeros_from_csv(read_text(cache));
      err_ << "using cached zeros " << cache.string() << "\n";
      return cached;
    } catch (const FormatError& e) {
      err_ << "ignoring unreadable zero cache " << cache.string() << ": " << e.what() << "\n";
    }
  }

  NewformData signed_form = form;
  if (signed_form.sign == Sign::unknown) {
    const SignDetection s = detect_sign(form, engine());
    signed_form.sign = s.sign;
    err_ << form.label << ": detected root number " << to_int(s.sign) << "\n";
  }
  ZeroSearchOptions search;
  search.threads = cfg_.threads;
  const ZeroList found = find_zeros(LFunction(signed_form, engine()), cfg_.t_max, search);
  if (!found.diagnostic.empty()) err_ << form.label << ": " << found.diagnostic << "\n";

  const std::string text = zeros_to_csv(found);
  if (!cfg_.no_cache) {
    try {
      write_text(cache, text);
    } catch (const Error& e) {
      err_ << "warning: " << e.what() << "\n";
    }
  }
  return zeros_from_csv(text);
}

int Command::coeffs() {
  if (format_or("json") != "json") throw Exit{kExitUsage, "coeffs writes newform JSON only"};
  if (cfg_.out.empty()) throw Exit{kExitUsage, "coeffs needs --out"};
  if (cfg_.terms < 1) throw Exit{kExitUsage, "--terms must be >= 1"};

  NewformData form;
  try {
    if (cfg_.builtin == "delta") {
      form = gen_delta(cfg_.terms);
    } else if (cfg_.builtin == "level1") {
      if (!is_supported_level1_weight(cfg_.weight)) {
        throw Exit{kExitUsage, "--weight " + std::to_string(cfg_.weight) +
                                   " unsupported; level 1 weights are 12, 16, 18, 20, 22, 26"};
      }
      form = gen_level1_eigenform(cfg_.weight, cfg_.terms);
    } else {
      if (cfg_.a_invariants.empty() || cfg_.level == 0)
        throw Exit{kExitUsage, "elliptic needs --a-invariants and --level"};
      form = gen_elliptic(parse_invariants(cfg_.a_invariants), cfg_.level, cfg_.terms);
    }
  } catch (const GenerationError& e) {
    throw Exit{kExitGeneration, e.what()};
  } catch (const InvariantError& e) {
    throw Exit{kExitGeneration, e.what()};
  } catch (const BudgetError& e) {
    throw Exit{kExitGeneration, e.what()};
  }
  write_text(cfg_.out, serialize_form(form));

  ordered_json summary;
  summary["label"] = form.label;
  summary["terms"] = form.terms();
  summary["sign"] = form.sign == Sign::unknown ? ordered_json(nullptr) : ordered_json(to_int(form.sign));
  out_ << summary.dump() << "\n";
  return kExitOk;
}

int Command::zeros() {
  const std::string fmt = format_or("csv");
  const NewformData form = load(cfg_.form);
  const ZeroList zeros = obtain_zeros(form, cfg_.form);
  const std::string cfg = config("zeros").dump();
  emit(fmt == "json" ? zeros_to_json(zeros, cfg) : zeros_to_csv(zeros, cfg));

  ordered_json summary;
  summary["count"] = zeros.found();
  summary["count_estimate"] = round_significant(zeros.count_estimate, kZeroDigits);
  summary["complete"] = zeros.complete;
  (cfg_.out.empty() ? err_ : out_) << summary.dump() << "\n";
  if (!zeros.complete) {
    err_ << form.label << ": zero list incomplete\n";
    return kExitIncomplete;
  }
  return kExitOk;
}

int Command::explicit_check() {
  const std::string fmt = format_or("json");
  const TestFunction tf = test_function();
  const NewformData form = load(cfg_.form);
  const ZeroList zeros = obtain_zeros(form, cfg_.form);
  if (!zeros.complete)
    throw Exit{kExitIncomplete, form.label + ": zero list incomplete; " + zeros.diagnostic};

  const ExplicitFormulaReport report = verify(form, tf, zeros, formula());
  const std::string cfg = config("explicit-check").dump();
  emit(fmt == "csv" ? report_to_csv(report, cfg) : report_to_json(report, cfg));

  ordered_json summary;
  summary["residual"] = round_significant(report.residual, kReportDigits);
  summary["pass"] = report.pass;
  (cfg_.out.empty() ? err_ : out_) << summary.dump() << "\n";
  if (!report.pass) {
    err_ << form.label << ": residual " << report.residual << " exceeds the tail budget "
         << report.zero_tail + report.prime_tail + report.quad_error + kResidualSlack << "\n";
    return kExitResidual;
  }
  return kExitOk;
}

int Command::equidist() {
  const std::string fmt = format_or("csv");
  const TestFunction tf = test_function();
  const fs::path dir = cfg_.forms_dir;
  if (!fs::is_directory(dir)) throw Exit{kExitUsage, "--forms must be a directory"};

  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw Exit{kExitUsage, "no newform files (*.json) in " + dir.string()};

  std::vector<EquidistRow> rows;
  for (const fs::path& path : paths) {
    const NewformData form = load(path);
    const ZeroList zeros = obtain_zeros(form, path);
    if (!zeros.complete)
      throw Exit{kExitIncomplete, form.label + ": zero list incomplete; " + zeros.diagnostic};
    rows.push_back(equidist_row(form, zeros, tf, formula()));
  }
  const EquidistReport report = assess_family(std::move(rows));
  const std::string cfg = config("equidist").dump();
  emit(fmt == "json" ? equidist_to_json(report, cfg) : equidist_to_csv(report, cfg));

  ordered_json summary;
  summary["forms"] = report.rows.size();
  summary["fitted_C"] = round_significant(report.fitted_C, kEquidistDigits);
  summary["pass"] = report.pass;
  (cfg_.out.empty() ? err_ : out_) << summary.dump() << "\n";
  if (!report.pass) {
    for (const std::string& label : report.failing)
      err_ << "failing: " << label << " (error above 2C/log q_f)\n";
    if (!report.median_decreases)
      err_ << "failing: median error of the upper half does not drop below the lower half\n";
    return kExitEquidist;
  }
  return kExitOk;
}

void add_test_fn_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--test-fn", cfg.test_fn, "Test function family")
      ->check(CLI::IsMember({"gaussian", "sech"}))
      ->capture_default_str();
  cmd->add_option("--sigma", cfg.sigma, "Gaussian width")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--a", cfg.a, "Sech scale, 0 < a < 2")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--sieve-limit", cfg.sieve_limit, "Largest prime-side sieve bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_tmax_option(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tmax", cfg.t_max, "Zero scan ceiling")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--afe-terms", cfg.afe_terms, "Fixed AFE length (0: automatic)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Zeros, explicit formula and zero statistics of modular form L-functions", "mfzero"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--precision", cfg.precision, "Working precision in decimal digits (15-33)")
      ->check(CLI::Range(15, 33))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default: standard output)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--no-cache", cfg.no_cache, "Neither read nor write zero-list caches");

  CLI::App* coeffs = app.add_subcommand("coeffs", "Write a builtin newform file");
  coeffs->add_option("--builtin", cfg.builtin, "delta | level1 | elliptic")
      ->required()
      ->check(CLI::IsMember({"delta", "level1", "elliptic"}));
  coeffs->add_option("--weight", cfg.weight, "Weight for level1");
  coeffs->add_option("--a-invariants", cfg.a_invariants, "A1,A2,A3,A4,A6 for elliptic");
  coeffs->add_option("--level", cfg.level, "Conductor for elliptic")->check(CLI::PositiveNumber);
  coeffs->add_option("--terms", cfg.terms, "Number of coefficients")->required();

  CLI::App* zeros = app.add_subcommand("zeros", "Critical-line zeros up to --tmax");
  zeros->add_option("--form", cfg.form, "Newform file")->required();
  add_tmax_option(zeros, cfg);

  CLI::App* check = app.add_subcommand("explicit-check", "Check the explicit formula");
  check->add_option("--form", cfg.form, "Newform file")->required();
  add_tmax_option(check, cfg);
  add_test_fn_options(check, cfg);

  CLI::App* equi = app.add_subcommand("equidist", "Equidistribution trend over a family");
  equi->add_option("--forms", cfg.forms_dir, "Directory of newform files")->required();
  add_tmax_option(equi, cfg);
  add_test_fn_options(equi, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Command command(cfg, out, err);
  try {
    if (cfg.test_fn == "sech" && !(cfg.a < 2))
      throw Exit{kExitUsage, "sech needs a < 2 (slower decay breaks the explicit formula)"};
    if (coeffs->parsed()) return command.coeffs();
    if (zeros->parsed()) return command.zeros();
    if (check->parsed()) return command.explicit_check();
    return command.equidist();
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InsufficientTermsError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace mfzero::cli
