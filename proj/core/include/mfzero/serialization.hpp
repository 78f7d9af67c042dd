#pragma once

#include <string>
#include <string_view>

#include "mfzero/explicit_formula.hpp"
#include "mfzero/lfunction.hpp"
#include "mfzero/zero_measure.hpp"

namespace mfzero {

inline constexpr int kOutputFormatVersion = 1;
inline constexpr int kZeroDigits = 12;
inline constexpr int kReportDigits = 15;
inline constexpr int kEquidistDigits = 12;

/// printf("%.*g"): `digits` significant digits, trailing zeros dropped.
std::string format_significant(double value, int digits);

/// Nearest double to the `digits`-digit decimal rendering of `value`.
double round_significant(double value, int digits);

// Every writer takes the effective run configuration as a JSON object text
// (empty means {}).  CSV files carry it, and the format version, on leading
// "# " comment lines; JSON files as the "format_version" and "config" keys.

/// Header `t,multiplicity`, 12 significant digits.  Comment lines also record
/// t_max, count_estimate and the completeness flag so the file can be read
/// back as a ZeroList.
std::string zeros_to_csv(const ZeroList& zeros, std::string_view config_json = {});
std::string zeros_to_json(const ZeroList& zeros, std::string_view config_json = {});
/// FormatError on anything unexpected.
ZeroList zeros_from_csv(std::string_view text);

/// Keys zero_side, prime_side, arch_side, residual, tails{zero, prime, quad},
/// pass; 15 significant digits.
std::string report_to_json(const ExplicitFormulaReport& report, std::string_view config_json = {});
std::string report_to_csv(const ExplicitFormulaReport& report, std::string_view config_json = {});

/// Header `label,level,weight,log_qf,alpha,measure_value,target,error,tail`,
/// rows by increasing log_qf, 12 significant digits.
std::string equidist_to_csv(const EquidistReport& report, std::string_view config_json = {});
std::string equidist_to_json(const EquidistReport& report, std::string_view config_json = {});

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view text);

}  // namespace mfzero
