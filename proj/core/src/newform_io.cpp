#include "mfzero/newform_io.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mfzero {

namespace {

using json = nlohmann::json;

bool is_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

// Streaming reader for the newform schema.  Big coefficients arrive through
// number_float with their raw text, which we re-parse exactly.
class FormReader : public nlohmann::json_sax<json> {
 public:
  bool null() override {
    scalar_key("null");
    if (key_ != "sign") fail("null is only allowed for \"sign\"");
    sign_ = Sign::unknown;
    return true;
  }
  bool boolean(bool) override { fail("unexpected boolean for \"" + key_ + "\""); }
  bool number_integer(number_integer_t v) override { return integer(BigInt(v), std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return integer(BigInt(v), std::to_string(v)); }
  bool number_float(number_float_t, const string_t& raw) override {
    if (!is_integer_text(raw)) fail("non-integer number " + raw + " for \"" + key_ + "\"");
    return integer(BigInt(raw), raw);
  }
  bool string(string_t& v) override {
    scalar_key("string");
    if (key_ == "label") {
      form_.label = v;
    } else if (key_ == "coeff_normalization") {
      if (v != "arithmetic") fail("coeff_normalization must be \"arithmetic\"");
      seen_normalization_ = true;
    } else {
      fail("unexpected string for \"" + key_ + "\"");
    }
    return true;
  }
  bool binary(binary_t&) override { fail("binary values are not allowed"); }
  bool start_object(std::size_t) override {
    if (depth_ != 0) fail("nested objects are not allowed");
    ++depth_;
    return true;
  }
  bool key(string_t& k) override {
    static const std::set<std::string> known = {"format_version", "label", "level", "weight",
                                                "sign", "coeff_normalization", "an"};
    if (!known.count(k)) fail("unknown key \"" + k + "\"");
    if (!seen_.insert(k).second) fail("duplicate key \"" + k + "\"");
    key_ = k;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ != 1 || key_ != "an") fail("arrays are only allowed for \"an\"");
    in_array_ = true;
    ++depth_;
    return true;
  }
  bool end_array() override {
    in_array_ = false;
    --depth_;
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& e) override {
    throw FormatError("malformed JSON at byte " + std::to_string(pos) + ": " + e.what());
  }

  NewformData finish() {
    for (const char* k : {"format_version", "label", "level", "weight", "sign",
                          "coeff_normalization", "an"})
      if (!seen_.count(k)) throw FormatError(std::string("missing key \"") + k + "\"");
    if (form_.coeffs.empty()) throw FormatError("\"an\" must not be empty");
    if (form_.coeffs[0] != 1) throw FormatError("\"an\"[0] must be 1");
    form_.sign = sign_;
    return std::move(form_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw FormatError(msg); }

  void scalar_key(const char* what) {
    if (depth_ != 1 || in_array_) fail(std::string("unexpected ") + what + " inside \"an\"");
  }

  bool integer(BigInt v, const std::string& text) {
    if (in_array_) {
      form_.coeffs.push_back(std::move(v));
      return true;
    }
    scalar_key("number");
    if (key_ == "format_version") {
      if (v != kNewformFormatVersion) fail("unsupported format_version " + text);
    } else if (key_ == "level") {
      if (v < 1 || v > BigInt(std::numeric_limits<std::uint64_t>::max()))
        fail("level must be a positive integer");
      form_.level = static_cast<std::uint64_t>(v);
    } else if (key_ == "weight") {
      if (v < 2 || v > 1000 || v % 2 != 0) fail("weight must be an even integer >= 2");
      form_.weight = static_cast<int>(v);
    } else if (key_ == "sign") {
      if (v == 1) sign_ = Sign::plus;
      else if (v == -1) sign_ = Sign::minus;
      else fail("sign must be 1, -1 or null, got " + text);
    } else {
      fail("unexpected number for \"" + key_ + "\"");
    }
    return true;
  }

  NewformData form_;
  Sign sign_ = Sign::unknown;
  std::set<std::string> seen_;
  std::string key_;
  int depth_ = 0;
  bool in_array_ = false;
  bool seen_normalization_ = false;
};

}  // namespace

std::string serialize_form(const NewformData& form) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"format_version\": " << kNewformFormatVersion << ",\n";
  out << "  \"label\": " << json(form.label).dump() << ",\n";
  out << "  \"level\": " << form.level << ",\n";
  out << "  \"weight\": " << form.weight << ",\n";
  out << "  \"sign\": ";
  if (form.sign == Sign::unknown) out << "null";
  else out << to_int(form.sign);
  out << ",\n";
  out << "  \"coeff_normalization\": \"arithmetic\",\n";
  out << "  \"an\": [";
  for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << form.coeffs[i].str();
  }
  out << "\n  ]\n}\n";
  return out.str();
}

NewformData parse_form(std::string_view text) {
  FormReader reader;
  // strict=true rejects trailing content
  json::sax_parse(text.begin(), text.end(), &reader, nlohmann::detail::input_format_t::json, true);
  NewformData form = reader.finish();
  validate(form);
  return form;
}

NewformData load_form(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_form(buf.str());
  } catch (const InvariantError&) {
    throw;
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_form(const NewformData& form, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << serialize_form(form);
  if (!out) throw FormatError("write failed for " + path.string());
}

std::uint64_t form_fingerprint(const NewformData& form) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : serialize_form(form)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace mfzero
