#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "varalpha/errors.hpp"
#include "varalpha/numbers.hpp"
#include "varalpha/rational.hpp"
#include "varalpha/systems.hpp"

namespace varalpha::io {

using json = nlohmann::ordered_json;

// JSON system / number documents. Rationals travel as "p/q" strings.
//
//   {"kind": "cantor", "base": {"prefix": [2, 3], "cycle": [4]}, "signs": "none"}
//   {"kind": "qtilde", "columns": {"prefix": [], "cycle": [["1/4", "3/4"]]}, "signs": "odd"}
//   {"system": <system or path>, "digits": {"prefix": [1, 2], "tail": {"type": "cycle", "cycle": [9, 0]}}}
//
// signs is "none", "odd", "even", "all" or {"prefix": [bool...], "cycle": [bool...]}.

namespace detail {

inline const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw parse_error("expected an object at " + path);
  auto it = obj.find(key);
  if (it == obj.end()) throw parse_error("missing \"" + std::string(key) + "\" at " + path);
  return *it;
}

inline const json& array_at(const json& v, const std::string& path) {
  if (!v.is_array()) throw parse_error("expected an array at " + path);
  return v;
}

inline long integer_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw parse_error("expected an integer at " + path);
  return v.get<long>();
}

inline Rational rational_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw parse_error("expected a \"p/q\" string at " + path);
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const parse_error& e) {
    throw parse_error(std::string(e.what()) + " at " + path);
  }
}

inline std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

template <typename T, typename Read>
std::vector<T> read_array(const json& v, const std::string& path, Read read) {
  std::vector<T> out;
  const json& arr = array_at(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read(arr[i], idx(path, i)));
  return out;
}

inline SignPattern parse_signs(const json& v, const std::string& path) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "none") return SignPattern::none();
    if (name == "odd") return SignPattern::odd();
    if (name == "even") return SignPattern::even();
    if (name == "all") return SignPattern::all();
    throw parse_error("unknown sign pattern \"" + name + "\" at " + path);
  }
  auto read_bool = [](const json& b, const std::string& p) {
    if (!b.is_boolean()) throw parse_error("expected a boolean at " + p);
    return b.get<bool>();
  };
  auto pre = read_array<bool>(member(v, "prefix", path), path + ".prefix", read_bool);
  auto cyc = read_array<bool>(member(v, "cycle", path), path + ".cycle", read_bool);
  if (cyc.empty()) throw parse_error("empty cycle at " + path + ".cycle");
  return SignPattern(EventuallyPeriodicSeq<bool>(std::move(pre), std::move(cyc)));
}

inline json emit_signs(const SignPattern& s) {
  if (s == SignPattern::none()) return "none";
  if (s == SignPattern::odd()) return "odd";
  if (s == SignPattern::even()) return "even";
  if (s == SignPattern::all()) return "all";
  return {{"prefix", s.membership().prefix()}, {"cycle", s.membership().cycle()}};
}

inline json emit_column(const QTildeColumn& c) {
  json out = json::array();
  for (const auto& e : c.entries()) out.push_back(e.str());
  return out;
}

} // namespace detail

inline NumeralSystem parse_system(const json& doc, const std::string& path = "$") {
  using namespace detail;
  const json& kind = member(doc, "kind", path);
  if (!kind.is_string()) throw parse_error("expected a string at " + path + ".kind");
  SignPattern signs = doc.contains("signs") ? parse_signs(doc["signs"], path + ".signs") : SignPattern::none();

  std::optional<NumeralSystem> system;
  if (kind == "cantor") {
    const std::string bp = path + ".base";
    const json& base = member(doc, "base", path);
    auto read_base = [](const json& v, const std::string& p) {
      long q = integer_at(v, p);
      if (auto msg = varalpha::detail::check_base_entry(q)) throw validation_error(*msg + " at " + p);
      return q;
    };
    auto pre = read_array<Base>(member(base, "prefix", bp), bp + ".prefix", read_base);
    auto cyc = read_array<Base>(member(base, "cycle", bp), bp + ".cycle", read_base);
    if (cyc.empty()) throw parse_error("empty cycle at " + bp + ".cycle");
    system = NumeralSystem::cantor(EventuallyPeriodicSeq<Base>(std::move(pre), std::move(cyc)), std::move(signs));
  } else if (kind == "qtilde") {
    const std::string cp = path + ".columns";
    const json& cols = member(doc, "columns", path);
    auto read_column = [](const json& v, const std::string& p) {
      auto entries = read_array<Rational>(v, p, rational_at);
      if (entries.empty()) throw parse_error("empty column at " + p);
      QTildeColumn col(std::move(entries));
      std::vector<Violation> found;
      varalpha::detail::check_column(col, p, found);
      if (!found.empty()) throw validation_error(found.front().str());
      return col;
    };
    auto pre = read_array<QTildeColumn>(member(cols, "prefix", cp), cp + ".prefix", read_column);
    auto cyc = read_array<QTildeColumn>(member(cols, "cycle", cp), cp + ".cycle", read_column);
    if (cyc.empty()) throw parse_error("empty cycle at " + cp + ".cycle");
    system = NumeralSystem::qtilde(EventuallyPeriodicSeq<QTildeColumn>(std::move(pre), std::move(cyc)),
                                   std::move(signs));
  } else {
    throw parse_error("kind must be \"cantor\" or \"qtilde\" at " + path + ".kind");
  }
  if (auto report = validate(*system); !report.ok()) {
    const auto& v = report.violations.front();
    throw validation_error(v.message + " at " + path + v.path.substr(1));
  }
  return *system;
}

inline json emit_system(const NumeralSystem& s) {
  json out;
  if (s.is_cantor()) {
    out["kind"] = "cantor";
    out["base"] = {{"prefix", s.base().prefix()}, {"cycle", s.base().cycle()}};
  } else {
    out["kind"] = "qtilde";
    json pre = json::array(), cyc = json::array();
    for (const auto& c : s.columns().prefix()) pre.push_back(detail::emit_column(c));
    for (const auto& c : s.columns().cycle()) cyc.push_back(detail::emit_column(c));
    out["columns"] = {{"prefix", pre}, {"cycle", cyc}};
  }
  out["signs"] = detail::emit_signs(s.signs());
  return out;
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error("malformed JSON in " + path.string() + ": " + e.what());
  }
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
}

/// `system` may be an inline document or a path, resolved against base_dir.
inline RepresentedNumber parse_number(const json& doc, const std::filesystem::path& base_dir = {},
                                      const std::string& path = "$") {
  using namespace detail;
  const json& sys_doc = member(doc, "system", path);
  NumeralSystem system = sys_doc.is_string()
                             ? parse_system(read_json_file(base_dir / sys_doc.get<std::string>()), "$")
                             : parse_system(sys_doc, path + ".system");

  const std::string dp = path + ".digits";
  const json& digits = member(doc, "digits", path);
  auto read_digit = [](const json& v, const std::string& p) { return static_cast<Digit>(integer_at(v, p)); };
  auto pre = read_array<Digit>(member(digits, "prefix", dp), dp + ".prefix", read_digit);
  for (std::size_t i = 0; i < pre.size(); ++i)
    if (!system.in_alphabet(i + 1, pre[i]))
      throw digit_range_error("digit " + std::to_string(pre[i]) + " out of range at " + idx(dp + ".prefix", i));

  std::string type = "zeros";
  std::vector<Digit> cyc;
  if (digits.contains("tail")) {
    const std::string tp = dp + ".tail";
    const json& tail = digits["tail"];
    const json& t = member(tail, "type", tp);
    if (!t.is_string()) throw parse_error("expected a string at " + tp + ".type");
    type = t.get<std::string>();
    if (type == "cycle") {
      cyc = read_array<Digit>(member(tail, "cycle", tp), tp + ".cycle", read_digit);
      if (cyc.empty()) throw parse_error("empty cycle at " + tp + ".cycle");
      for (std::size_t j = 0; j < cyc.size(); ++j)
        if (!system.in_alphabet(pre.size() + 1 + j, cyc[j]))
          throw digit_range_error("digit " + std::to_string(cyc[j]) + " out of range at " + idx(tp + ".cycle", j));
    } else if (type != "zeros" && type != "max") {
      throw parse_error("tail type must be \"zeros\", \"max\" or \"cycle\" at " + tp + ".type");
    }
  }
  try {
    if (type == "zeros") return {system, DigitStream::zeros(std::move(pre))};
    if (type == "max") return {system, DigitStream::max_digits(std::move(pre))};
    return {system, DigitStream::cycle(std::move(pre), std::move(cyc))};
  } catch (const alignment_error& e) {
    throw alignment_error(std::string(e.what()) + " at " + dp + ".tail");
  }
}

inline json emit_number(const RepresentedNumber& num) {
  json tail;
  switch (num.digits().tail_kind()) {
    case TailKind::zeros: tail = {{"type", "zeros"}}; break;
    case TailKind::max_digits: tail = {{"type", "max"}}; break;
    case TailKind::cycle: tail = {{"type", "cycle"}, {"cycle", num.digits().cycle()}}; break;
  }
  return {{"system", emit_system(num.system())}, {"digits", {{"prefix", num.digits().prefix()}, {"tail", tail}}}};
}

/// Tab-separated table of exact values: a header row, then one row per
/// record with every column as "p/q" followed by the decimal approximations
/// (suffixed "_approx" in the header).
struct TsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Rational>> rows;
};

inline std::string emit_tsv(const TsvTable& table, unsigned places = 12) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "\t" : "") << cells[i];
    os << '\n';
  };
  std::vector<std::string> header = table.columns;
  for (const auto& c : table.columns) header.push_back(c + "_approx");
  line(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    for (const auto& v : row) cells.push_back(v.str());
    for (const auto& v : row) cells.push_back(v.to_decimal(places));
    line(cells);
  }
  return os.str();
}

} // namespace varalpha::io
