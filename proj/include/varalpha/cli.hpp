#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "varalpha/analysis.hpp"
#include "varalpha/io.hpp"
#include "varalpha/numbers.hpp"
#include "varalpha/operators.hpp"
#include "varalpha/verify.hpp"

namespace varalpha::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, failure = 1, verify_failed = 2 };

namespace detail {

inline RepresentedNumber load_number(const std::string& file) {
  const std::filesystem::path p(file);
  return io::parse_number(io::read_json_file(p), p.parent_path());
}

inline NumeralSystem load_system(const std::string& file) { return io::parse_system(io::read_json_file(file)); }

inline ShiftVariant parse_variant(const std::string& name) {
  if (name == "digit") return ShiftVariant::digit_signed;
  if (name == "position") return ShiftVariant::position_signed;
  throw variant_error("variant must be \"digit\" or \"position\", got \"" + name + "\"");
}

} // namespace detail

/// Runs the command line; all output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact variable-alphabet numeral systems and their shift operators", "varalpha"};
  app.require_subcommand(1);

  std::string number_file, system_file, value_text, variant_name = "digit", suite;
  std::size_t m = 1, depth = 64, samples = 3, trials = 0;
  unsigned precision = 12;
  std::uint64_t seed = 0;
  std::vector<Digit> digits;
  verify::Bounds bounds;

  auto* eval_cmd = app.add_subcommand("eval", "Print the exact value and a decimal approximation");
  eval_cmd->add_option("number", number_file, "number document")->required();
  eval_cmd->add_option("--precision", precision, "decimal places of the approximation");

  auto* decode_cmd = app.add_subcommand("decode", "Digit stream of a rational value");
  decode_cmd->add_option("system", system_file, "system document")->required();
  decode_cmd->add_option("value", value_text, "p/q")->required();
  decode_cmd->add_option("--depth", depth, "maximum digits before giving up");

  auto* gshift_cmd = app.add_subcommand("gshift", "Generalized shift sigma_m");
  gshift_cmd->add_option("number", number_file, "number document")->required();
  gshift_cmd->add_option("-m", m, "index of the removed digit")->required();
  gshift_cmd->add_option("--variant", variant_name, "digit|position");

  auto* shift_cmd = app.add_subcommand("shift", "Shift sigma");
  shift_cmd->add_option("number", number_file, "number document")->required();

  auto* iter_cmd = app.add_subcommand("itershift", "Iterated shift sigma^m");
  iter_cmd->add_option("number", number_file, "number document")->required();
  iter_cmd->add_option("-m", m, "number of leading digits dropped")->required();

  auto* cyl_cmd = app.add_subcommand("cylinder", "Endpoints of a cylinder");
  cyl_cmd->add_option("system", system_file, "system document")->required();
  cyl_cmd->add_option("digits", digits, "leading digits");

  auto* seg_cmd = app.add_subcommand("segments", "Affine pieces of sigma_m as TSV");
  seg_cmd->add_option("system", system_file, "system document")->required();
  seg_cmd->add_option("-m", m, "shift index")->required();
  seg_cmd->add_option("--variant", variant_name, "digit|position");

  auto* graph_cmd = app.add_subcommand("graph", "Sampled graph of sigma_m as TSV");
  graph_cmd->add_option("system", system_file, "system document")->required();
  graph_cmd->add_option("-m", m, "shift index")->required();
  graph_cmd->add_option("--samples", samples, "interior samples per cylinder");
  graph_cmd->add_option("--variant", variant_name, "digit|position");

  auto* partner_cmd = app.add_subcommand("partner", "Dual representation of a quasi-rational point");
  partner_cmd->add_option("number", number_file, "number document")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run a seeded property suite");
  verify_cmd->add_option("suite", suite, "suite name or \"all\"")->required();
  verify_cmd->add_option("--trials", trials, "number of trials (default: per suite)");
  verify_cmd->add_option("--seed", seed, "64-bit unsigned seed");
  verify_cmd->add_option("--max-q", bounds.max_q, "largest base entry");
  verify_cmd->add_option("--max-prefix", bounds.max_prefix, "longest digit prefix");
  verify_cmd->add_option("--max-m", bounds.max_m, "largest shift index (0: suite default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return failure;
  }

  try {
    if (*eval_cmd) {
      const Rational v = eval(detail::load_number(number_file));
      out << v.str() << "\n" << v.to_decimal(precision) << "\n";
    } else if (*decode_cmd) {
      const auto s = detail::load_system(system_file);
      out << io::emit_number(decode(s, Rational::parse(value_text), depth)).dump(2) << "\n";
    } else if (*gshift_cmd) {
      const auto x = detail::load_number(number_file);
      const auto v = detail::parse_variant(variant_name);
      const auto image = generalized_shift(x, m, v);
      json doc = {{"image", io::emit_number(image)},
                  {"surgery_value", eval(image).str()},
                  {"closed_form_value", closed_form_value(x, m, v).str()}};
      out << doc.dump(2) << "\n";
    } else if (*shift_cmd || *iter_cmd) {
      const auto x = detail::load_number(number_file);
      const auto image = *shift_cmd ? shift(x) : iterate_shift(x, m);
      json doc = {{"image", io::emit_number(image)}, {"value", eval(image).str()}};
      out << doc.dump(2) << "\n";
    } else if (*cyl_cmd) {
      const auto s = detail::load_system(system_file);
      const Interval c = cylinder(s, digits);
      out << "lo\t" << c.lo.str() << "\nhi\t" << c.hi.str() << "\nwidth\t" << c.width().str() << "\n";
    } else if (*seg_cmd) {
      const auto s = detail::load_system(system_file);
      io::TsvTable table{{"lo", "hi", "slope", "intercept"}, {}};
      for (const auto& seg : segment_table(s, m, detail::parse_variant(variant_name)))
        table.rows.push_back({seg.interval.lo, seg.interval.hi, seg.map.slope, seg.map.intercept});
      out << io::emit_tsv(table);
    } else if (*graph_cmd) {
      const auto s = detail::load_system(system_file);
      io::TsvTable table{{"x", "y"}, {}};
      for (const auto& [x, y] : graph_samples(s, m, samples, detail::parse_variant(variant_name)))
        table.rows.push_back({x, y});
      out << io::emit_tsv(table);
    } else if (*partner_cmd) {
      const auto p = quasi_partner(detail::load_number(number_file));
      if (p) out << io::emit_number(*p).dump(2) << "\n";
      else out << "none\n";
    } else if (*verify_cmd) {
      std::vector<std::string> names;
      if (suite == "all") {
        for (const auto& entry : verify::suites()) names.push_back(entry.first);
      } else {
        names.push_back(suite);
      }
      bool all_ok = true;
      for (const auto& name : names) {
        const auto report = verify::run_suite({name, trials, seed, bounds});
        out << report.text();
        all_ok = all_ok && report.ok();
      }
      return all_ok ? ok : verify_failed;
    }
  } catch (const error& e) {
    err << "error: " << e.category() << ": " << e.what() << "\n";
    return failure;
  }
  return ok;
}

} // namespace varalpha::cli
