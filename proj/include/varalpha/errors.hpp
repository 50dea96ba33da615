#pragma once

#include <stdexcept>
#include <string>

namespace varalpha {

// Every failure raised by the library derives from varalpha::error. category()
// is a stable, machine-readable tag used by the CLI's `error:` line.
class error : public std::runtime_error {
public:
  error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

private:
  std::string category_;
};

struct domain_error : error {
  explicit domain_error(const std::string& w) : error("domain", w) {}
};

struct digit_range_error : error {
  explicit digit_range_error(const std::string& w) : error("digit-range", w) {}
};

struct alignment_error : error {
  explicit alignment_error(const std::string& w) : error("alignment", w) {}
};

struct range_error : error {
  explicit range_error(const std::string& w) : error("range", w) {}
};

struct inexact_decode_error : error {
  explicit inexact_decode_error(const std::string& w) : error("inexact-decode", w) {}
};

struct variant_error : error {
  explicit variant_error(const std::string& w) : error("variant", w) {}
};

struct validation_error : error {
  explicit validation_error(const std::string& w) : error("validation", w) {}
};

struct parse_error : error {
  explicit parse_error(const std::string& w) : error("parse", w) {}
};

} // namespace varalpha
