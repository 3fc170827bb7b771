#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace inducedym {

// Every failure carries the module that raised it and a short code, so the CLI
// can turn it into a {code, module, message} object.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string code, const std::string& message)
      : std::runtime_error(message), module_(std::move(module)), code_(std::move(code)) {}
  const std::string& module() const noexcept { return module_; }
  const std::string& code() const noexcept { return code_; }

 private:
  std::string module_;
  std::string code_;
};

#define INDUCEDYM_ERROR_KIND(Name, code_str)                                      \
  class Name : public Error {                                                     \
   public:                                                                        \
    Name(std::string module, const std::string& message)                         \
        : Error(std::move(module), code_str, message) {}                          \
  };

INDUCEDYM_ERROR_KIND(DomainError, "domain")
INDUCEDYM_ERROR_KIND(BudgetError, "budget")
INDUCEDYM_ERROR_KIND(PrecisionError, "precision")
INDUCEDYM_ERROR_KIND(TailError, "tail")
INDUCEDYM_ERROR_KIND(AliasingError, "aliasing")
INDUCEDYM_ERROR_KIND(HomologyError, "homology")
INDUCEDYM_ERROR_KIND(InputError, "input")

#undef INDUCEDYM_ERROR_KIND

// small magnitudes stay readable in messages (std::to_string prints 0.000000)
inline std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace inducedym
