#ifndef DCSKIT_ERROR_HPP
#define DCSKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dcs {

// Library error categories. These map 1:1 onto the C API status codes.
enum class Errc {
  invalid_argument = 1,  // bad value or violated precondition
  parse = 2,             // malformed JSON or format violation
  overflow = 3,          // exact machine-word integer range exceeded
  internal = 4,          // invariant violation inside the library
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace dcs

#endif
