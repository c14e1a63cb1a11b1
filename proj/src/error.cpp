#include "biphoton/error.hpp"

namespace biphoton {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::config: return "configuration error";
    case ErrorKind::lookup: return "lookup error";
    case ErrorKind::contract: return "contract violation";
    case ErrorKind::unsupported: return "unsupported model";
    case ErrorKind::io: return "i/o error";
  }
  return "error";
}

}  // namespace biphoton
