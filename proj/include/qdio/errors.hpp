#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdio {

// Malformed text or JSON input. `offset` is the byte position of the
// offending character when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t offset = npos)
      : std::runtime_error(offset == npos ? what : what + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t offset_;
};

// A desk-scale guard was hit (dimension, policy count, expansion length).
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdio
