#ifndef TEXMT_ERRORS_H_
#define TEXMT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace texmt {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourcePosition {
  std::size_t offset = 0;
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  enum class Kind { kUnbalancedDelimiter, kUnmatchedEnvironment };

  ParseError(Kind kind, SourcePosition pos, const std::string& detail);

  Kind kind() const { return kind_; }
  const SourcePosition& position() const { return pos_; }
  // Environment name for kUnmatchedEnvironment, delimiter otherwise.
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  SourcePosition pos_;
  std::string detail_;
};

}  // namespace texmt

#endif  // TEXMT_ERRORS_H_
