#ifndef DRFGP_ERRORS_HPP
#define DRFGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drfgp {

enum class ErrorCode {
  InvalidSpec = 1,  // bad hyperparameters or config values
  Shape,            // dimension / length mismatch
  Numerical,        // lost positive definiteness, degenerate weights
  Graph,            // disconnected graph, generation failure
  Parse,            // unparseable file content
  Schema,           // missing column, unknown key
  Io,               // file open / write failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidSpecError : Error {
  explicit InvalidSpecError(const std::string& m) : Error(ErrorCode::InvalidSpec, m) {}
};
struct ShapeError : Error {
  explicit ShapeError(const std::string& m) : Error(ErrorCode::Shape, m) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& m) : Error(ErrorCode::Numerical, m) {}
};
struct GraphError : Error {
  explicit GraphError(const std::string& m) : Error(ErrorCode::Graph, m) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorCode::Parse, m) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& m) : Error(ErrorCode::Schema, m) {}
};
struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorCode::Io, m) {}
};

}  // namespace drfgp

#endif  // DRFGP_ERRORS_HPP
