#pragma once

#include <stdexcept>
#include <string>

namespace lrfield {

// All library failures carry a short stable code usable by scripts
// (the CLI prints "error: <code>: <message>").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

inline Error parameter_error(const std::string& msg) { return Error("parameter", msg); }
inline Error integrability_error(const std::string& msg) { return Error("integrability", msg); }
inline Error unsupported_model_error(const std::string& msg) { return Error("unsupported_model", msg); }
inline Error index_error(const std::string& msg) { return Error("index", msg); }
inline Error coverage_error(const std::string& msg) { return Error("coverage", msg); }
inline Error pairing_error(const std::string& msg) { return Error("pairing", msg); }
inline Error plan_error(const std::string& msg) { return Error("plan", msg); }
inline Error fit_error(const std::string& msg) { return Error("fit", msg); }
inline Error degenerate_sample_error(const std::string& msg) { return Error("degenerate_sample", msg); }
inline Error config_error(const std::string& msg) { return Error("config", msg); }
inline Error io_error(const std::string& msg) { return Error("io", msg); }

}  // namespace lrfield
