#include "hsmosaic/io/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "hsmosaic/error.hpp"

namespace hsmosaic::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail(const std::string& origin, int line_no, const std::string& what) {
  throw FormatError(origin + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view text, const std::string& origin, int line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.begin(), text.end(), value);
  if (ec != std::errc{} || ptr != text.end()) {
    fail(origin, line_no, "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, const std::string& origin, int line_no) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.begin(), text.end(), value);
  if (ec != std::errc{} || ptr != text.end()) {
    fail(origin, line_no, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void ToolConfig::validate() const {
  reg.validate();
  solver.validate();
  if (!(peak > 0.0)) throw ValidationError("peak must be positive");
}

ToolConfig load_config(std::istream& in, const std::string& origin) {
  ToolConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body{line};
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;

    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail(origin, line_no, "expected 'key = value'");
    const std::string_view key = trim(body.substr(0, eq));
    const std::string_view value = trim(body.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "missing key before '='");
    if (value.empty()) fail(origin, line_no, "missing value after '='");

    if (key == "lambda_tik") {
      config.reg.lambda_tik = parse_double(value, origin, line_no);
    } else if (key == "lambda_tv") {
      config.reg.lambda_tv = parse_double(value, origin, line_no);
    } else if (key == "lambda_corr") {
      config.reg.lambda_corr = parse_double(value, origin, line_no);
    } else if (key == "tau") {
      config.reg.tau = parse_double(value, origin, line_no);
    } else if (key == "eps_var") {
      config.reg.eps_var = parse_double(value, origin, line_no);
    } else if (key == "eps_tv") {
      config.reg.eps_tv = parse_double(value, origin, line_no);
    } else if (key == "max_iters") {
      config.solver.max_iters = parse_int(value, origin, line_no);
    } else if (key == "step_size") {
      config.solver.step_size = parse_double(value, origin, line_no);
    } else if (key == "beta1") {
      config.solver.beta1 = parse_double(value, origin, line_no);
    } else if (key == "beta2") {
      config.solver.beta2 = parse_double(value, origin, line_no);
    } else if (key == "eps_opt") {
      config.solver.eps = parse_double(value, origin, line_no);
    } else if (key == "stop_tol") {
      config.solver.stop_tol = parse_double(value, origin, line_no);
    } else if (key == "log_every") {
      config.solver.log_every = parse_int(value, origin, line_no);
    } else if (key == "peak") {
      config.peak = parse_double(value, origin, line_no);
    } else {
      fail(origin, line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  config.validate();
  return config;
}

ToolConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config '" + path.string() + "'");
  return load_config(in, path.string());
}

}  // namespace hsmosaic::io
