#ifndef AHS_CONFIG_HPP
#define AHS_CONFIG_HPP

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ahs/asympt.hpp"
#include "ahs/hilbert.hpp"
#include "ahs/rational.hpp"

namespace ahs {

// Process-wide run configuration.  The config file is plain key=value text;
// AHS_PRECISION_BITS in the environment overrides the default precision.
struct RunConfig {
  long precision_bits = 128;
  Rat epsilon = rat(1, 12);
  long b0_D_max = 200;
  long b0_delta_max = 20;
  enum class Sign { Auto, Paper, Gram } sign = Sign::Auto;
  unsigned long seed = 1;
  enum class Output { Text, Json } output = Output::Text;

  void validate() const {
    if (precision_bits < 16) throw std::domain_error("config: precision must be >= 16");
    if (!(epsilon > 0 && epsilon < rat(1, 6)))
      throw std::domain_error("config: epsilon must lie strictly inside ]0, 1/6[");
    if (b0_D_max < 1 || b0_delta_max < 1)
      throw std::domain_error("config: b0 search bounds must be positive");
  }

  AsymptConfig asympt() const { return AsymptConfig{epsilon, precision_bits}; }
  B0Search b0_search() const { return B0Search{b0_D_max, b0_delta_max, precision_bits + 64}; }

  SignConvention resolved_sign() const {
    switch (sign) {
      case Sign::Paper: return SignConvention::Paper;
      case Sign::Gram: return SignConvention::Gram;
      case Sign::Auto: break;
    }
    return resolve_sign_convention();
  }

  static RunConfig defaults_from_env() {
    RunConfig cfg;
    if (const char* p = std::getenv("AHS_PRECISION_BITS")) cfg.precision_bits = std::atol(p);
    return cfg;
  }

  void apply_line(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      if (s.find_first_not_of(" \t\r\n") != std::string::npos)
        throw std::invalid_argument("config: expected key=value, got '" + line + "'");
      return;
    }
    auto trim = [](std::string t) {
      size_t a = t.find_first_not_of(" \t\r\n");
      size_t b = t.find_last_not_of(" \t\r\n");
      return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key == "precision_bits") precision_bits = std::stol(val);
    else if (key == "epsilon") epsilon = parse_rat(val);
    else if (key == "b0_d_max") b0_D_max = std::stol(val);
    else if (key == "b0_delta_max") b0_delta_max = std::stol(val);
    else if (key == "seed") seed = std::stoul(val);
    else if (key == "sign_convention") {
      if (val == "auto") sign = Sign::Auto;
      else if (val == "paper") sign = Sign::Paper;
      else if (val == "gram") sign = Sign::Gram;
      else throw std::invalid_argument("config: bad sign_convention '" + val + "'");
    } else if (key == "output") {
      if (val == "text") output = Output::Text;
      else if (val == "json") output = Output::Json;
      else throw std::invalid_argument("config: bad output '" + val + "'");
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }

  static RunConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    RunConfig cfg = defaults_from_env();
    std::string line;
    while (std::getline(in, line)) cfg.apply_line(line);
    cfg.validate();
    return cfg;
  }
};

}  // namespace ahs

#endif  // AHS_CONFIG_HPP
