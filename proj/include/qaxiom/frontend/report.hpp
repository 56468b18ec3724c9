#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace qaxiom::frontend {

using Json = nlohmann::json;  // object keys are kept sorted

/// Plain-text table with left-aligned, space-padded columns.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> headers);
  void add_row(std::vector<std::string> cells);
  std::string render() const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip decimal; non-finite values print as "nan" / "inf".
std::string format_number(double x);
std::string format_complex(std::complex<double> z);

/// Finite doubles as numbers, non-finite ones as null.
Json json_number(double x);
Json json_complex(std::complex<double> z);

/// `key: value` lines with the keys padded to a common width.
std::string key_values(const std::vector<std::pair<std::string, std::string>>& items);

/// Serialized JSON document followed by a newline (2-space indent).
std::string dump(const Json& j);

}  // namespace qaxiom::frontend
