#include "qaxiom/frontend/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace qaxiom::frontend {

TextTable::TextTable(std::vector<std::string> headers) : headers_(std::move(headers)) {}

void TextTable::add_row(std::vector<std::string> cells) {
  cells.resize(headers_.size());
  rows_.push_back(std::move(cells));
}

std::string TextTable::render() const {
  std::vector<std::size_t> width(headers_.size());
  for (std::size_t c = 0; c < headers_.size(); ++c) {
    width[c] = headers_[c].size();
    for (const auto& r : rows_) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(headers_);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : rows_) line(r);
  return out.str();
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return format_number(z.real());
  const std::string im = format_number(std::abs(z.imag())) + "i";
  if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
  return format_number(z.real()) + (z.imag() < 0 ? " - " : " + ") + im;
}

Json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json json_complex(std::complex<double> z) {
  return Json{{"re", json_number(z.real())}, {"im", json_number(z.imag())}};
}

std::string key_values(const std::vector<std::pair<std::string, std::string>>& items) {
  std::size_t w = 0;
  for (const auto& [k, v] : items) w = std::max(w, k.size());
  std::string out;
  for (const auto& [k, v] : items) out += k + ":" + std::string(w - k.size() + 1, ' ') + v + '\n';
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qaxiom::frontend
