#include "fairwage/ingestion.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "fairwage/error.hpp"

namespace fairwage::ingestion {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

// Reads all lines, dropping a UTF-8 BOM, trailing CRs and blank lines.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (number == 1 && text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back({number, std::move(text)});
  }
  return lines;
}

std::vector<std::string> split_fields(const Line& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  const std::string& s = line.text;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < s.size() && s[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      if (!cur.empty() || was_quoted) throw ParseError(line.number, "stray quote in field");
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      if (was_quoted) throw ParseError(line.number, "text after closing quote");
      cur += ch;
    }
  }
  if (quoted) throw ParseError(line.number, "unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view text, std::size_t line, std::string_view field) {
  const auto t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw ParseError(line, "field '" + std::string(field) + "': not a number: '" +
                               std::string(text) + "'");
  }
  return value;
}

std::int64_t parse_integer(std::string_view text, std::size_t line, std::string_view field) {
  const auto t = trim(text);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParseError(line, "field '" + std::string(field) + "': not an integer: '" +
                               std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<fairpay::CompanyRecord> parse_company_csv(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(1, "missing header '" + std::string(kCompanyHeader) + "'");

  const auto header = split_fields(lines.front());
  static constexpr std::string_view expected[] = {"name", "ceo_total_pay_usd", "employees"};
  bool header_ok = header.size() >= 3;
  for (std::size_t i = 0; header_ok && i < 3; ++i) header_ok = trim(header[i]) == expected[i];
  if (!header_ok) {
    throw ParseError(lines.front().number,
                     "header must start with '" + std::string(kCompanyHeader) + "'");
  }
  if (lines.size() == 1) throw ParseError(lines.front().number + 1, "no company rows");

  std::vector<fairpay::CompanyRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw ParseError(line.number, "expected " + std::to_string(header.size()) +
                                        " fields, found " + std::to_string(fields.size()));
    }
    fairpay::CompanyRecord rec{std::string(trim(fields[0])),
                               parse_real(fields[1], line.number, expected[1]),
                               parse_integer(fields[2], line.number, expected[2])};
    if (rec.name.empty()) throw ValidationError(line.number, "name", "must not be empty");
    if (!(rec.ceo_total_pay > 0.0)) {
      throw ValidationError(line.number, "ceo_total_pay_usd", "must be positive");
    }
    if (rec.n_employees < 2) throw ValidationError(line.number, "employees", "must be at least 2");
    records.push_back(std::move(rec));
  }
  return records;
}

void write_company_csv(std::ostream& out, std::span<const fairpay::CompanyRecord> records) {
  out << kCompanyHeader << '\n';
  for (const auto& r : records) {
    out << csv_escape(r.name) << ',' << format_exact(r.ceo_total_pay) << ',' << r.n_employees
        << '\n';
  }
}

fairpay::WageSample parse_wage_csv(std::istream& in, std::string source) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(1, "missing header '" + std::string(kWageHeader) + "'");
  const auto header = split_fields(lines.front());
  if (header.size() != 1 || trim(header[0]) != kWageHeader) {
    throw ParseError(lines.front().number, "header must be '" + std::string(kWageHeader) + "'");
  }
  std::vector<double> salaries;
  salaries.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 1) throw ParseError(lines[i].number, "expected a single salary");
    const double s = parse_real(fields[0], lines[i].number, kWageHeader);
    if (!(s > 0.0)) throw ParseError(lines[i].number, "salary must be positive");
    salaries.push_back(s);
  }
  return fairpay::WageSample(std::move(salaries), std::move(source));
}

void write_wage_csv(std::ostream& out, std::span<const double> salaries) {
  out << kWageHeader << '\n';
  for (double s : salaries) out << format_exact(s) << '\n';
}

std::string csv_escape(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                            (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_exact(double value) { return fmt::format("{}", value); }

}  // namespace fairwage::ingestion
