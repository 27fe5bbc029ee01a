#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairwage/fairpay.hpp"

namespace fairwage::ingestion {

/// The 2008 CEO pay dataset (35 analysed companies plus Berkshire Hathaway)
/// and the eight salary scenarios it is evaluated under.
struct DatasetBundle {
  std::vector<fairpay::CompanyRecord> companies;
  std::vector<fairpay::Scenario> scenarios;
  std::string provenance;
};

/// $6.55/hr federal minimum wage over 2,000 working hours.
inline constexpr double kMinimumWageSalary = 13100.0;
inline constexpr double kTypicalMinimumSalary = 25000.0;
inline constexpr double kScenarioMeans[] = {40000.0, 60000.0, 80000.0, 100000.0};
inline constexpr std::string_view kBerkshire = "Berkshire";

inline constexpr std::string_view kCompanyHeader = "name,ceo_total_pay_usd,employees";
inline constexpr std::string_view kWageHeader = "salary_usd";

const DatasetBundle& load_bundled_dataset();

std::optional<fairpay::CompanyRecord> find_company(const DatasetBundle& bundle,
                                                   std::string_view name);

/// A Scenario for (min, mean). Reuses the bundled label ("Scenario 2",
/// ...) when the pair is one of the bundled scenarios, otherwise "custom".
fairpay::Scenario make_scenario(double min_salary, double mean_salary);

/// Parses a company roster. The header must start with
/// `name,ceo_total_pay_usd,employees`; further columns are ignored. Pay is
/// in absolute dollars. LF or CRLF line endings; fields may be double-quoted.
///
/// Throws ParseError (with a 1-based line number) for malformed text, or
/// ValidationError naming the field for records that break an invariant.
/// Nothing is returned unless the whole input is valid.
std::vector<fairpay::CompanyRecord> parse_company_csv(std::istream& in);

/// Writes the company CSV schema; numbers use the shortest exact form.
void write_company_csv(std::ostream& out, std::span<const fairpay::CompanyRecord> records);

/// Parses a `salary_usd` file, one positive salary per row.
/// Throws ParseError with a line number for anything else.
fairpay::WageSample parse_wage_csv(std::istream& in, std::string source);

void write_wage_csv(std::ostream& out, std::span<const double> salaries);

/// Quotes a CSV field when it contains a comma, a quote or surrounding spaces.
std::string csv_escape(std::string_view field);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_exact(double value);

}  // namespace fairwage::ingestion
