#include "fairwage/ingestion.hpp"

#include <cstdint>
#include <string>

namespace fairwage::ingestion {

namespace {

struct Row {
  const char* name;
  std::int64_t ceo_pay_usd;  // printed in $ millions with one decimal
  std::int64_t employees;
};

// 2008 total CEO pay (salary plus bonus) and headcount estimates.
constexpr Row kRows[] = {
    {"Motorola", 104'400'000, 64000},
    {"Oracle", 84'600'000, 50000},
    {"Walt Disney", 51'100'000, 150000},
    {"American Express", 42'800'000, 30162},
    {"Citi Group", 38'200'000, 324850},
    {"Hewlett Packard", 34'000'000, 321000},
    {"News Corp", 30'100'000, 53000},
    {"Honeywell", 28'700'000, 128000},
    {"Proctor & Gamble", 25'600'000, 138000},
    {"Abbott", 25'100'000, 68697},
    {"Lockheed Martin", 22'900'000, 146000},
    {"eBay", 22'500'000, 7769},
    {"Anadarko Petroleum", 22'200'000, 4000},
    {"United Technologies", 22'000'000, 223100},
    {"Bristol Myers Squibb", 21'800'000, 42000},
    {"Hess", 21'300'000, 13300},
    {"Johnson & Johnson", 21'100'000, 118700},
    {"IBM", 21'000'000, 398455},
    {"Verizon", 19'900'000, 234971},
    {"Coca Cola", 19'600'000, 90500},
    {"Avon", 19'500'000, 42000},
    {"Cisco", 18'800'000, 32160},
    {"Qualcomm", 18'600'000, 11932},
    {"General Dynamics", 18'000'000, 83500},
    {"CVS", 17'400'000, 160000},
    {"Merck", 17'300'000, 58900},
    {"Prudential", 16'300'000, 49616},
    {"Deere", 16'200'000, 52022},
    {"AT&T", 15'000'000, 302660},
    {"ADM", 15'000'000, 27600},
    {"Pepsi", 14'900'000, 198000},
    {"Johnson Controls", 14'900'000, 140000},
    {"Pfizer", 14'800'000, 86600},
    {"Boeing", 14'800'000, 162200},
    {"Burlington", 14'600'000, 40000},
    {"Berkshire", 200'000, 246083},
};

DatasetBundle build() {
  DatasetBundle b;
  for (const auto& r : kRows) {
    b.companies.push_back({r.name, static_cast<double>(r.ceo_pay_usd), r.employees});
  }
  int index = 1;
  for (double mean : kScenarioMeans) {
    b.scenarios.emplace_back(kMinimumWageSalary, mean, "Scenario " + std::to_string(index));
    ++index;
  }
  index = 1;
  for (double mean : kScenarioMeans) {
    b.scenarios.emplace_back(kTypicalMinimumSalary, mean, "Scenario " + std::to_string(index));
    ++index;
  }
  b.provenance =
      "Top U.S. CEO pay packages for 2008 as published by the New York Times; employee "
      "counts are estimates gathered from company websites. Pay converted from $ millions "
      "to dollars. Berkshire Hathaway is a contrast case and is not part of the averages. "
      "One source table spells 'Johnson Comtrols'; the name is normalised to "
      "'Johnson Controls'.";
  return b;
}

}  // namespace

const DatasetBundle& load_bundled_dataset() {
  static const DatasetBundle bundle = build();
  return bundle;
}

std::optional<fairpay::CompanyRecord> find_company(const DatasetBundle& bundle,
                                                   std::string_view name) {
  for (const auto& c : bundle.companies) {
    if (c.name == name) return c;
  }
  return std::nullopt;
}

fairpay::Scenario make_scenario(double min_salary, double mean_salary) {
  for (const auto& s : load_bundled_dataset().scenarios) {
    if (s.min_salary() == min_salary && s.mean_salary() == mean_salary) return s;
  }
  return fairpay::Scenario(min_salary, mean_salary, "custom");
}

}  // namespace fairwage::ingestion
