#include "fairwage/report.hpp"

#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "fairwage/bounds.hpp"
#include "fairwage/error.hpp"
#include "fairwage/ingestion.hpp"

namespace fairwage::report {

using fairpay::PayAnalysisRow;
using ingestion::csv_escape;
using ingestion::format_exact;
using nlohmann::ordered_json;

namespace {

bool is_excluded(const ReportDocument& doc, const PayAnalysisRow& row) {
  return doc.exclude.contains(row.company);
}

// The a-priori Chebyshev estimate for the row's company, taking the payroll
// to be N times the scenario mean. Shown next to the calibrated sigma.
double chebyshev_sigma(const ReportDocument& doc, const PayAnalysisRow& row) {
  const bounds::OrgFacts facts(row.n_employees,
                               static_cast<double>(row.n_employees) * doc.scenario.mean_salary(),
                               doc.scenario.min_salary());
  return bounds::chebyshev_sigma(bounds::value_range(facts)).sigma_est;
}

void render_markdown(const ReportDocument& doc, std::ostream& out) {
  const auto& sc = doc.scenario;
  out << fmt::format("Minimum salary ${}, mean salary ${} ({}), sigma {:.4f}\n\n",
                     format_exact(sc.min_salary()), format_exact(sc.mean_salary()), sc.label(),
                     fairpay::calibrate_sigma(sc));
  out << "| Company | CEO pay ($M) | Employees (N) | Tail area (1/N) | z | Actual ratio | "
         "Ideal ratio | Excess factor |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|\n";
  const auto row_line = [&](const PayAnalysisRow& r) {
    out << fmt::format("| {} | {:.1f} | {} | {:.8f} | {:.2f} | {:.0f} | {:.1f} | {:.1f} |\n",
                       r.company, r.ceo_total_pay / 1e6, r.n_employees, r.tail_area.value(),
                       r.z_ceo, r.actual_ratio, r.ideal_ratio, r.excess_factor);
  };
  std::size_t i = 0;
  for (; i < doc.rows.size() && !is_excluded(doc, doc.rows[i]); ++i) row_line(doc.rows[i]);
  const auto& s = doc.summary;
  out << fmt::format("| Average | {:.1f} |  |  |  | {:.0f} | {:.1f} | {:.1f} |\n",
                     s.mean_ceo_total_pay / 1e6, s.mean_actual_ratio, s.mean_ideal_ratio,
                     s.mean_excess_factor);
  for (; i < doc.rows.size(); ++i) row_line(doc.rows[i]);
  out << fmt::format("\nAverage actual ratio / average ideal ratio: {:.1f} over {} companies\n",
                     s.excess_of_means(), s.included_count);
}

void render_csv(const ReportDocument& doc, std::ostream& out) {
  out << ingestion::kCompanyHeader
      << ",tail_area,z_ceo,sigma,chebyshev_sigma,ideal_ceo_salary,ideal_ratio,actual_ratio,excess_factor,"
         "excluded\n";
  for (const auto& r : doc.rows) {
    out << csv_escape(r.company) << ',' << format_exact(r.ceo_total_pay) << ',' << r.n_employees
        << ',' << format_exact(r.tail_area.value()) << ',' << format_exact(r.z_ceo) << ','
        << format_exact(r.sigma) << ',' << format_exact(chebyshev_sigma(doc, r)) << ','
        << format_exact(r.ideal_ceo_salary) << ','
        << format_exact(r.ideal_ratio) << ',' << format_exact(r.actual_ratio) << ','
        << format_exact(r.excess_factor) << ',' << (is_excluded(doc, r) ? 1 : 0) << '\n';
  }
}

void render_json(const ReportDocument& doc, std::ostream& out) {
  ordered_json j;
  j["scenario"] = {{"label", doc.scenario.label()},
                   {"min_salary", doc.scenario.min_salary()},
                   {"mean_salary", doc.scenario.mean_salary()},
                   {"sigma", fairpay::calibrate_sigma(doc.scenario)}};
  j["exclude"] = ordered_json::array();
  for (const auto& name : doc.exclude) j["exclude"].push_back(name);
  j["rows"] = ordered_json::array();
  for (const auto& r : doc.rows) {
    j["rows"].push_back({{"company", r.company},
                         {"ceo_total_pay_usd", r.ceo_total_pay},
                         {"employees", r.n_employees},
                         {"tail_area", r.tail_area.value()},
                         {"z_ceo", r.z_ceo},
                         {"sigma", r.sigma},
                         {"chebyshev_sigma", chebyshev_sigma(doc, r)},
                         {"ideal_ceo_salary", r.ideal_ceo_salary},
                         {"ideal_ratio", r.ideal_ratio},
                         {"actual_ratio", r.actual_ratio},
                         {"excess_factor", r.excess_factor},
                         {"excluded", is_excluded(doc, r)}});
  }
  const auto& s = doc.summary;
  j["summary"] = {{"included_count", s.included_count},
                  {"mean_ceo_total_pay_usd", s.mean_ceo_total_pay},
                  {"mean_actual_ratio", s.mean_actual_ratio},
                  {"mean_ideal_ratio", s.mean_ideal_ratio},
                  {"mean_excess_factor", s.mean_excess_factor},
                  {"excess_of_means", s.excess_of_means()}};
  out << j.dump(2) << '\n';
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "md" || name == "markdown") return Format::markdown;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ContractError("unknown format '" + std::string(name) + "' (expected md, csv or json)");
}

std::string_view format_name(Format format) {
  switch (format) {
    case Format::markdown: return "md";
    case Format::csv: return "csv";
    case Format::json: return "json";
  }
  return "md";
}

ReportDocument build_report(std::span<const fairpay::CompanyRecord> companies,
                            const fairpay::Scenario& scenario,
                            const std::set<std::string>& exclude, Format format) {
  std::vector<PayAnalysisRow> included;
  std::vector<PayAnalysisRow> excluded;
  for (const auto& c : companies) {
    auto row = fairpay::pay_ratios(c, scenario);
    (exclude.contains(c.name) ? excluded : included).push_back(std::move(row));
  }
  const auto summary = fairpay::aggregate_analysis(included);
  included.insert(included.end(), excluded.begin(), excluded.end());
  return ReportDocument{std::move(included), summary, scenario, exclude, format};
}

void render(const ReportDocument& doc, std::ostream& out) {
  switch (doc.format) {
    case Format::markdown: render_markdown(doc, out); break;
    case Format::csv: render_csv(doc, out); break;
    case Format::json: render_json(doc, out); break;
  }
}

void render_companies(std::span<const fairpay::CompanyRecord> companies, Format format,
                      std::ostream& out) {
  switch (format) {
    case Format::csv: ingestion::write_company_csv(out, companies); break;
    case Format::json: {
      ordered_json j = ordered_json::array();
      for (const auto& c : companies) {
        j.push_back({{"name", c.name},
                     {"ceo_total_pay_usd", c.ceo_total_pay},
                     {"employees", c.n_employees}});
      }
      out << j.dump(2) << '\n';
      break;
    }
    case Format::markdown:
      out << "| Company | CEO pay ($M) | Employees (N) |\n|---|---:|---:|\n";
      for (const auto& c : companies) {
        out << fmt::format("| {} | {:.1f} | {} |\n", c.name, c.ceo_total_pay / 1e6,
                           c.n_employees);
      }
      break;
  }
}

}  // namespace fairwage::report
