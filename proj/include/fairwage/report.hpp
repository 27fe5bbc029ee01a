#pragma once

#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairwage/fairpay.hpp"

namespace fairwage::report {

enum class Format { markdown, csv, json };

/// "md", "csv" or "json". Throws ContractError otherwise.
Format parse_format(std::string_view name);
std::string_view format_name(Format format);

struct ReportDocument {
  /// Included rows in input order, followed by the excluded ones.
  std::vector<fairpay::PayAnalysisRow> rows;
  fairpay::AnalysisSummary summary;
  fairpay::Scenario scenario;
  std::set<std::string> exclude;
  Format format;
};

ReportDocument build_report(std::span<const fairpay::CompanyRecord> companies,
                            const fairpay::Scenario& scenario,
                            const std::set<std::string>& exclude, Format format);

/// Markdown mirrors the printed tables: one-decimal ratios, two-decimal z,
/// an Average row ahead of the excluded rows. CSV and JSON carry full
/// precision; CSV starts with the company columns so it re-parses as a
/// roster, and flags excluded rows instead of adding an Average row.
void render(const ReportDocument& doc, std::ostream& out);

/// The roster in company CSV schema, a JSON array, or a markdown table.
void render_companies(std::span<const fairpay::CompanyRecord> companies, Format format,
                      std::ostream& out);

}  // namespace fairwage::report
