#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "checks.hpp"
#include "kwayneg/canonical.hpp"
#include "kwayneg/catalog.hpp"
#include "kwayneg/negativity.hpp"

namespace kwayneg::cli {

enum class Format { kText, kJson, kCsv };

/// 12 significant digits, '.' as decimal separator, no negative zero.
std::string num(double x);

void write_reports(std::ostream& os, Format f, std::string_view source, const std::vector<NegativityReport>& reports,
                   const std::vector<std::size_t>& ks);

void write_table(std::ostream& os, Format f, double a, const std::vector<TableCell>& cells);

void write_checks(std::ostream& os, Format f, std::string_view source, const std::vector<CheckResult>& checks);

void write_nu(std::ostream& os, Format f, std::string_view source, const std::vector<NuProfile>& profiles,
              const std::vector<GhzProjection>& projections, const std::vector<std::size_t>& ks);

void write_canonical(std::ostream& os, Format f, std::string_view source, const CanonicalSearchResult& result,
                     const std::vector<NegativityReport>& reports, const std::vector<std::size_t>& ks);

}  // namespace kwayneg::cli
