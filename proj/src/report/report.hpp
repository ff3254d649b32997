#pragma once

#include <string>
#include <vector>

namespace popsym::report {

enum class Verdict { Pass, Fail, Unknown, DocumentedDiscrepancy };

std::string to_string(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::Fail;
  std::string detail;
  std::string anchor;  // stable claim anchor carried in the paper_ref field
};

struct Report {
  std::string section;
  std::vector<Check> checks;

  void add(std::string name, Verdict v, std::string detail, std::string anchor);
  bool has_failure(const std::vector<std::string>& expected_discrepancies) const;
};

enum class Format { Text, Csv, Json };

Format format_from_name(const std::string& name);

std::string render(const Report& r, Format f);
std::string render_many(const std::vector<Report>& rs, Format f);

// check names expected to carry a documented-discrepancy verdict (the known
// printed-text gaps); an unlisted discrepancy counts as a failure
const std::vector<std::string>& default_expectations();

}  // namespace popsym::report
