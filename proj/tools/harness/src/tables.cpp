#include "harness/tables.hpp"

#include <stdexcept>

#include "ev/ebh.hpp"
#include "ev/eclass.hpp"
#include "ev/merging.hpp"
#include "ev/thresholds.hpp"

namespace harness {

namespace {

const double kLevels[] = {0.001, 0.01, 0.02, 0.05, 0.1, 0.2};

}  // namespace

CsvTable make_table_thresholds() {
  CsvTable t;
  t.header = {"classes", "0.001", "0.01", "0.02", "0.05", "0.1", "0.2"};
  // Classes sharing a threshold formula on these levels share a row.
  const struct {
    const char* label;
    ev::EClass cls;
  } groups[] = {
      {"E0+LS", ev::EClass::E0},     {"D+U", ev::EClass::D},
      {"DGT1", ev::EClass::DGT1},    {"LCD+LCS", ev::EClass::LCS},
      {"LUS+LD", ev::EClass::LUS},   {"LDGT0", ev::EClass::LDGT0},
      {"LN", ev::EClass::LN},
  };
  for (const auto& g : groups) {
    std::vector<std::string> row{g.label};
    for (double alpha : kLevels) {
      row.push_back(format_number(ev::threshold(g.cls, alpha).value));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable make_table_boosting() {
  CsvTable t;
  t.header = {"alpha", "c1_ad", "c2_ad", "c1_pr", "c2_pr"};
  for (double alpha : {0.01, 0.02, 0.05, 0.10}) {
    const ev::BoostResult ad = ev::boost_lcs_ad(alpha);
    const ev::BoostResult pr = ev::boost_lcs_pr(alpha);
    t.rows.push_back({format_number(alpha), format_number(ad.lower),
                      format_number(ad.upper), format_number(pr.lower),
                      format_number(pr.upper)});
  }
  return t;
}

CsvTable make_table_averaging() {
  CsvTable t;
  t.header = {"T", "0.001", "0.01", "0.02", "0.05", "0.1", "0.2"};
  for (long long count : {1, 2, 5, 10, 20}) {
    std::vector<std::string> row{format_number(count)};
    for (double alpha : kLevels) {
      row.push_back(
          format_number(ev::avg_threshold(static_cast<int>(count), alpha)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable make_table(int number) {
  switch (number) {
    case 1:
      return make_table_thresholds();
    case 2:
      return make_table_boosting();
    case 7:
      return make_table_averaging();
    default:
      throw std::domain_error("table number must be 1, 2, or 7");
  }
}

}  // namespace harness
