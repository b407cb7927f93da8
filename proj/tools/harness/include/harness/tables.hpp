#pragma once

#include "harness/csv.hpp"

namespace harness {

/** Improved rejection thresholds by class group and level (seven rows:
 *  E0+LS, D+U, DGT1, LCD+LCS, LUS+LD, LDGT0, LN; six levels from 0.001 to
 *  0.2). */
CsvTable make_table_thresholds();

/** Boosting-factor bounds for log-concave survival nulls: c1/c2 under
 *  arbitrary dependence and under PRDS at four levels. */
CsvTable make_table_boosting();

/** Rejection thresholds for averages of T independent log-concave-density
 *  e-values (T in {1, 2, 5, 10, 20}, six levels). */
CsvTable make_table_averaging();

/** Dispatch by table number: 1 = thresholds, 2 = boosting, 7 = averaging.
 *  Throws std::domain_error for any other number. */
CsvTable make_table(int number);

}  // namespace harness
