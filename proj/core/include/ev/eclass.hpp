#pragma once

#include <string>
#include <string_view>

namespace ev {

/** Distributional classes of e-variables (nonnegative, mean at most one
 *  under the null). E0 places no further restriction; the others constrain
 *  the shape of the distribution of E or of log E:
 *
 *    D      decreasing density on the support
 *    DGT1   decreasing density on [1, inf), arbitrary below 1
 *    U      unimodal density on [0, inf)
 *    LS     log E has a symmetric distribution
 *    LU     log E has a unimodal density
 *    LDGT0  log E has a decreasing density on [0, inf)
 *    LD     log E has a decreasing density
 *    LUS    log E has a unimodal and symmetric distribution
 *    LN     E is log-normal (point masses in (0, 1] included)
 *    LCD    E has a log-concave density
 *    LCS    E has a log-concave survival function
 *    LCF    E has a log-concave distribution function
 */
enum class EClass { E0, D, DGT1, U, LS, LU, LDGT0, LD, LUS, LN, LCD, LCS, LCF };

inline constexpr EClass kAllClasses[] = {
    EClass::E0, EClass::D,  EClass::DGT1, EClass::U,   EClass::LS,
    EClass::LU, EClass::LDGT0, EClass::LD, EClass::LUS, EClass::LN,
    EClass::LCD, EClass::LCS, EClass::LCF};

/** Canonical token for a class ("E0", "D", "DGT1", ...). */
std::string_view to_string(EClass cls);

/** Parse a class token (case-insensitive); throws std::invalid_argument on
 *  unknown names. */
EClass eclass_from_string(std::string_view name);

/** Containment in the class lattice: true when every member of `a` is also a
 *  member of `b` (reflexive and transitive; E0 contains everything). */
bool is_subclass(EClass a, EClass b);

}  // namespace ev
