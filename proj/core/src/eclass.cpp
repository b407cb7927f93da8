#include "ev/eclass.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

namespace ev {

namespace {

constexpr int kNumClasses = 13;

constexpr int index_of(EClass cls) { return static_cast<int>(cls); }

constexpr std::array<std::string_view, kNumClasses> kNames = {
    "E0", "D", "DGT1", "U", "LS", "LU", "LDGT0",
    "LD", "LUS", "LN", "LCD", "LCS", "LCF"};

// Containment matrix: contains[a][b] == true iff a ⊆ b. Direct inclusions
// below; the reflexive-transitive closure is taken once at startup.
struct ContainmentTable {
  bool contains[kNumClasses][kNumClasses] = {};

  ContainmentTable() {
    auto add = [this](EClass a, EClass b) {
      contains[index_of(a)][index_of(b)] = true;
    };
    for (int i = 0; i < kNumClasses; ++i) {
      contains[i][i] = true;
      contains[i][index_of(EClass::E0)] = true;
    }
    add(EClass::D, EClass::DGT1);
    add(EClass::D, EClass::U);
    add(EClass::D, EClass::LCF);
    add(EClass::LN, EClass::LUS);
    add(EClass::LUS, EClass::LS);
    add(EClass::LD, EClass::LDGT0);
    add(EClass::LDGT0, EClass::DGT1);
    add(EClass::LCD, EClass::LCS);
    add(EClass::LCD, EClass::LCF);
    add(EClass::LCD, EClass::U);

    for (int k = 0; k < kNumClasses; ++k) {
      for (int i = 0; i < kNumClasses; ++i) {
        if (!contains[i][k]) continue;
        for (int j = 0; j < kNumClasses; ++j) {
          if (contains[k][j]) contains[i][j] = true;
        }
      }
    }
  }
};

const ContainmentTable& table() {
  static const ContainmentTable t;
  return t;
}

}  // namespace

std::string_view to_string(EClass cls) { return kNames[index_of(cls)]; }

EClass eclass_from_string(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (int i = 0; i < kNumClasses; ++i) {
    if (upper == kNames[i]) return static_cast<EClass>(i);
  }
  throw std::invalid_argument("unknown e-variable class: " + std::string(name));
}

bool is_subclass(EClass a, EClass b) {
  return table().contains[index_of(a)][index_of(b)];
}

}  // namespace ev
