#pragma once

// Intersection vector distributions of 2-(7,3,1)_q as published, frozen for
// comparison. Symbolic entries keep the published factor order.

#include <algorithm>
#include <map>
#include <array>
#include <string>
#include <utility>
#include <vector>

namespace reference {

struct TableRow {
  const char* count;
  int s;
  std::array<const char*, 4> alpha;
};

// Frozen from the published tables: count, s, alpha_0..alpha_3.
inline const std::vector<TableRow> kTableQ2 = {
    {"1", 7, {"0", "0", "0", "381"}},           {"127", 6, {"0", "0", "336", "45"}},
    {"2667", 5, {"0", "256", "120", "5"}},      {"5715", 4, {"128", "224", "28", "1"}},
    {"6096", 4, {"136", "210", "35", "0"}},     {"381", 3, {"240", "140", "0", "1"}},
    {"11430", 3, {"248", "126", "7", "0"}},     {"2667", 2, {"320", "60", "1", "0"}},
    {"127", 1, {"360", "21", "0", "0"}},        {"1", 0, {"381", "0", "0", "0"}},
};

inline const std::vector<TableRow> kTableQ3 = {
    {"1", 7, {"0", "0", "0", "7651"}},          {"1093", 6, {"0", "0", "7371", "280"}},
    {"99463", 5, {"0", "6561", "1080", "10"}},  {"306040", 4, {"4374", "3159", "117", "1"}},
    {"619731", 4, {"4401", "3120", "130", "0"}}, {"7651", 3, {"6480", "1170", "0", "1"}},
    {"918120", 3, {"6507", "1131", "13", "0"}}, {"99463", 2, {"7290", "360", "1", "0"}},
    {"1093", 1, {"7560", "91", "0", "0"}},      {"1", 0, {"7651", "0", "0", "0"}},
};

// Symbolic table as printed, factor order as in the source.
inline const std::vector<TableRow> kTableSym = {
    {"1", 7, {"0", "0", "0", "Phi6*Phi7"}},
    {"Phi7", 6, {"0", "0", "q^4*Phi3*Phi6", "Phi2*Phi4*Phi6"}},
    {"Phi3*Phi6*Phi7", 5, {"0", "q^8", "q^3*Phi2*Phi4", "Phi4"}},
    {"Phi2*Phi4*Phi6*Phi7", 4, {"q^7*Phi1", "q^5*Phi3", "q^2*Phi3", "1"}},
    {"q^4*Phi6*Phi7", 4, {"q^3*(q^5 - q^4 + 1)", "q*Phi1*Phi2*Phi3*Phi4", "Phi3*Phi4", "0"}},
    {"Phi6*Phi7", 3, {"q^4*Phi4*Phi2*Phi1", "q^2*Phi3*Phi4", "0", "1"}},
    {"q*Phi2*Phi4*Phi6*Phi7", 3, {"q^3*(q^5 - q + 1)", "q*(q^3 + q - 1)*Phi3", "Phi3", "0"}},
    {"Phi3*Phi6*Phi7", 2, {"q^6*Phi4", "q^2*Phi2*Phi4", "1", "0"}},
    {"Phi7", 1, {"q^3*Phi2*Phi4*Phi6", "Phi3*Phi6", "0", "0"}},
    {"1", 0, {"Phi6*Phi7", "0", "0", "0"}},
};

// Factor order: q-power, parenthesized cofactor, then Phi_d by d.
inline std::string normalize_factors(const std::string& text) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '*' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  auto key = [](const std::string& f) {
    if (f.rfind("Phi", 0) == 0) return std::make_pair(2, std::stoi(f.substr(3)));
    if (f[0] == '(') return std::make_pair(1, 0);
    return std::make_pair(0, 0);
  };
  std::stable_sort(parts.begin(), parts.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "*") + p;
  return out;
}

// Structure graph at q = 2: (lower type, upper type) -> (up, down).
inline const std::map<std::pair<std::string, std::string>, std::pair<int, int>> kFigureQ2 = {
    {{"0", "1"}, {127, 1}},    {{"1", "2"}, {63, 3}},     {{"2", "3_1"}, {1, 7}},    {{"2", "3_0"}, {30, 7}},
    {{"3_1", "4_1"}, {15, 1}}, {{"3_0", "4_1"}, {7, 14}}, {{"3_0", "4_0"}, {8, 15}}, {{"4_1", "5"}, {7, 15}},
    {{"4_0", "5"}, {7, 16}},   {{"5", "6"}, {3, 63}},     {{"6", "7"}, {1, 127}},
};

}  // namespace reference
