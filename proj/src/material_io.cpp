#include "elastwave/material_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace elastwave {
namespace {

using json = nlohmann::json;

Symmetry parse_symmetry(const std::string& s) {
  if (s == "triclinic") return Symmetry::triclinic;
  if (s == "isotropic") return Symmetry::isotropic;
  if (s == "cubic_m3m") return Symmetry::cubic_m3m;
  throw ParseError("unknown symmetry \"" + s + "\" (expected triclinic, isotropic or cubic_m3m)");
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + " is not finite");
  return x;
}

// "IJ" or "IJK" with digits 1..6, returned 0-based.
std::vector<int> voigt_key(const std::string& key, std::size_t length, const std::string& section) {
  if (key.size() != length) throw ParseError(section + " key \"" + key + "\" must have " +
                                             std::to_string(length) + " Voigt digits");
  std::vector<int> out;
  for (char ch : key) {
    if (ch < '1' || ch > '6') throw ParseError(section + " key \"" + key + "\" has a digit outside 1..6");
    out.push_back(ch - '1');
  }
  return out;
}

std::string c2_name(int i, int j) { return std::to_string(i + 1) + std::to_string(j + 1); }
std::string c3_name(int i, int j, int k) {
  return std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1);
}

// Explicitly listed constants, keyed by sorted Voigt indices.
struct Listed {
  std::map<std::pair<int, int>, double> c2;
  std::map<std::array<int, 3>, double> c3;
  bool dense_c2 = false;
};

void put_c2(Listed& out, int i, int j, double v, double tol) {
  const auto key = std::minmax(i, j);
  auto [it, inserted] = out.c2.emplace(std::pair<int, int>(key.first, key.second), v);
  if (!inserted && std::abs(it->second - v) > tol * std::max(std::abs(v), std::abs(it->second))) {
    std::ostringstream os;
    os << "c2 entry " << c2_name(i, j) << " = " << v << " conflicts with " << c2_name(j, i) << " = "
       << it->second;
    throw SymmetryError(os.str());
  }
}

Listed read_constants(const json& doc) {
  Listed out;
  if (!doc.contains("c2")) throw ParseError("missing required key \"c2\"");
  const json& c2 = doc.at("c2");
  if (c2.is_array()) {
    out.dense_c2 = true;
    if (c2.size() != 6) throw ParseError("dense c2 must have 6 rows");
    for (int i = 0; i < 6; ++i) {
      if (!c2[i].is_array() || c2[i].size() != 6) throw ParseError("dense c2 row " + std::to_string(i + 1) +
                                                                   " must have 6 entries");
      for (int j = 0; j < 6; ++j) put_c2(out, i, j, number(c2[i][j], "c2 entry " + c2_name(i, j)), 1e-12);
    }
  } else if (c2.is_object()) {
    for (const auto& [key, v] : c2.items()) {
      const auto idx = voigt_key(key, 2, "c2");
      put_c2(out, idx[0], idx[1], number(v, "c2 entry " + key), 1e-12);
    }
  } else {
    throw ParseError("c2 must be a 6x6 array or an object of \"IJ\" entries");
  }

  if (doc.contains("c3")) {
    const json& c3 = doc.at("c3");
    if (!c3.is_object()) throw ParseError("c3 must be an object of \"IJK\" entries");
    std::map<std::array<int, 3>, std::string> origin;
    for (const auto& [key, v] : c3.items()) {
      auto idx = voigt_key(key, 3, "c3");
      std::array<int, 3> s{idx[0], idx[1], idx[2]};
      std::sort(s.begin(), s.end());
      const double x = number(v, "c3 entry " + key);
      auto [it, inserted] = out.c3.emplace(s, x);
      if (inserted) {
        origin[s] = key;
      } else if (std::abs(it->second - x) > 1e-12 * std::max(std::abs(x), std::abs(it->second))) {
        std::ostringstream os;
        os << "c3 entry " << key << " = " << x << " conflicts with " << origin[s] << " = " << it->second;
        throw SymmetryError(os.str());
      }
    }
  }
  return out;
}

std::optional<double> find2(const Listed& l, int i, int j) {
  auto it = l.c2.find({std::min(i, j) - 1, std::max(i, j) - 1});
  if (it == l.c2.end()) return std::nullopt;
  return it->second;
}

std::optional<double> find3(const Listed& l, int i, int j, int k) {
  std::array<int, 3> s{i - 1, j - 1, k - 1};
  std::sort(s.begin(), s.end());
  auto it = l.c3.find(s);
  if (it == l.c3.end()) return std::nullopt;
  return it->second;
}

double require(std::optional<double> v, const std::string& what, const std::string& sym) {
  if (!v) throw ParseError(sym + " material requires constant " + what);
  return *v;
}

Modulid complete_isotropic(const Listed& l, double density) {
  const auto c11 = find2(l, 1, 1), c12 = find2(l, 1, 2), c44 = find2(l, 4, 4);
  double lam, mu;
  if (c11 && c12) {
    lam = *c12;
    mu = 0.5 * (*c11 - *c12);
  } else if (c11 && c44) {
    mu = *c44;
    lam = *c11 - 2 * mu;
  } else if (c12 && c44) {
    lam = *c12;
    mu = *c44;
  } else {
    throw ParseError("isotropic material requires two of the c2 constants 11, 12, 44");
  }
  // Murnaghan constants from c111, c112, c123.
  const double c111 = require(find3(l, 1, 1, 1), "c3 111", "isotropic");
  const double c112 = require(find3(l, 1, 1, 2), "c3 112", "isotropic");
  const double c123 = require(find3(l, 1, 2, 3), "c3 123", "isotropic");
  const double lm = 0.5 * c112;
  const double mm = 0.25 * (c111 - c112);
  const double nm = c123 - 2 * lm + 2 * mm;
  return make_isotropic(lam, mu, lm, mm, nm, density);
}

Modulid complete_cubic(const Listed& l, double density) {
  const std::string s = "cubic_m3m";
  auto c3 = [&](int i, int j, int k) { return find3(l, i, j, k).value_or(0.0); };
  return make_cubic_m3m(require(find2(l, 1, 1), "c2 11", s), require(find2(l, 1, 2), "c2 12", s),
                        require(find2(l, 4, 4), "c2 44", s), c3(1, 1, 1), c3(1, 1, 2), c3(1, 4, 4),
                        c3(1, 2, 3), c3(1, 6, 6), c3(4, 5, 6), density);
}

// Every listed entry must agree with the symmetry-completed value.
void check_listed(const Listed& l, const Modulid& mod, Symmetry sym) {
  const double tol = 1e-12 * mod.stress_scale();
  for (const auto& [ij, v] : l.c2) {
    const double expect = mod.c2()(ij.first, ij.second);
    if (std::abs(expect - v) > tol) {
      std::ostringstream os;
      os << "c2 entry " << c2_name(ij.first, ij.second) << " = " << v << " violates " << to_string(sym)
         << " symmetry (expected " << expect << ")";
      throw SymmetryError(os.str());
    }
  }
  for (const auto& [t, v] : l.c3) {
    const double expect = mod.c3(t[0], t[1], t[2]);
    if (std::abs(expect - v) > tol) {
      std::ostringstream os;
      os << "c3 entry " << c3_name(t[0], t[1], t[2]) << " = " << v << " violates " << to_string(sym)
         << " symmetry (expected " << expect << ")";
      throw SymmetryError(os.str());
    }
  }
}

}  // namespace

Modulid parse_material(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("material file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("material file must be a JSON object");
  static const std::array<std::string, 5> allowed{"name", "density", "symmetry", "c2", "c3"};
  for (const auto& [key, v] : doc.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError("unknown key \"" + key + "\" in material file");

  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("name must be a string");
    name = doc["name"].get<std::string>();
  }
  const double density = doc.contains("density") ? number(doc["density"], "density") : 1.0;
  if (!(density > 0)) throw ParseError("density must be positive");
  Symmetry sym = Symmetry::triclinic;
  if (doc.contains("symmetry")) {
    if (!doc["symmetry"].is_string()) throw ParseError("symmetry must be a string");
    sym = parse_symmetry(doc["symmetry"].get<std::string>());
  }

  const Listed listed = read_constants(doc);
  Modulid mod = [&] {
    switch (sym) {
      case Symmetry::isotropic: return complete_isotropic(listed, density);
      case Symmetry::cubic_m3m: return complete_cubic(listed, density);
      default: break;
    }
    Matrix6<double> c2 = Matrix6<double>::Zero();
    for (const auto& [ij, v] : listed.c2) c2(ij.first, ij.second) = c2(ij.second, ij.first) = v;
    Modulid::C3Storage c3{};
    for (const auto& [t, v] : listed.c3) c3[voigt::triplet_slot(t[0], t[1], t[2])] = v;
    return Modulid(c2, c3, density);
  }();
  if (sym != Symmetry::triclinic) check_listed(listed, mod, sym);
  return mod.with_name(name, sym);
}

Modulid load_material(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open material file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_material(ss.str());
}

std::string material_to_json(const Modulid& mod, int indent) {
  json doc;
  doc["name"] = mod.name();
  doc["density"] = mod.density();
  doc["symmetry"] = to_string(mod.symmetry());
  json c2 = json::object();
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j)
      if (mod.c2()(i, j) != 0.0 || i == j) c2[c2_name(i, j)] = mod.c2()(i, j);
  doc["c2"] = c2;
  json c3 = json::object();
  for (int t = 0; t < voigt::kTripletCount; ++t) {
    const auto& [i, j, k] = voigt::kTriplets[t];
    if (mod.c3()[t] != 0.0) c3[c3_name(i, j, k)] = mod.c3()[t];
  }
  doc["c3"] = c3;
  return doc.dump(indent);
}

void save_material(const Modulid& mod, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write material file " + path.string());
  out << material_to_json(mod) << '\n';
}

}  // namespace elastwave
