#pragma once

// JSON material files.
//
//   { "name": "...", "density": 1, "symmetry": "triclinic" | "isotropic" | "cubic_m3m",
//     "c2": [[6x6]] or {"11": ..., "12": ...}, "c3": {"111": ..., "456": ...} }
//
// Voigt keys use 1-based indices. For isotropic and cubic_m3m files only the
// independent constants are needed; the rest are completed from the symmetry
// and any extra entry is checked against the completed value.

#include <filesystem>
#include <string>

#include "elastwave/moduli.hpp"

namespace elastwave {

/// Parses a material document. Throws ParseError, SymmetryError or DefinitenessError.
Modulid parse_material(const std::string& text);

Modulid load_material(const std::filesystem::path& path);

/// Serializes with the upper Voigt triangle of c2 and the nonzero sorted c3 triplets.
std::string material_to_json(const Modulid& mod, int indent = 2);

void save_material(const Modulid& mod, const std::filesystem::path& path);

}  // namespace elastwave
