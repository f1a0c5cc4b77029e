#pragma once

#include <string>
#include <vector>

#include "resdirac/canonical.hpp"
#include "resdirac/transforms.hpp"
#include "resdirac/types.hpp"

namespace resdirac::io {

// All readers throw ValidationError with kind "parse" on malformed text or shapes.
std::string to_json(const Potential& q);
std::string to_json(const JostRep& rep);
std::string to_json(const ScatteringRep& S);
std::string to_json(const ResonanceSet& R, double r_cut = 0.0);
std::string to_json(const Hamiltonian& H);

Potential potential_from_json(const std::string& text);
JostRep jostrep_from_json(const std::string& text);
ScatteringRep scattering_from_json(const std::string& text);
ResonanceSet resonances_from_json(const std::string& text);
Hamiltonian hamiltonian_from_json(const std::string& text);
std::vector<ResonanceMove> moves_from_json(const std::string& text);

// "potential", "jostrep", "scattering", "resonances", "hamiltonian" or "" from the keys present.
std::string detect_kind(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace resdirac::io
