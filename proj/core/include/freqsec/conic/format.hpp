#pragma once

#include <iosfwd>
#include <string>

#include "freqsec/conic/program.hpp"

namespace freqsec::conic {

/// Writes the program in the line-oriented text format documented in
/// docs/program-format.md (17-significant-digit decimals, one record per
/// line) so external MISOCP solvers can cross-check it.
void export_program(const ConicProgram& program, std::ostream& out);
std::string export_program(const ConicProgram& program);

/// Reads a program back from the text format. Throws BadInput on malformed
/// records.
ConicProgram import_program(std::istream& in);
ConicProgram import_program(const std::string& text);

}  // namespace freqsec::conic
