#pragma once

#include <iosfwd>
#include <string>

#include "run_config.hpp"
#include "uvarov/oracle.hpp"
#include "uvarov/simplex_mass.hpp"

namespace uvarov::cli {

/// 17 significant digits, "nan"/"inf" spelled out.
std::string format_double(double v);

extern const char* const kKernelTableHeader;

void write_table(const KernelTable& rows, OutputFormat format, std::ostream& out);
void write_report(const EquivalenceReport& report, OutputFormat format, std::ostream& out);

/// Re-reads a JSON table written by write_table.
KernelTable parse_table_json(const std::string& text);

/// Writes to `path`, or stdout when empty. Throws InvalidInput if the file
/// cannot be written.
void emit(const std::string& content, const std::string& path);

}  // namespace uvarov::cli
