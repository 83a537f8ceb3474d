#pragma once

#include <filesystem>
#include <iosfwd>

#include "dagtrace/dag.hpp"

namespace dagtrace {

// Line-oriented text interchange format, stable under write-then-read:
//
//   dagfile v1
//   semiring <max-plus|lcs>
//   vertices <T>
//   delta_max <d>
//   sources <count>
//   <vertex> <init>          (one line per source, ascending)
//   sinks <count>
//   <vertex>                 (one line per sink, ascending)
//   edges <count>
//   <from> <to> <weight>     (one line per edge, sorted by (from, to))
//
// Reading applies full DpDag construction validation.
void write_dag_file(const DpDag& dag, std::ostream& out);
void write_dag_file(const DpDag& dag, const std::filesystem::path& path);

DpDag read_dag_file(std::istream& in);
DpDag read_dag_file(const std::filesystem::path& path);

} // namespace dagtrace
