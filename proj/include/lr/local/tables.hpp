#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lr/local/groups.hpp"

namespace lr::local {

// Raw CSV text of the embedded tables: "table_a" .. "table_d".
const std::string& golden_csv(const std::string& name);
// RFC 4180 subset: comma separated, double-quoted fields may hold commas.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

struct TableRow {
  std::string type;  // I, IIa, ...
  std::string representation;
  std::string remarks;
  std::vector<long> dims;
  std::string family() const;  // type without its letter suffix
};

// Fixed-space dimension table: columns are the parahoric names.
struct DimensionTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
  const TableRow& row(const std::string& type) const;
  long dim(const TableRow& r, const std::string& column) const;
};

const DimensionTable& table_b();  // GL3: K, J, I
const DimensionTable& table_d();  // GSp4: K, K', J, J', I
const DimensionTable& dimension_table(GroupKind kind);

// Each family's rows sum columnwise to row I.
std::vector<std::string> additivity_failures(const DimensionTable& t);

// Types with dim^J > dim^K + dim^K' (GL3: K' conjugate to K, same column);
// with require_unitary, rows remarked "not unitary" are dropped.
std::vector<std::string> classify_raised(GroupKind kind, bool require_unitary);
// Types whose dimension tuple equals the observed one.
std::vector<std::string> match_dimensions(GroupKind kind, const std::vector<long>& dims);
bool is_generic(GroupKind kind, const std::string& type);
bool is_square_integrable(GroupKind kind, const std::string& type);

struct GoldenCheck {
  std::string what;
  long expected = 0;
  long computed = 0;
  std::string method;
  bool pass() const { return expected == computed; }
};
// Recomputes every golden entry that has a finite model at field size q.
std::vector<GoldenCheck> verify_golden(GroupKind kind, unsigned q);

}  // namespace lr::local
