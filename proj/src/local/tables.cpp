#include "lr/local/tables.hpp"

#include <map>
#include <sstream>

#include "lr/errors.hpp"

namespace lr::local {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
      any = true;
    } else if (c == '\n') {
      if (any || !field.empty()) {
        row.push_back(field);
        out.push_back(row);
      }
      row.clear();
      field.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (any || !field.empty()) {
    row.push_back(field);
    out.push_back(row);
  }
  ensure(!quoted, "csv: unterminated quote");
  return out;
}

std::string TableRow::family() const {
  std::string f = type;
  while (!f.empty() && f.back() >= 'a' && f.back() <= 'z') f.pop_back();
  return f;
}

const TableRow& DimensionTable::row(const std::string& type) const {
  for (const auto& r : rows)
    if (r.type == type) return r;
  throw HypothesisError(name + " has no row " + type);
}

long DimensionTable::dim(const TableRow& r, const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == column) return r.dims[i];
  throw HypothesisError(name + " has no column " + column);
}

namespace {

DimensionTable parse_dimension_table(const std::string& name) {
  auto cells = parse_csv(golden_csv(name));
  ensure(cells.size() >= 2, name + ": empty table");
  const auto& head = cells[0];
  ensure(head.size() > 3 && head[0] == "type" && head[1] == "representation" && head[2] == "remarks",
         name + ": unexpected header");
  DimensionTable t;
  t.name = name;
  t.columns.assign(head.begin() + 3, head.end());
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const auto& c = cells[i];
    ensure(c.size() == head.size(), name + ": ragged row " + std::to_string(i));
    TableRow r{c[0], c[1], c[2], {}};
    for (std::size_t j = 3; j < c.size(); ++j) r.dims.push_back(std::stol(c[j]));
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace

const DimensionTable& table_b() {
  static const DimensionTable t = parse_dimension_table("table_b");
  return t;
}

const DimensionTable& table_d() {
  static const DimensionTable t = parse_dimension_table("table_d");
  return t;
}

const DimensionTable& dimension_table(GroupKind kind) { return kind == GroupKind::GL3 ? table_b() : table_d(); }

std::vector<std::string> additivity_failures(const DimensionTable& t) {
  const TableRow& full = t.row("I");
  std::map<std::string, std::vector<long>> sums;
  for (const auto& r : t.rows) {
    if (r.type == "I") continue;
    auto& s = sums[r.family()];
    s.resize(r.dims.size(), 0);
    for (std::size_t j = 0; j < r.dims.size(); ++j) s[j] += r.dims[j];
  }
  std::vector<std::string> bad;
  for (const auto& [fam, s] : sums)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (s[j] != full.dims[j])
        bad.push_back(t.name + " family " + fam + " column " + t.columns[j] + ": " + std::to_string(s[j]) +
                      " != " + std::to_string(full.dims[j]));
  return bad;
}

std::vector<std::string> classify_raised(GroupKind kind, bool require_unitary) {
  const DimensionTable& t = dimension_table(kind);
  std::vector<std::string> out;
  for (const auto& r : t.rows) {
    long k = t.dim(r, "K"), j = t.dim(r, "J");
    long kp = kind == GroupKind::GL3 ? k : t.dim(r, "K'");
    if (j <= k + kp) continue;
    if (require_unitary && r.remarks == "not unitary") continue;
    out.push_back(r.type);
  }
  return out;
}

std::vector<std::string> match_dimensions(GroupKind kind, const std::vector<long>& dims) {
  std::vector<std::string> out;
  for (const auto& r : dimension_table(kind).rows)
    if (r.dims == dims) out.push_back(r.type);
  return out;
}

bool is_generic(GroupKind kind, const std::string& type) {
  if (kind == GroupKind::GL3) return type == "I" || type == "IIa" || type == "IIIa";
  return type == "I" || type.back() == 'a';
}

bool is_square_integrable(GroupKind kind, const std::string& type) {
  if (kind == GroupKind::GL3) return type == "IIIa";
  return type == "IVa" || type == "Va";
}

std::vector<GoldenCheck> verify_golden(GroupKind kind, unsigned q) {
  FiniteGroup G(kind, q);
  const DimensionTable& t = dimension_table(kind);
  std::vector<GoldenCheck> out;
  const std::string cnt = "|B\\G/H| by orbit sweep", weyl = "|W/W_H|";
  out.push_back({"|G| closed form", static_cast<long>(classical_order(kind, q).get_si()), static_cast<long>(G.order()),
                 "enumeration"});
  out.push_back({"|B\\G/B| = |W|", static_cast<long>(weyl_order(kind)),
                 static_cast<long>(double_coset_count(G, Shape::I, Shape::I)), cnt});
  const TableRow& full = t.row("I");
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    const std::string& col = t.columns[j];
    Shape h = col == "K" ? Shape::K : col == "K'" ? Shape::Kp : col == "J" ? Shape::J : col == "J'" ? Shape::Jp : Shape::I;
    long w = static_cast<long>(weyl_coset_count(kind, h));
    out.push_back({"I/" + col, full.dims[j], w, weyl});
    if (h != Shape::Kp)
      out.push_back({"I/" + col, full.dims[j], static_cast<long>(double_coset_count(G, Shape::I, h)), cnt});
  }
  struct Induced {
    std::string type;
    Shape parabolic;
    LeviRep tau;
  };
  std::vector<Induced> induced;
  if (kind == GroupKind::GL3)
    induced = {{"IIa", Shape::J, LeviRep::Steinberg}, {"IIb", Shape::J, LeviRep::Trivial}};
  else
    induced = {{"IIa", Shape::Jp, LeviRep::Steinberg},
               {"IIb", Shape::Jp, LeviRep::Trivial},
               {"IIIa", Shape::J, LeviRep::Steinberg},
               {"IIIb", Shape::J, LeviRep::Trivial}};
  for (const auto& ind : induced) {
    const TableRow& r = t.row(ind.type);
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      const std::string& col = t.columns[j];
      if (col == "K'") continue;
      Shape h = col == "K" ? Shape::K : col == "J" ? Shape::J : col == "J'" ? Shape::Jp : Shape::I;
      std::string method = std::string("Ind from ") + (ind.parabolic == Shape::J ? "J" : "J'") + " of " +
                           (ind.tau == LeviRep::Steinberg ? "Steinberg" : "trivial");
      out.push_back({ind.type + "/" + col, r.dims[j], static_cast<long>(induced_fixed_dim(G, ind.parabolic, ind.tau, h)),
                     method});
    }
  }
  for (const auto& f : additivity_failures(t)) out.push_back({f, 0, 1, "additivity"});
  return out;
}

}  // namespace lr::local
