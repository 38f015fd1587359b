#include "blowup/report.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "blowup/parse.hpp"

namespace blowup {

#ifndef BLOWUP_VERSION
#define BLOWUP_VERSION "0.0.0"
#endif

std::string tool_version() { return BLOWUP_VERSION; }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

std::string trim(const std::string& s, std::size_t& offset) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  offset = a;
  return s.substr(a, b - a);
}

// Comma-separated fields with their 1-based columns relative to `base`.
std::vector<std::pair<std::string, std::size_t>> split_fields(const std::string& s, std::size_t base) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] != ',') continue;
    std::size_t off;
    auto f = trim(s.substr(start, i - start), off);
    out.emplace_back(f, base + start + off + 1);
    start = i + 1;
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

CoeffField parse_field(const std::string& v, std::size_t line, std::size_t col) {
  std::istringstream in(v);
  std::string kind;
  in >> kind;
  for (auto& c : kind) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (kind == "qq") return CoeffField::rationals();
  if (kind != "fp") throw ParseError("field must be 'QQ' or 'fp <prime>'", line, col);
  std::string p;
  if (!(in >> p)) return CoeffField::prime(kDefaultPrime);
  try {
    std::size_t used = 0;
    unsigned long long value = std::stoull(p, &used);
    if (used != p.size() || value >= (1ull << 31)) throw std::out_of_range("");
    return CoeffField::prime(static_cast<std::uint32_t>(value));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), line, col);
  } catch (const std::exception&) {
    throw ParseError("bad prime '" + p + "'", line, col);
  }
}

}  // namespace

MatrixFile parse_matrix_file(std::istream& in) {
  MatrixFile f;
  bool have_field = false, have_vars = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::size_t off;
    auto text = trim(raw, off);
    if (text.empty()) continue;
    auto colon = text.find(':');
    std::string key = colon == std::string::npos ? "" : text.substr(0, colon);
    std::size_t koff;
    key = trim(key, koff);
    const std::size_t value_base = off + (colon == std::string::npos ? 0 : colon + 1);
    const std::string value = colon == std::string::npos ? text : text.substr(colon + 1);

    if (key == "field") {
      if (have_field) throw ParseError("duplicate field line", line, off + 1);
      std::size_t voff;
      trim(value, voff);
      f.field = parse_field(value, line, value_base + voff + 1);
      have_field = true;
    } else if (key == "vars") {
      if (have_vars) throw ParseError("duplicate vars line", line, off + 1);
      for (auto& [name, col] : split_fields(value, value_base)) {
        if (!valid_name(name)) throw ParseError("bad variable name '" + name + "'", line, col);
        if (std::find(f.variables.begin(), f.variables.end(), name) != f.variables.end())
          throw ParseError("duplicate variable '" + name + "'", line, col);
        f.variables.push_back(name);
      }
      have_vars = true;
    } else if (key == "u") {
      std::size_t voff;
      auto v = trim(value, voff);
      if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("u must be a positive integer", line, value_base + voff + 1);
      f.u = std::stoul(v);
    } else if (key == "point") {
      f.point.emplace();
      for (auto& [e, col] : split_fields(value, value_base)) {
        if (e.empty()) throw ParseError("empty point coordinate", line, col);
        f.point->push_back(e);
      }
    } else if (!key.empty() && valid_name(key) && key.find_first_of("+-*^ ") == std::string::npos &&
               colon != std::string::npos) {
      throw ParseError("unknown key '" + key + "'", line, off + 1);
    } else {
      if (!have_vars) throw ParseError("matrix rows must follow the vars line", line, off + 1);
      std::vector<std::string> row;
      std::vector<std::size_t> cols;
      for (auto& [e, col] : split_fields(text, off)) {
        if (e.empty()) throw ParseError("empty entry", line, col);
        row.push_back(e);
        cols.push_back(col);
      }
      f.rows.push_back(std::move(row));
      f.entry_columns.push_back(std::move(cols));
      f.row_lines.push_back(line);
    }
  }
  if (!have_vars) throw ParseError("missing vars line", line, 1);
  if (f.rows.empty()) throw ParseError("no matrix rows", line, 1);
  return f;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  return parse_matrix_file(in);
}

namespace {

template <class K>
Presentation<K> build(const MatrixFile& f, const K& field) {
  auto r = Ring<K>::make(field, {{f.variables, BlockRole::x}});
  const std::size_t rows = f.rows.size(), cols = f.rows[0].size();
  std::vector<Polynomial<K>> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto line = f.row_lines[i];
    if (f.rows[i].size() != cols)
      throw ShapeError("line " + std::to_string(line) + ": row has " + std::to_string(f.rows[i].size()) +
                       " entries, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      const auto col = f.entry_columns[i][j];
      Polynomial<K> p(r);
      try {
        p = parse_polynomial(r, f.rows[i][j]);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line, col + e.column() - 1);
      } catch (const UnknownVariable& e) {
        throw ParseError(e.what(), line, col);
      }
      if (!p.is_zero() && (p.total_degree() != 1 || !p.is_homogeneous()))
        throw ShapeError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": entry '" +
                         f.rows[i][j] + "' is not a linear form");
      entries.push_back(std::move(p));
    }
  }
  if (rows != cols + 1)
    throw ShapeError("matrix is " + std::to_string(rows) + " x " + std::to_string(cols) + ", expected n x (n-1)");
  Presentation<K> out{LinearMatrix<K>(r, 0, rows, cols, std::move(entries)), f.u, std::nullopt};
  if (f.point) {
    if (f.point->size() != f.variables.size()) throw ShapeError("point needs one coordinate per variable");
    out.point.emplace();
    for (const auto& c : *f.point) {
      Polynomial<K> p(r);
      try {
        p = parse_polynomial(r, c);
      } catch (const Error& e) {
        throw ParseError(std::string("bad point coordinate: ") + e.what(), 0, 1);
      }
      if (!p.is_constant()) throw ParseError("point coordinate '" + c + "' is not a constant", 0, 1);
      out.point->push_back(p.is_zero() ? field.zero() : p.lead_coeff());
    }
  }
  return out;
}

}  // namespace

AnyPresentation build_presentation(const MatrixFile& file) {
  if (file.field.kind == FieldKind::rationals) return build(file, RationalField());
  return build(file, PrimeField(file.field.modulus));
}

template <class K>
std::string write_matrix_file(const LinearMatrix<K>& phi, std::optional<std::size_t> u,
                              const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "field: " << phi.ring()->field().descriptor().to_string() << "\n";
  out << "vars: ";
  for (std::size_t i = 0; i < phi.block_vars().size(); ++i)
    out << (i ? ", " : "") << phi.ring()->names()[phi.block_vars()[i]];
  out << "\n";
  if (u) out << "u: " << *u << "\n";
  for (const auto& row : phi.to_strings()) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? ", " : "") << row[j];
    out << "\n";
  }
  return out.str();
}

template std::string write_matrix_file(const LinearMatrix<RationalField>&, std::optional<std::size_t>,
                                       const std::vector<std::string>&);
template std::string write_matrix_file(const LinearMatrix<PrimeField>&, std::optional<std::size_t>,
                                       const std::vector<std::string>&);

namespace {

using Json = nlohmann::ordered_json;

Json flag_json(const Flag& f) {
  Json j;
  j["value"] = f.to_string();
  if (!f.reason.empty()) j["reason"] = f.reason;
  return j;
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json one_based(const std::vector<std::size_t>& v) {
  Json j = Json::array();
  for (auto x : v) j.push_back(x + 1);
  return j;
}

Json stats_json(const GroebnerStats& s) {
  Json j;
  j["pairs_processed"] = s.pairs_processed;
  j["zero_reductions"] = s.zero_reductions;
  j["product_criterion"] = s.product_criterion;
  j["chain_criterion"] = s.chain_criterion;
  j["reduction_steps"] = s.reduction_steps;
  j["basis_size"] = s.basis_size;
  return j;
}

Json profile_json(const GsProfile& p) {
  Json j;
  j["s"] = p.s;
  j["rank"] = p.rank;
  j["holds"] = p.holds;
  j["failing_j"] = opt(p.failing_j);
  Json checks = Json::array();
  for (const auto& c : p.checks) checks.push_back({{"j", c.j}, {"height", c.height}, {"required", c.required}});
  j["checks"] = checks;
  return j;
}

}  // namespace

nlohmann::ordered_json report_json(const VerificationReport& rep, const ReportOptions& opts) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "blowup"}, {"version", tool_version()}};
  j["input"] = {{"hash", hex64(rep.input_hash)}, {"field", rep.field}, {"variables", rep.variables},
                {"matrix", rep.input}};
  j["seed"] = rep.seed;
  j["config"] = {{"max_pairs", opts.budget.max_pairs},
                 {"max_degree", opts.budget.max_degree},
                 {"rees_method", opts.rees_method == ReesMethod::saturation ? "saturation" : "elimination"}};
  j["mode"] = rep.mode;
  j["notices"] = rep.notices;
  j["shape"] = {{"d", rep.d}, {"n", rep.n}, {"u", opt(rep.u)}};

  Json gs;
  Json heights = Json::object(), sat = Json::object();
  for (const auto& [k, v] : rep.heights) heights[std::to_string(k)] = v;
  for (const auto& [k, v] : rep.gs) sat[std::to_string(k)] = v;
  gs["heights"] = heights;
  gs["satisfied"] = sat;
  gs["module"] = rep.module_gs ? profile_json(*rep.module_gs) : Json(nullptr);
  j["gs_profile"] = gs;

  j["point"] = opt(rep.point);
  j["canonical_matrix"] = rep.canonical;
  j["jacobian_dual"] = rep.dual;
  j["dims"] = {{"sym", opt(rep.sym_dim)},
               {"rees", opt(rep.rees_dim)},
               {"analytic_spread", opt(rep.spread)},
               {"module_sym", opt(rep.module_sym_dim)}};
  Json ranks = {{"B", opt(rep.rank_b)}, {"B_prime", opt(rep.rank_b_prime)}, {"B_mod_Q", opt(rep.rank_b_mod_q)}};
  ranks["witness"] = rep.birational_witness
                         ? Json{{"rows", one_based(rep.birational_witness->rows)},
                                {"cols", one_based(rep.birational_witness->cols)}}
                         : Json(nullptr);
  j["ranks"] = ranks;
  j["fiber"] = {{"initial_degree", opt(rep.indeg_q)}, {"generators", rep.fiber}};

  Json flags;
  for (const char* name : {"fiber_type", "expected_form", "birational", "det_identity_all", "specialization_MU"})
    flags[name] = flag_json(rep.flag(name));
  j["flags"] = flags;

  Json claims = Json::array();
  for (const auto& c : rep.claims) {
    Json cj;
    cj["name"] = c.name;
    cj["expected"] = c.expected;
    cj["observed"] = c.observed.to_string();
    cj["consistent"] = c.consistent();
    if (!c.observed.reason.empty()) cj["note"] = c.observed.reason;
    claims.push_back(cj);
  }
  j["claims"] = claims;

  Json inv = Json::array();
  for (const auto& r : rep.inverse_representatives) inv.push_back({{"columns", one_based(r.cols)}, {"delta", r.delta}});
  j["inverse_representatives"] = inv;
  j["specialization"] = {{"b", rep.specialization_b}, {"form", rep.specialization_form}};
  Json open = Json::object();
  for (const auto& [k, v] : rep.open_questions) open[k] = flag_json(v);
  j["open_questions"] = open;
  j["rees_groebner"] = stats_json(rep.rees_stats);
  j["budget_notes"] = rep.budget_notes;
  j["consistent"] = rep.consistent();
  if (opts.timings) {
    Json t = Json::object();
    for (const auto& [k, v] : rep.timings) t[k] = v;
    j["timings_seconds"] = t;
  }
  return j;
}

}  // namespace blowup
