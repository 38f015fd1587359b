#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blowup/theorem.hpp"
#include "json.hpp"

namespace blowup {

inline constexpr const char* kReportSchema = "blowup-report/1";

std::string tool_version();

/// Raw contents of a matrix file; see docs/formats.md.
struct MatrixFile {
  CoeffField field = CoeffField::prime(kDefaultPrime);
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> rows;
  std::optional<std::size_t> u;
  std::optional<std::vector<std::string>> point;

  // source positions for error messages: line of each row, column of each entry
  std::vector<std::size_t> row_lines;
  std::vector<std::vector<std::size_t>> entry_columns;
};

/// Throws ParseError with line and column on malformed input.
MatrixFile parse_matrix_file(std::istream& in);
MatrixFile read_matrix_file(const std::string& path);

template <class K>
struct Presentation {
  LinearMatrix<K> phi;
  std::optional<std::size_t> u;
  std::optional<std::vector<typename K::Element>> point;
};

using AnyPresentation = std::variant<Presentation<RationalField>, Presentation<PrimeField>>;

/// Parses the entries and checks the shape. Throws ParseError for bad entries,
/// ShapeError for ragged rows, a shape other than n x (n-1), or a non-linear entry.
AnyPresentation build_presentation(const MatrixFile& file);

template <class K>
std::string write_matrix_file(const LinearMatrix<K>& phi, std::optional<std::size_t> u = std::nullopt,
                              const std::vector<std::string>& comments = {});

struct ReportOptions {
  bool timings = false;
  GroebnerBudget budget;
  ReesMethod rees_method = ReesMethod::saturation;
};

/// Keys in a fixed order; byte-identical for identical reports unless timings are on.
nlohmann::ordered_json report_json(const VerificationReport& rep, const ReportOptions& opts);

std::string hex64(std::uint64_t v);

}  // namespace blowup
