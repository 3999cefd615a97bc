#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pll/lockin_analytic.hpp"
#include "pll/loop_params.hpp"
#include "pll/sweep.hpp"

namespace pll {

inline constexpr const char* kVersion = "1.0.0";

/// Shortest exact form would do, but reports pin 17 significant digits so
/// files are byte-stable and round-trip exactly.
std::string format_double(double v);

/// Minimal RFC-4180-style field quoting (quotes only when needed).
std::string csv_escape(const std::string& field);

/// Sweep CSV: header row, one row per SweepRow, LF endings, '.' decimal.
/// omega_l_tau1_over_k0 is the diagram's flat y axis. NaN cells are empty.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Parse back what write_sweep_csv emitted (used by the round-trip checks).
std::vector<SweepRow> read_sweep_csv(std::istream& is);

/// Single-document JSON report for one parameter point:
/// {params, case, results: [{method, omega_l, s_prime_zero, diagnostics}],
///  versions} plus a generated_at field unless suppressed.
std::string lockin_report_json(const LoopParameters& p,
                               const std::vector<LockInResult>& results,
                               bool deterministic);

} // namespace pll
