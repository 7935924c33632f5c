#pragma once

#include <string>
#include <vector>

#include "dioph/bestapprox.hpp"
#include "dioph/exponents.hpp"
#include "dioph/pgn.hpp"
#include "dioph/polynomial.hpp"
#include "dioph/spanconds.hpp"

namespace dioph {

/// Deterministic report renderers. JSON documents carry a "schema" id.

std::string best_approx_jsonl(const BestApproxSequence& seq);
std::string best_approx_csv(const BestApproxSequence& seq);

struct SpanScanRow {
  std::size_t k = 0;
  int m = 0;
  std::size_t rank = 0;
  bool full = false;
  bool coprime = false;
  bool has_phi = false;
  mpz_class phi;
};

std::vector<SpanScanRow> span_scan_rows(const BestApproxSequence& seq, std::size_t k_lo,
                                        std::size_t k_hi);
std::string span_scan_csv(const std::vector<SpanScanRow>& rows);
std::string span_scan_json(const BestApproxSequence& seq, const PsiEstimate& psi);

std::string lambda_json(const GluedTriple& triple, const LemurResult& lemur);

std::string ss_graph_csv(const SSGraph& graph);
std::string ss_graph_manifest(const SSGraph& graph, const MinkowskiReport* mink);

std::string exponents_json(const BestApproxSequence& seq, const ExponentEstimate& est);
std::string bounds_csv(const std::vector<BoundsRow>& rows);
std::string audit_json(const AuditReport& report, const ExponentEstimate& est);
std::string audit_text(const AuditReport& report);
std::string gelfond_json(const GelfondScan& scan, std::uint64_t seed);

}  // namespace dioph
