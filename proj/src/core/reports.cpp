#include "dioph/reports.hpp"

#include <json.hpp>

#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

using json = nlohmann::ordered_json;

namespace {

json coeffs_json(const IntegerPolynomial& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) {
    if (c.fits_slong_p())
      a.push_back(c.get_si());
    else
      a.push_back(c.get_str());
  }
  return a;
}

json interval_json(const RealInterval& x) { return json::array({x.lo, x.hi}); }

json horizon(const BestApproxSequence& seq) {
  json h = {{"number", seq.zeta ? seq.zeta->label() : ""}, {"n", seq.n}, {"h_max", seq.h_max}};
  // a decimal literal only pins records down to its own precision
  h["decimal_input"] = seq.zeta && seq.zeta->kind() == NumberKind::Decimal;
  return h;
}

std::string csv_double(double x) { return render12(x); }

}  // namespace

std::string best_approx_jsonl(const BestApproxSequence& seq) {
  std::ostringstream out;
  for (const auto& r : seq.records) {
    json j;
    j["schema"] = "dioph.bestapprox.v1";
    j["number"] = seq.zeta ? seq.zeta->label() : "";
    j["n"] = seq.n;
    j["h_max"] = seq.h_max;
    j["k"] = r.k;
    j["coeffs"] = coeffs_json(r.poly);
    j["poly"] = r.poly.to_string();
    j["H"] = r.height.get_str();
    j["value_lo"] = render_down(r.value.lo);
    j["value_hi"] = render_up(r.value.hi);
    j["degree"] = r.degree;
    out << j.dump() << '\n';
  }
  for (const auto& note : seq.notes) {
    json j;
    j["schema"] = "dioph.bestapprox.note.v1";
    j["kind"] = to_string(note.kind);
    j["height"] = note.height;
    j["chosen"] = note.chosen.to_string();
    j["other"] = note.other.to_string();
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string best_approx_csv(const BestApproxSequence& seq) {
  std::ostringstream out;
  out << "k,H,log_H,neg_log_value_lo,neg_log_value_hi,degree,poly\n";
  for (const auto& r : seq.records) {
    RealInterval lh = log_interval(r.height);
    RealInterval lv = -log_interval(r.value);
    out << r.k << ',' << r.height.get_str() << ',' << csv_double(lh.mid()) << ',' << csv_double(lv.lo)
        << ',' << csv_double(lv.hi) << ',' << r.degree << ",\"" << r.poly.to_string() << "\"\n";
  }
  return out.str();
}

std::vector<SpanScanRow> span_scan_rows(const BestApproxSequence& seq, std::size_t k_lo,
                                        std::size_t k_hi) {
  if (seq.size() < 3) fail(ErrorCode::EmptyWindow, "span scan needs at least three records");
  k_lo = std::max<std::size_t>(k_lo, 2);
  if (k_hi == 0 || k_hi > seq.size() - 1) k_hi = seq.size() - 1;
  if (k_lo > k_hi) fail(ErrorCode::EmptyWindow, "empty span window");
  std::vector<SpanScanRow> rows;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    bool coprime = poly_gcd(seq.at(k - 1).poly, seq.at(k).poly).degree() == 0;
    bool has_phi = seq.n % 2 == 0;
    mpz_class ph;
    if (has_phi) ph = phi(GluedTriple::from_sequence(seq, k));
    for (int m = psi_lower_m(seq.n); m <= 2 * seq.n - 1; ++m) {
      SpanScanRow r;
      r.k = k;
      r.m = m;
      r.rank = span_rank(seq, k, m);
      r.full = r.rank == static_cast<std::size_t>(m) + 1;
      r.coprime = coprime;
      r.has_phi = has_phi;
      r.phi = ph;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::string span_scan_csv(const std::vector<SpanScanRow>& rows) {
  std::ostringstream out;
  out << "k,m,rank,full,coprime,phi\n";
  for (const auto& r : rows)
    out << r.k << ',' << r.m << ',' << r.rank << ',' << (r.full ? 1 : 0) << ',' << (r.coprime ? 1 : 0)
        << ',' << (r.has_phi ? r.phi.get_str() : "") << '\n';
  return out.str();
}

std::string span_scan_json(const BestApproxSequence& seq, const PsiEstimate& psi) {
  json j;
  j["schema"] = "dioph.spanscan.v1";
  j["horizon"] = horizon(seq);
  j["window"] = json::array({psi.k_lo, psi.k_hi});
  j["threshold"] = psi.threshold;
  j["psi_hat"] = psi.psi_hat ? json(*psi.psi_hat) : json(nullptr);
  j["psi_tilde_hat"] = psi.psi_tilde_hat ? json(*psi.psi_tilde_hat) : json(nullptr);
  json w = json::object(), cw = json::object();
  for (const auto& [m, ks] : psi.witnesses) w[std::to_string(m)] = ks;
  for (const auto& [m, ks] : psi.coprime_witnesses) cw[std::to_string(m)] = ks;
  j["witnesses"] = w;
  j["coprime_witnesses"] = cw;
  j["upbo_certified"] = psi.upbo_certified;
  if (seq.n % 2 == 0) j["phi_nonzero"] = psi.phi_nonzero;
  return j.dump(2) + "\n";
}

std::string lambda_json(const GluedTriple& triple, const LemurResult& lemur) {
  json j;
  j["schema"] = "dioph.lambda.v1";
  j["n"] = triple.n;
  if (triple.k) j["k"] = triple.k;
  json h = json::array();
  for (const auto& c : triple.h) h.push_back(c.get_str());
  j["h"] = h;
  IntMatrix lam = build_lambda(triple);
  json rows = json::array();
  for (std::size_t i = 0; i < lam.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < lam.cols(); ++c) row.push_back(lam(i, c).get_str());
    rows.push_back(row);
  }
  j["lambda"] = rows;
  j["phi"] = lemur.phi.get_str();
  j["phi_nonzero"] = lemur.phi_nonzero;
  j["span_full"] = lemur.span_full;
  j["family_rank"] = lemur.family_rank;
  j["kernel_trivial"] = lemur.kernel_trivial;
  json wit = json::array();
  for (const auto& p : lemur.witness) wit.push_back(coeffs_json(p));
  j["witness"] = wit;
  j["agree"] = lemur.phi_nonzero == lemur.span_full && lemur.span_full == lemur.kernel_trivial;
  return j.dump(2) + "\n";
}

std::string ss_graph_csv(const SSGraph& graph) {
  std::ostringstream out;
  out << "q";
  for (int j = 1; j <= graph.m + 1; ++j) out << ",L" << j << "_lo,L" << j << "_hi";
  out << ",certified";
  for (int j = 1; j <= graph.m + 1; ++j) out << ",witness" << j;
  out << '\n';
  for (const auto& s : graph.samples) {
    out << s.q.get_str();
    for (int j = 0; j <= graph.m; ++j) {
      if (static_cast<std::size_t>(j) < s.values.size())
        out << ',' << csv_double(s.values[j].lo) << ',' << csv_double(s.values[j].hi);
      else
        out << ",,";
    }
    out << ',' << (s.certified ? 1 : 0);
    for (int j = 0; j <= graph.m; ++j) {
      out << ',';
      if (static_cast<std::size_t>(j) < s.witnesses.size()) out << '"' << s.witnesses[j].to_json() << '"';
    }
    out << '\n';
  }
  return out.str();
}

std::string ss_graph_manifest(const SSGraph& graph, const MinkowskiReport* mink) {
  json j;
  j["schema"] = "dioph.ssgraph.v1";
  j["number"] = graph.zeta ? graph.zeta->label() : "";
  j["m"] = graph.m;
  j["h_pool"] = graph.h_pool;
  j["pool_truncated"] = graph.pool_truncated;
  j["samples"] = graph.samples.size();
  std::size_t cert = 0;
  for (const auto& s : graph.samples) cert += s.certified ? 1 : 0;
  j["certified_samples"] = cert;
  j["minkowski_constant"] = minkowski_constant(graph.m, *graph.zeta);
  if (mink) {
    j["sup_abs_sum"] = mink->sup_abs_sum;
    j["min_nurmi_slack"] = mink->min_nurmi_slack;
    j["holds"] = mink->holds;
  }
  return j.dump(2) + "\n";
}

std::string exponents_json(const BestApproxSequence& seq, const ExponentEstimate& est) {
  json j;
  j["schema"] = "dioph.exponents.v1";
  j["horizon"] = horizon(seq);
  j["records"] = est.records;
  j["k0"] = est.k0;
  j["window"] = json::array({est.k0, est.window_hi});
  if (est.has_w) {
    j["w_lower"] = interval_json(est.w_lower);
    j["w_lower_text"] = render12(est.w_lower.lo);
    j["w_argmax"] = est.w_argmax;
  } else {
    j["w_lower"] = nullptr;
  }
  if (est.has_what) {
    j["what_proxy"] = interval_json(est.what_proxy);
    j["what_proxy_text"] = render12(est.what_proxy.hi);
    j["what_argmin"] = est.what_argmin;
    j["tolerance"] = est.tolerance;
  } else {
    j["what_proxy"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string bounds_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream out;
  out << "n,t,t_in_domain,theta,sigma,w,frwe,D,E,E_minus\n";
  for (const auto& r : rows)
    out << r.n << ',' << csv_double(r.t) << ',' << (r.t_in_domain ? 1 : 0) << ',' << csv_double(r.theta)
        << ',' << csv_double(r.sigma) << ',' << csv_double(r.w) << ',' << csv_double(r.frwe) << ','
        << csv_double(r.d) << ',' << csv_double(r.e) << ',' << csv_double(r.e_minus) << '\n';
  return out.str();
}

std::string audit_json(const AuditReport& report, const ExponentEstimate& est) {
  json j;
  j["schema"] = "dioph.audit.v1";
  j["n"] = report.n;
  j["decimal_input"] = report.decimal_input;
  j["h_max"] = report.h_max;
  j["k0"] = est.k0;
  j["window"] = json::array({est.k0, est.window_hi});
  j["violation"] = report.violation;
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"id", r.id},
                    {"formula", r.formula},
                    {"values", r.values},
                    {"status", to_string(r.status)},
                    {"unconditional", r.unconditional}});
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string audit_text(const AuditReport& report) {
  std::ostringstream out;
  out << "audit n=" << report.n << " H_max=" << report.h_max << '\n';
  if (report.decimal_input) out << "  decimal input: records certified only to the literal's precision\n";
  for (const auto& r : report.rows) {
    std::string st = to_string(r.status);
    out << "  " << r.id << std::string(r.id.size() < 10 ? 10 - r.id.size() : 1, ' ') << st
        << std::string(st.size() < 16 ? 16 - st.size() : 1, ' ') << r.formula << "\n"
        << "            " << r.values << '\n';
  }
  out << (report.violation ? "VIOLATION\n" : "no violation\n");
  return out.str();
}

std::string gelfond_json(const GelfondScan& scan, std::uint64_t seed) {
  json j;
  j["schema"] = "dioph.gelfond.v1";
  j["n"] = scan.n;
  j["h_max"] = scan.h_max;
  j["exhaustive"] = scan.exhaustive;
  if (!scan.exhaustive) j["seed"] = seed;
  j["pairs"] = scan.pairs;
  auto wit = [](const GelfondWitness& w) {
    return json{{"p", w.p.to_string()}, {"q", w.q.to_string()}, {"ratio", w.ratio.get_str()},
                {"ratio_value", w.ratio.get_d()}};
  };
  j["min"] = wit(scan.min);
  j["max"] = wit(scan.max);
  j["constant"] = scan.constant;
  j["within"] = scan.min.ratio.get_d() >= 1.0 / scan.constant && scan.max.ratio.get_d() <= scan.constant;
  return j.dump(2) + "\n";
}

}  // namespace dioph
