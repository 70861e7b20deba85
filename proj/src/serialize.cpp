#include "pgst/serialize.hpp"

#include <stdexcept>

namespace pgst {

namespace {

long long to_int64(const mpz_class& z) {
  if (!z.fits_slong_p())
    throw std::logic_error("relation coefficient exceeds the json integer range");
  return z.get_si();
}

// Sparse map from eigenvalue index to coefficient, ascending, zeros dropped.
ordered_json relation_entries(const SupportSet& support, const ZVec& coeffs) {
  ordered_json entries = ordered_json::object();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0)
      entries[std::to_string(support.indices()[i])] = to_int64(coeffs[i]);
  return entries;
}

}  // namespace

ordered_json to_json(const SupportSet& support) {
  ordered_json out;
  out["m"] = support.m();
  out["size"] = support.size();
  out["indices"] = support.indices();
  out["excluded"] = support.excluded();
  return out;
}

ordered_json to_json(const RelationVector& rel) {
  ordered_json out;
  out["entries"] = relation_entries(rel.support, rel.coeffs);
  out["coeff_sum"] = to_int64(rel.coeff_sum());
  out["even_index_sum"] = to_int64(rel.even_index_sum());
  return out;
}

ordered_json to_json(const RelationLattice& lattice) {
  ordered_json out;
  out["rank"] = lattice.rank();
  ordered_json rows = ordered_json::array();
  for (const auto& row : lattice.basis)
    rows.push_back(relation_entries(lattice.support, row));
  out["basis"] = rows;
  return out;
}

ordered_json to_json(const PgstVerdict& verdict) {
  ordered_json out;
  out["answer"] = answer_name(verdict.answer);
  out["method"] = method_name(verdict.method);
  out["support"] = verdict.support.indices();
  ordered_json cert;
  if (verdict.answer == Answer::no && verdict.violating_relation) {
    const RelationVector& rel = *verdict.violating_relation;
    cert["type"] = "violating_relation";
    cert["entries"] = relation_entries(rel.support, rel.coeffs);
    cert["coeff_sum"] = to_int64(rel.coeff_sum());
    cert["even_index_sum"] = to_int64(rel.even_index_sum());
  } else if (verdict.sum_zero_basis) {
    cert["type"] = "sum_zero_basis";
    cert["rank"] = verdict.sum_zero_basis->rank();
    ordered_json rows = ordered_json::array();
    for (const auto& row : verdict.sum_zero_basis->basis)
      rows.push_back(relation_entries(verdict.support, row));
    cert["basis"] = rows;
  } else {
    cert["type"] = "obstruction_free";
    cert["broken_class"] = verdict.broken_class;
    ordered_json witnesses = ordered_json::array();
    for (const auto& w : verdict.witnesses) {
      ordered_json item;
      item["c"] = w.c;
      item["missing_index"] = w.missing_index;
      witnesses.push_back(item);
    }
    cert["witnesses"] = witnesses;
  }
  out["certificate"] = cert;
  out["m"] = verdict.support.m();
  out["n"] = verdict.support.n();
  return out;
}

ordered_json to_json(const TimeSearchResult& result) {
  ordered_json out;
  out["tau"] = result.tau;
  out["delta"] = result.delta;
  out["achieved_overlap"] = result.achieved_overlap;
  ordered_json phases = ordered_json::object();
  for (const auto& [j, err] : result.phase_errors)
    phases[std::to_string(j)] = err;
  out["phase_errors"] = phases;
  out["budget_used"] = result.budget_used;
  out["complete"] = result.complete;
  return out;
}

ordered_json to_json(const CospectralityCertificate& cert) {
  ordered_json out;
  out["cospectral"] = cert.cospectral;
  out["parallel"] = cert.parallel;
  out["strongly_cospectral"] = cert.strongly_cospectral;
  ordered_json entries = ordered_json::array();
  for (const auto& e : cert.entries) {
    ordered_json item;
    item["j"] = e.j;
    switch (e.classification) {
      case CospectralityCertificate::Classification::both_zero:
        item["classification"] = "both_zero";
        break;
      case CospectralityCertificate::Classification::matched:
        item["classification"] = "matched";
        item["gamma"] = e.gamma;
        break;
      case CospectralityCertificate::Classification::mismatched:
        item["classification"] = "mismatched";
        break;
    }
    entries.push_back(item);
  }
  out["entries"] = entries;
  return out;
}

ordered_json make_report(const std::string& command, ordered_json inputs,
                         ordered_json results, double timing_ms) {
  ordered_json report;
  report["schema_version"] = 1;
  report["command"] = command;
  report["inputs"] = std::move(inputs);
  report["results"] = std::move(results);
  report["timing_ms"] = timing_ms;
  return report;
}

}  // namespace pgst
