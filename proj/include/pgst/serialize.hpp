#pragma once

#include <string>

#include "json.hpp"
#include "pgst/decider.hpp"
#include "pgst/dynamics.hpp"
#include "pgst/states.hpp"

namespace pgst {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const SupportSet& support);
ordered_json to_json(const RelationVector& rel);
ordered_json to_json(const RelationLattice& lattice);
ordered_json to_json(const PgstVerdict& verdict);
ordered_json to_json(const TimeSearchResult& result);
ordered_json to_json(const CospectralityCertificate& cert);

// Common output envelope; every command prints exactly one of these.
ordered_json make_report(const std::string& command, ordered_json inputs,
                         ordered_json results, double timing_ms);

}  // namespace pgst
