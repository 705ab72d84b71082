#pragma once

#include <string>

#include "certificate.hpp"

namespace multcert {

// JSON documents behind the query-style commands. Each is deterministic:
// the same inputs produce byte-identical output.

std::string count_json(i64 n, i64 m);

// Residues and orbit representatives of minimal period m. Bounded: moduli
// above 2^24 raise Usage rather than emit a multi-gigabyte document.
std::string enumerate_json(i64 n, i64 m);

// Closed-form against finite-difference derivatives, one row per orbit
// representative (plus infinity when m = 1), one entry per parameter index.
std::string derivs_json(i64 n, i64 m, const SearchOptions& opts);

// Re-verifies a certificate and wraps the report.
std::string verify_json(const Certificate& c, const SearchOptions& opts);

// Error document for a raised failure, detail payload included when present.
std::string error_json(const Error& e);

}  // namespace multcert
