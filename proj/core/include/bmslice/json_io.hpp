#pragma once

#include <string>

#include "bmslice/body.hpp"
#include "bmslice/ellipsoid.hpp"
#include "bmslice/orbit.hpp"
#include "bmslice/slicing.hpp"

namespace bmslice {

/// Body JSON: {"n": int, "rep": "V"|"H", "gens": [[f64,...],...]} with one
/// representative per +- pair. Rejects zero rows and rank-deficient gens.
SymBody read_body_json(const std::string& text);
std::string write_body_json(const SymBody& a, int indent = 2);

/// Ellipsoid JSON: {"M": [[f64,...],...]}.
Ellipsoid read_ellipsoid_json(const std::string& text);
std::string write_ellipsoid_json(const Ellipsoid& e, int indent = 2);

/// PD matrices serialize row-major: {"P": [[f64,...],...]}.
std::string write_posdef_json(const PosDef& p, int indent = 2);

std::string write_mvee_report_json(const MveeReport& r, int indent = 2);
std::string write_audit_report_json(const SliceAuditReport& r, int indent = 2);
std::string write_net_report_json(const NetReport& r, int indent = 2);

}  // namespace bmslice
