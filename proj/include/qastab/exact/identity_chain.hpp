#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qastab/exact/polynomial.hpp"
#include "qastab/exact/relation.hpp"

namespace qastab::exact {

/// One numbered identity of the chain that turns the mixed equation into the quartic
/// equation (even f) or the Jensen equation (odd f).
///
/// `holds`/`residual` are the literal check of the printed display on p.
/// Independently, each display is re-derived from its sources (with the
/// stated substitutions) modulo parity, f(0) = 0 and, after the doubling
/// identity is in hand, homogeneity. `derivation_consistent` says whether
/// the printed display lies in the span of its sources; `derived` is the
/// relation that actually follows (equal to the printed one when
/// consistent) and is what later steps build on.
struct IdentityReport {
  std::string identity_id;
  bool holds = false;
  BivariatePoly residual;
  Parity prerequisite = Parity::none;
  Relation printed;
  std::string derivation;
  bool derivation_consistent = false;
  std::optional<Relation> derived;
  bool derived_holds = false;
  BivariatePoly derived_residual;
};

struct ChainVerification {
  bool applicable = false;
  std::string reason;
  std::vector<IdentityReport> reports;
};

/// The printed display for an identity id such as "2.12", as LHS - RHS.
const Relation& printed_identity(const std::string& id);

/// The mixed equation, id "1.4", as (LHS - RHS) / 7.
const Relation& mixed_relation();

/// Identity ids handled for the given parity, in chain order.
std::vector<std::string> chain_ids(Parity parity);

/// Throws ParityMismatch when p has monomials of the other parity, and
/// InvalidArgument for Parity::none. Returns applicable = false (and no
/// reports) when p does not satisfy the mixed equation exactly.
ChainVerification verify_identity_chain(const RationalPoly& p, Parity parity);

}  // namespace qastab::exact
