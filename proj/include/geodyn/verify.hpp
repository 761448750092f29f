// geodyn - the identity suite: every checked relation at seeded sample points.

#ifndef GEODYN_VERIFY_HPP
#define GEODYN_VERIFY_HPP

#include <cstdint>
#include <map>
#include <string>

#include "geodyn/cartan.hpp"

namespace geodyn {

struct VerifyOptions {
  int samples = 100;
  std::uint64_t seed = 0;
  // Identity name -> tolerance, overriding the documented defaults.
  std::map<std::string, double> tolerance_overrides;
};

// Runs the full metric identity suite: compatibility, Riemann symmetries,
// both Bianchi identities, the covariant-derivative commutator against a
// fixed test field, the geospin identities, and the structural-equation
// form checks, each maximized over `samples` seeded in-domain points (and
// velocities where one is needed).
StructuralReport run_identity_suite(const MetricSpec& spec, const VerifyOptions& opts);

// Suite for a coefficient connection with no metric behind it: the torsion
// form check runs; curvature-versus-metric comparisons are reported as
// skipped.
StructuralReport run_connection_suite(const CustomConnection& conn, const VerifyOptions& opts);

}  // namespace geodyn

#endif
