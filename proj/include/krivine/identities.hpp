#ifndef KRIVINE_IDENTITIES_HPP
#define KRIVINE_IDENTITIES_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "krivine/big_real.hpp"
#include "krivine/precision.hpp"

namespace krivine {

// Declaration order is registry order.
enum class IdentityKind {
  ParsevalDoubleSeries,
  ParsevalClosure,
  KgDefinition,
  KgFromSeries,
  Recurrence,
  CoeffVsQuadrature,
  AppendixA1,
  AppendixA2Corrected,
  AppendixA3,
  AppendixA4,
  FixedPoint1,
  FixedPoint2,
  FixedPoint3,
  FixedPoint4,
  HaagerupConsistency,
  KrivineComplexMiddleEquality,
  LegendreRelation,
  KhintchineStability,
};

// An identity, optionally pinned to one index.  RECURRENCE and
// COEFF_VS_QUADRATURE without an index sweep their default ranges (1..100 and
// 0..8) and report the worst case.
struct IdentityId {
  IdentityKind kind;
  std::optional<long> index;

  friend bool operator==(const IdentityId&, const IdentityId&) = default;
};

struct IdentityInfo {
  IdentityKind kind;
  std::string_view name;
  std::string_view description;
  // The formula the identity checks, as a searchable anchor.
  std::string_view anchor;
  bool indexed;
};

/// Registry in its fixed order; verify_all reports in this order.
std::span<const IdentityInfo> identity_registry();
const IdentityInfo& identity_info(IdentityKind kind);

std::string to_string(const IdentityId& id);
/// Parses "PARSEVAL_CLOSURE", "RECURRENCE(7)", ...; nullopt when unknown.
std::optional<IdentityId> parse_identity(std::string_view text);

struct IdentityReport {
  IdentityId id;
  BigReal lhs;
  BigReal rhs;
  BigReal residual;
  BigReal tolerance;
  int digits_agreed;
  bool passed;
  // Ordered key/value annotations (sweep worst index, tail bounds, errors).
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<long> terms_used;
  // Set when an owning module raised; lhs/rhs/residual are then zero.
  std::optional<std::string> error;
  double runtime_ms;
};

/// Evaluates both sides through the owning modules.  Library errors are
/// caught and reported as a failed report with `error` set.
IdentityReport verify(const IdentityId& id, const PrecisionContext& ctx);

/// Every registered identity (or `ids` when given), reported in registry
/// order.  A failure in one identity never stops the rest.
std::vector<IdentityReport> verify_all(
    const PrecisionContext& ctx,
    const std::optional<std::vector<IdentityId>>& ids = std::nullopt);

/// floor(-log10(residual / max(|lhs|, |rhs|, 1))), clamped to
/// [0, working digits]; a zero residual gives the working digits.
int digits_agreed(const BigReal& lhs, const BigReal& rhs,
                  const BigReal& residual, const PrecisionContext& ctx);

}  // namespace krivine

#endif  // KRIVINE_IDENTITIES_HPP
