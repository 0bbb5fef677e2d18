#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcenter {

/// Raised for inputs outside a documented domain (parameters outside Omega,
/// non-one-cycle quivers passed to cycle operations, malformed quivers).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Quiver text could not be parsed. Carries the 1-based line number.
class ParseError : public InvalidInput {
public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Parameters (r, n, m) of Lambda(r, n, m): n >= 1, m >= 0, 1 <= r <= n.
struct OmegaParams {
  int r = 1;
  int n = 1;
  int m = 0;

  bool in_omega() const { return n >= 1 && m >= 0 && r >= 1 && r <= n; }
  /// Throws InvalidInput unless in_omega().
  void validate() const;
  bool operator==(const OmegaParams&) const = default;
};

std::string to_string(const OmegaParams& p);

namespace gentle {

struct Arrow {
  std::string name;
  std::size_t source;
  std::size_t target;
};

/// A relation stored as the path beta∘alpha: alpha first, then beta.
struct Relation {
  std::size_t beta;
  std::size_t alpha;
};

/// A finite quiver with length-two relations. Vertex and arrow names are
/// unique; relation pairs are composable (target(alpha) == source(beta)).
class GentleQuiver {
public:
  GentleQuiver() = default;

  std::size_t add_vertex(std::string name);
  std::size_t add_arrow(std::string name, std::size_t source, std::size_t target);
  void add_relation(std::size_t beta, std::size_t alpha);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<Relation>& relations() const { return relations_; }

  std::optional<std::size_t> find_vertex(std::string_view name) const;
  std::optional<std::size_t> find_arrow(std::string_view name) const;
  bool has_relation(std::size_t beta, std::size_t alpha) const;

  /// Connectivity of the underlying undirected graph, optionally ignoring one arrow.
  bool connected(std::optional<std::size_t> without_arrow = std::nullopt) const;

private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<Relation> relations_;
};

/// Parse the line-based quiver format:
///
///     # comment
///     vertices: v1 v2 ...
///     arrow NAME: SRC -> TGT
///     relation: BETA ALPHA      # the path ALPHA then BETA
///
/// Throws ParseError with the offending line on unknown directives, unknown
/// names, duplicates, non-composable relations or relations of length != 2.
GentleQuiver parse_quiver(std::string_view text);
GentleQuiver load_quiver(const std::string& path);
std::string format_quiver(const GentleQuiver& q);

struct Violation {
  int axiom;  // 1, 3 or 4 (axiom 2 is enforced by the representation)
  std::string where;
  std::string message;
};

struct GentleReport {
  bool gentle = true;
  std::vector<Violation> violations;
};

GentleReport check_gentle(const GentleQuiver& q);
inline bool is_gentle(const GentleQuiver& q) { return check_gentle(q).gentle; }

/// |Q1| == |Q0| and connected.
bool is_one_cycle(const GentleQuiver& q);

struct CycleArrows {
  std::vector<std::size_t> clockwise;
  std::vector<std::size_t> anticlockwise;
  std::vector<std::size_t> non_cycle;
};

/// Classifies arrows of a one-cycle quiver. The cycle is walked from its
/// lexicographically smallest vertex towards its smaller neighbour (ties on
/// parallel arrows broken by arrow name); arrows agreeing with the walk are
/// clockwise. A loop is clockwise. Throws InvalidInput if not one-cycle.
CycleArrows cycle_arrows(const GentleQuiver& q);

struct ClockCounts {
  std::size_t clockwise = 0;
  std::size_t anticlockwise = 0;
};

ClockCounts clock_counts(const GentleQuiver& q);
bool clock_condition(const GentleQuiver& q);

/// The quiver Delta(n, m) with relations R(r, n). Vertices are named -m..n-1,
/// arrows a-m..a-1 (tail) and a0..a{n-1} (cycle, a_i : i -> i+1 mod n).
GentleQuiver build_lambda(const OmegaParams& params);

}  // namespace gentle
}  // namespace dcenter
