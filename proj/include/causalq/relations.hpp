#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "causalq/model.hpp"

namespace causalq {

/// "x rather than x'": two assignments to the same variables, distinct at every coordinate.
struct ContrastPair {
    Assignment left;
    Assignment right;

    std::vector<VarIndex> variables() const { return left.variables(); }

    friend bool operator==(const ContrastPair&, const ContrastPair&) = default;
    friend auto operator<=>(const ContrastPair&, const ContrastPair&) = default;
};

/// Throws Error unless `left` and `right` bind the same nonempty variable set
/// with a different value at every variable.
ContrastPair make_contrast(Assignment left, Assignment right);

/// Parses "A=1,C=1 vs A=0,C=0".
ContrastPair parse_contrast(const Signature& sig, std::string_view text);
std::string format(const Signature& sig, const ContrastPair& c);

/// Every contrast over a nonempty subset of `vars`: by subset size, then
/// lexicographically on the subset, then on the left values (descending), then
/// on the right values (ascending).
std::vector<ContrastPair> all_contrasts(const Signature& sig, const std::vector<VarIndex>& vars);
ContrastPair translate(const Signature& from, const Signature& to, const ContrastPair& c);

/// One joint-parent step of a network. The witness may bind exogenous
/// variables (its context part) and endogenous ones; it never touches the
/// step's source or target variables.
struct NetworkStep {
    ContrastPair source;
    ContrastPair target;
    Assignment witness;
};

struct Network {
    std::vector<NetworkStep> steps;
};

std::string format(const Signature& sig, const Network& n);

struct ParentResult {
    bool holds = false;
    std::optional<ContrastPair> source;
    std::optional<ContrastPair> target;
    Assignment witness;
};

struct StepResult {
    bool holds = false;
    Assignment witness;
};

struct AncestorResult {
    bool holds = false;
    std::vector<VarIndex> path;  // x, ..., y
};

struct NetworkResult {
    bool holds = false;
    Network network;
};

/// Whether `child`'s equation varies with `parent` for some setting of its other
/// arguments. The certificate binds the other arguments; the contrast puts the
/// later range value on the left.
ParentResult is_parent(const Model& model, VarIndex parent, VarIndex child);

/// Shortest directed path in the parent graph. Throws Error when x == y.
AncestorResult is_ancestor(const Model& model, VarIndex x, VarIndex y);

/// Singleton contrasts: F_Y(x, w) = y and F_Y(x', w) = y' for some setting w of
/// Y's other arguments. The witness is the first such w in declared order.
StepResult potential_parent(const Model& model, const ContrastPair& source, const ContrastPair& target);

/// Singleton contrasts, with the witness being Y's other arguments at their
/// actual values in `context` and x holding actually.
StepResult actual_parent(const Model& model, const Context& context, const ContrastPair& source,
                         const ContrastPair& target);

/// Some witness z (disjoint from source and target variables, searched by size
/// then lexicographically) makes (z, x) directly sufficient for y and (z, x')
/// for y', with no source variable dispensable under the same z.
StepResult potential_joint_parents(const Model& model, const ContrastPair& source, const ContrastPair& target);

/// As potential_joint_parents, with the witness required to hold in `context`.
/// The source's left values must hold as well.
StepResult actual_joint_parents(const Model& model, const Context& context, const ContrastPair& source,
                                const ContrastPair& target);

/// Where a contextual network must have its source values hold actually: at
/// every step, or only at the first. The two agree, since each step's target
/// values are forced by values that hold; both are kept so tests can show it.
enum class ActualReading { every_step, initial_source };

/// Breadth-first search over joint-parent steps, optionally restricted to one context.
///
/// Successor sets are memoized per source contrast, so one instance can answer
/// many reachability queries against the same model (and context).
class JointAncestry {
public:
    struct Edge {
        ContrastPair target;
        Assignment witness;
    };

    explicit JointAncestry(const Model& model);
    JointAncestry(const Model& model, const Context& context,
                  ActualReading reading = ActualReading::every_step);

    /// Every contrast reachable in one joint-parent step, in discovery order.
    const std::vector<Edge>& successors(const ContrastPair& source);

    /// Every contrast reachable by a network of at least one step.
    std::set<ContrastPair> reachable(const ContrastPair& source);

    /// Shortest network from source to target, if any.
    NetworkResult network(const ContrastPair& source, const ContrastPair& target);

    const Model& model() const { return *model_; }
    bool actual() const { return world_.has_value(); }

private:
    bool source_allowed(const ContrastPair& source) const;

    const Model* model_;
    std::optional<Assignment> world_;
    ActualReading reading_ = ActualReading::every_step;
    std::map<ContrastPair, std::vector<Edge>> memo_;
};

NetworkResult potential_joint_ancestors(const Model& model, const ContrastPair& source, const ContrastPair& target);

/// Networks whose every witness holds in `context` and whose source holds
/// actually. Each later step's source then holds actually as well, since it is
/// forced by values that do.
NetworkResult actual_joint_ancestors(const Model& model, const Context& context, const ContrastPair& source,
                                     const ContrastPair& target,
                                     ActualReading reading = ActualReading::every_step);

}  // namespace causalq
