#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hmfa {

using State = std::uint8_t;

/// Affine-rate local-density-dependent model over a finite state set S.
///
/// NOTE the index order: rate(s, s', phi) is the rate of the transition FROM
/// s' TO s, i.e. entry (s, s') of the generator Q(phi) acting on column
/// vectors. Reading it the other way transposes the model.
///
///   q_{s s'}(phi) = q0(s, s') + sum_r q1(s, s', r) phi_r
///
/// Diagonal entries are the negative column sums, so every column of Q(phi)
/// sums to zero for every phi. Off-diagonal coefficients are non-negative.
class ModelSpec {
public:
    struct Term {
        State to;
        State from;
        State neighbor; ///< r in q1(s, s', r); unused for constant terms
        double coefficient;
    };

    /// `constant` holds (to, from, -, value) triples, `linear` holds
    /// (to, from, r, value). Entries with to == from are rejected; duplicates
    /// accumulate. Throws std::invalid_argument on negative coefficients,
    /// out-of-range states, duplicate labels, or fewer than two states.
    ModelSpec(std::string name, std::vector<std::string> states, const std::vector<Term>& constant,
              const std::vector<Term>& linear);

    const std::string& name() const noexcept { return name_; }
    std::size_t num_states() const noexcept { return states_.size(); }
    const std::vector<std::string>& states() const noexcept { return states_; }
    State state_index(std::string_view label) const;

    /// q0(s, s'), diagonal included.
    double q0(State to, State from) const noexcept { return q0_[to * k_ + from]; }
    /// q1(s, s', r), diagonal included.
    double q1(State to, State from, State r) const noexcept { return q1_[(to * k_ + from) * k_ + r]; }

    /// Rate of from -> to at neighborhood vector phi (length |S|).
    double rate(State to, State from, const double* phi) const noexcept;

    /// max |q1| over all entries (diagonal included).
    double q1_max() const noexcept { return q1_max_; }
    /// max |q0| over all entries (diagonal included).
    double q0_max() const noexcept { return q0_max_; }

    /// Off-diagonal non-zero terms, in (to, from, r) order.
    const std::vector<Term>& constant_terms() const noexcept { return constant_; }
    const std::vector<Term>& linear_terms() const noexcept { return linear_; }

    /// Transitions from -> to whose rate is not identically zero.
    bool can_transition(State to, State from) const noexcept { return reachable_[to * k_ + from]; }

private:
    std::string name_;
    std::vector<std::string> states_;
    std::size_t k_ = 0;
    std::vector<double> q0_;
    std::vector<double> q1_;
    std::vector<bool> reachable_;
    std::vector<Term> constant_;
    std::vector<Term> linear_;
    double q0_max_ = 0.0;
    double q1_max_ = 0.0;
};

enum class ModelKind { sis, sir, si, degree_process, custom };
ModelKind parse_model_kind(std::string_view name);

/// Built-in models. Parameters by name: "beta" (infection), "gamma" (cure or
/// recovery). SIS over {S, I}: S->I at beta*phi_I, I->S at gamma. SIR over
/// {S, I, R}: S->I at beta*phi_I, I->R at gamma. SI is SIR with gamma = 0.
/// The degree process over {a, b}: a->b at phi_a + phi_b.
/// Throws std::invalid_argument on negative rates or ModelKind::custom.
ModelSpec make_model(ModelKind kind, const std::map<std::string, double>& params = {});

/// JSON form: {"name", "states": [...], "q0": dense |S|x|S| matrix (diagonal
/// ignored on input), "q1": [[to, from, r, value], ...] sparse off-diagonal}.
std::string model_to_json(const ModelSpec& m);
ModelSpec model_from_json(std::string_view text);

} // namespace hmfa
