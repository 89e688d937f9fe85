#ifndef QSERIES_IDENTITIES_HPP
#define QSERIES_IDENTITIES_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qseries/builders.hpp"
#include "qseries/series.hpp"

namespace qseries {

struct Bounds {
    int nq = 20;
    int nt = 20;
};

struct FormalTag {
    bool operator==(const FormalTag&) const { return true; }
};

/* A bound parameter value: formal marker, exact scalar, integer knob,
 * rational knob (alpha and friends), or a coefficient list (the lambda_j
 * of a finite power series argument). */
using ParamValue = std::variant<FormalTag, Scalar, long, Rat, std::vector<Rat>>;

struct Binding {
    std::map<std::string, ParamValue> values;
    Bounds bounds;

    Binding& set(const std::string& k, ParamValue v) {
        values[k] = std::move(v);
        return *this;
    }
    bool has(const std::string& k) const { return values.count(k) != 0; }
    bool is_formal(const std::string& k) const;
    Scalar scalar(const std::string& k) const;
    long knob(const std::string& k) const;
    Rat ratio(const std::string& k) const;
    const std::vector<Rat>& lambda(const std::string& k) const;

    std::string str() const; // "c=1/2 k=3", deterministic order
};

enum class ParamMode { Bound, Formal, IntKnob, RatKnob, Lambda };

struct ParamSpec {
    std::string name;
    ParamMode mode;
    std::string note;
};

/* Per-side build context: the ring (fixed by which schema parameters are
 * formal) plus typed access to the binding. */
struct Ctx {
    const Binding& b;
    VarSpec spec;

    /* Bound scalar -> pure-coefficient monomial; formal -> variable
     * monomial; optional extra q-shift. */
    Monomial param(const std::string& name, int q_shift = 0) const;
    Scalar scalar(const std::string& name) const { return b.scalar(name); }
    long knob(const std::string& name) const { return b.knob(name); }
    Rat ratio(const std::string& name) const { return b.ratio(name); }
    const std::vector<Rat>& lambda(const std::string& name) const {
        return b.lambda(name);
    }
    int var_index(const std::string& name) const { return spec.index_of(name); }
};

struct Side {
    std::string name;
    std::function<Series(const Ctx&)> build;
};

struct IdentityDescriptor {
    std::string id;
    std::string source; // literature citation for the stated identity
    std::vector<ParamSpec> schema;
    std::vector<Side> sides; // 2 or 3
    bool expect_divergence = false; // reported informationally, never gates
    std::function<std::vector<Binding>()> default_suite;

    VarSpec make_spec(const Binding& b) const;
    const Side& side(const std::string& name) const;
    void validate(const Binding& b) const;
};

enum class Outcome { Pass, Fail, Review };

struct MismatchInfo {
    std::string side_a, side_b;
    Exps exps;
    Scalar coeff_a, coeff_b;
};

struct VerificationReport {
    std::string id;
    std::string params;
    Bounds bounds;
    Outcome outcome = Outcome::Pass;
    bool expected_divergence = false;
    std::string note; // e.g. rational-sampling caveat for complex claims
    std::optional<MismatchInfo> mismatch;
    double millis = 0.0;

    bool gates_exit() const { return !expected_divergence && outcome != Outcome::Pass; }
    std::string outcome_str() const;
    std::string json() const;
};

/* The full identity catalogue, built once. */
const std::vector<IdentityDescriptor>& registry();
const IdentityDescriptor& find_identity(const std::string& id); // throws

Series build_side(const std::string& id, const std::string& side,
                  const Binding& binding);

VerificationReport verify_identity(const std::string& id, const Binding& binding);
VerificationReport verify_identity(const IdentityDescriptor& d, const Binding& b);

/* >= 3 bindings spanning the schema; each carries its own default bounds
 * tier. order > 0 overrides both bounds. */
std::vector<Binding> default_param_suite(const std::string& id, int order = 0);

/* Declarative suite file: one check per line, "<id> [key=value]...".
 * Values: "formal", integers, rationals "p/q", or comma-separated rational
 * lists for lambda parameters; '#' starts a comment. */
std::vector<std::pair<std::string, Binding>> parse_suite_file(
    const std::string& text, int order);

} // namespace qseries

#endif
