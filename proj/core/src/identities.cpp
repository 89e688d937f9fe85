#include "qseries/identities.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace qseries {

bool Binding::is_formal(const std::string& k) const {
    auto it = values.find(k);
    return it != values.end() && std::holds_alternative<FormalTag>(it->second);
}

Scalar Binding::scalar(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw std::invalid_argument("missing parameter: " + k);
    if (auto* s = std::get_if<Scalar>(&it->second)) return *s;
    if (auto* r = std::get_if<Rat>(&it->second)) return Scalar(*r);
    if (auto* n = std::get_if<long>(&it->second)) return Scalar(*n);
    throw std::invalid_argument("parameter is not a scalar: " + k);
}

long Binding::knob(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw std::invalid_argument("missing parameter: " + k);
    if (auto* n = std::get_if<long>(&it->second)) return *n;
    throw std::invalid_argument("parameter is not an integer: " + k);
}

Rat Binding::ratio(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw std::invalid_argument("missing parameter: " + k);
    if (auto* r = std::get_if<Rat>(&it->second)) return *r;
    if (auto* n = std::get_if<long>(&it->second)) return Rat(*n);
    if (auto* s = std::get_if<Scalar>(&it->second)) return s->as_rat();
    throw std::invalid_argument("parameter is not rational: " + k);
}

const std::vector<Rat>& Binding::lambda(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw std::invalid_argument("missing parameter: " + k);
    if (auto* l = std::get_if<std::vector<Rat>>(&it->second)) return *l;
    throw std::invalid_argument("parameter is not a coefficient list: " + k);
}

std::string Binding::str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : values) {
        if (!first) out << " ";
        out << k << "=";
        if (std::holds_alternative<FormalTag>(v)) out << "formal";
        else if (auto* s = std::get_if<Scalar>(&v)) out << s->str();
        else if (auto* n = std::get_if<long>(&v)) out << *n;
        else if (auto* r = std::get_if<Rat>(&v)) out << rat_str(*r);
        else {
            const auto& list = std::get<std::vector<Rat>>(v);
            for (size_t i = 0; i < list.size(); ++i)
                out << (i ? "," : "") << rat_str(list[i]);
        }
        first = false;
    }
    return out.str();
}

Monomial Ctx::param(const std::string& name, int q_shift) const {
    if (b.is_formal(name)) {
        Monomial m = Monomial::var(spec.index_of(name));
        m.exps[0] += q_shift;
        return m;
    }
    Monomial m = Monomial::scalar(b.scalar(name));
    m.exps[0] += q_shift;
    return m;
}

VarSpec IdentityDescriptor::make_spec(const Binding& b) const {
    std::vector<std::string> vars{"q"};
    for (const auto& p : schema)
        if (p.mode == ParamMode::Formal || b.is_formal(p.name))
            vars.push_back(p.name);
    return VarSpec(vars, b.bounds.nq, b.bounds.nt);
}

const Side& IdentityDescriptor::side(const std::string& name) const {
    for (const auto& s : sides)
        if (s.name == name) return s;
    throw std::invalid_argument("unknown side '" + name + "' of " + id);
}

void IdentityDescriptor::validate(const Binding& b) const {
    for (const auto& p : schema) {
        auto it = b.values.find(p.name);
        if (it == b.values.end())
            throw std::invalid_argument(id + ": missing parameter " + p.name);
        switch (p.mode) {
        case ParamMode::Formal:
            if (!std::holds_alternative<FormalTag>(it->second))
                throw std::invalid_argument(id + ": " + p.name + " must be formal");
            break;
        case ParamMode::Bound:
            if (!std::holds_alternative<Scalar>(it->second) &&
                !std::holds_alternative<Rat>(it->second) &&
                !std::holds_alternative<long>(it->second))
                throw std::invalid_argument(id + ": " + p.name +
                                            " must be a bound scalar");
            break;
        case ParamMode::IntKnob:
            if (!std::holds_alternative<long>(it->second))
                throw std::invalid_argument(id + ": " + p.name +
                                            " must be an integer");
            break;
        case ParamMode::RatKnob:
            if (!std::holds_alternative<Rat>(it->second) &&
                !std::holds_alternative<long>(it->second))
                throw std::invalid_argument(id + ": " + p.name +
                                            " must be rational");
            break;
        case ParamMode::Lambda:
            if (!std::holds_alternative<std::vector<Rat>>(it->second))
                throw std::invalid_argument(id + ": " + p.name +
                                            " must be a coefficient list");
            break;
        }
    }
    for (const auto& [k, v] : b.values) {
        const std::string& name = k;
        if (std::none_of(schema.begin(), schema.end(),
                         [&name](const ParamSpec& p) { return p.name == name; }))
            throw std::invalid_argument(id + ": unknown parameter " + name);
    }
}

const IdentityDescriptor& find_identity(const std::string& id) {
    for (const auto& d : registry())
        if (d.id == id) return d;
    throw std::invalid_argument("unknown identity: " + id);
}

Series build_side(const std::string& id, const std::string& side,
                  const Binding& binding) {
    const IdentityDescriptor& d = find_identity(id);
    d.validate(binding);
    Ctx ctx{binding, d.make_spec(binding)};
    return d.side(side).build(ctx);
}

VerificationReport verify_identity(const IdentityDescriptor& d, const Binding& b) {
    d.validate(b);
    auto t0 = std::chrono::steady_clock::now();
    Ctx ctx{b, d.make_spec(b)};

    VerificationReport rep;
    rep.id = d.id;
    rep.params = b.str();
    rep.bounds = b.bounds;
    rep.expected_divergence = d.expect_divergence;
    for (const auto& p : d.schema)
        if (p.mode == ParamMode::RatKnob && p.name == "alpha")
            rep.note = "alpha verified at a rational point; samples, not "
                       "proves, the complex-parameter claim";

    std::vector<Series> built;
    built.reserve(d.sides.size());
    for (const auto& s : d.sides) built.push_back(s.build(ctx));

    rep.outcome = Outcome::Pass;
    for (size_t i = 1; i < built.size(); ++i) {
        auto mis = series_compare(built[0], built[i]);
        if (mis) {
            rep.outcome = Outcome::Fail;
            rep.mismatch = MismatchInfo{d.sides[0].name, d.sides[i].name,
                                        mis->exps, mis->lhs, mis->rhs};
            break;
        }
    }
    // an expected divergence that fails to appear is flagged for review
    if (d.expect_divergence && rep.outcome == Outcome::Pass)
        rep.outcome = Outcome::Review;

    auto t1 = std::chrono::steady_clock::now();
    rep.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

VerificationReport verify_identity(const std::string& id, const Binding& binding) {
    return verify_identity(find_identity(id), binding);
}

std::vector<Binding> default_param_suite(const std::string& id, int order) {
    const IdentityDescriptor& d = find_identity(id);
    std::vector<Binding> suite = d.default_suite();
    if (order > 0)
        for (auto& b : suite) b.bounds = Bounds{order, order};
    return suite;
}

std::string VerificationReport::outcome_str() const {
    switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    default: return "review";
    }
}

static std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string VerificationReport::json() const {
    std::ostringstream out;
    out << "{\"command\":\"verify\",\"id\":\"" << json_escape(id)
        << "\",\"params\":\"" << json_escape(params) << "\",\"nq\":" << bounds.nq
        << ",\"nt\":" << bounds.nt << ",\"outcome\":\"" << outcome_str() << "\"";
    if (expected_divergence) out << ",\"expected_divergence\":true";
    if (!note.empty()) out << ",\"note\":\"" << json_escape(note) << "\"";
    if (mismatch) {
        out << ",\"mismatch\":{\"sides\":[\"" << json_escape(mismatch->side_a)
            << "\",\"" << json_escape(mismatch->side_b) << "\"],\"exps\":["
            << mismatch->exps[0] << "," << mismatch->exps[1] << ","
            << mismatch->exps[2] << "],\"lhs\":\"" << mismatch->coeff_a.str()
            << "\",\"rhs\":\"" << mismatch->coeff_b.str() << "\"}";
    }
    out << ",\"millis\":" << millis << "}";
    return out.str();
}

std::vector<std::pair<std::string, Binding>> parse_suite_file(
    const std::string& text, int order) {
    std::vector<std::pair<std::string, Binding>> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream words(line);
        std::string id;
        if (!(words >> id)) continue;
        Binding b;
        std::string kv;
        while (words >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("suite file: expected key=value, got '" +
                                            kv + "'");
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (val == "formal") {
                b.set(key, FormalTag{});
            } else if (val.find(',') != std::string::npos) {
                std::vector<Rat> list;
                std::istringstream parts(val);
                std::string piece;
                while (std::getline(parts, piece, ','))
                    list.push_back(parse_rat(piece));
                b.set(key, list);
            } else if (val.find('/') != std::string::npos) {
                b.set(key, parse_rat(val));
            } else {
                b.set(key, (long)std::stol(val));
            }
        }
        b.bounds = order > 0 ? Bounds{order, order} : Bounds{20, 20};
        out.push_back({id, std::move(b)});
    }
    return out;
}

} // namespace qseries
