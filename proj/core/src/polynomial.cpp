#include "qseries/polynomial.hpp"

#include <sstream>

namespace qseries {

PolyQ PolyQ::constant(int nvars, const Rat& c) {
    PolyQ p(nvars);
    p.add_term(std::vector<int>(nvars, 0), c);
    return p;
}

PolyQ PolyQ::variable(int nvars, int index) {
    if (index < 0 || index >= nvars)
        throw std::invalid_argument("variable index out of range");
    PolyQ p(nvars);
    std::vector<int> e(nvars, 0);
    e[index] = 1;
    p.add_term(e, Rat(1));
    return p;
}

Rat PolyQ::coeff(const std::vector<int>& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Rat(0) : it->second;
}

void PolyQ::add_term(const std::vector<int>& e, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = c_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) c_.erase(it);
    }
}

PolyQ PolyQ::operator-() const {
    PolyQ out(nvars_);
    for (const auto& [e, v] : c_) out.c_.emplace(e, -v);
    return out;
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
    PolyQ out = a;
    for (const auto& [e, v] : b.c_) out.add_term(e, v);
    return out;
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) {
    PolyQ out = a;
    for (const auto& [e, v] : b.c_) out.add_term(e, -v);
    return out;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    PolyQ out(a.nvars_);
    for (const auto& [ea, va] : a.c_)
        for (const auto& [eb, vb] : b.c_) {
            std::vector<int> e(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, va * vb);
        }
    return out;
}

PolyQ PolyQ::scaled(const Rat& s) const {
    PolyQ out(nvars_);
    if (s == 0) return out;
    for (const auto& [e, v] : c_) out.c_.emplace(e, v * s);
    return out;
}

Scalar PolyQ::eval(const std::vector<Scalar>& args) const {
    if ((int)args.size() != nvars_)
        throw std::invalid_argument("argument count mismatch");
    Scalar out(0);
    for (const auto& [e, v] : c_) {
        Scalar term{Rat(v)};
        for (int i = 0; i < nvars_; ++i)
            if (e[i]) term = term * args[i].pow(e[i]);
        out += term;
    }
    return out;
}

Series PolyQ::eval(const VarSpec& spec, const std::vector<Series>& args) const {
    if ((int)args.size() != nvars_)
        throw std::invalid_argument("argument count mismatch");
    // cache powers per variable; exponents here are small
    std::vector<std::vector<Series>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(Series::one(spec));

    Series out(spec);
    for (const auto& [e, v] : c_) {
        Series term(spec, Scalar(v));
        for (int i = 0; i < nvars_; ++i) {
            while ((int)powers[i].size() <= e[i])
                powers[i].push_back(powers[i].back() * args[i]);
            if (e[i]) term = term * powers[i][e[i]];
        }
        out += term;
    }
    return out;
}

PolyQ PolyQ::compose(const std::vector<PolyQ>& args) const {
    if ((int)args.size() != nvars_)
        throw std::invalid_argument("argument count mismatch");
    int target = args.empty() ? 0 : args[0].nvars();
    PolyQ out(target);
    for (const auto& [e, v] : c_) {
        PolyQ term = PolyQ::constant(target, v);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) term = term * args[i];
        out = out + term;
    }
    return out;
}

void PolyQ::for_each(
    const std::function<void(const std::vector<int>&, const Rat&)>& fn) const {
    for (const auto& [e, v] : c_) fn(e, v);
}

std::string PolyQ::str(const std::string& stem) const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, v] : c_) {
        if (!first) out << " + ";
        out << rat_str(v);
        for (int i = 0; i < nvars_; ++i) {
            if (!e[i]) continue;
            out << "*" << stem << (i + 1);
            if (e[i] > 1) out << "^" << e[i];
        }
        first = false;
    }
    return out.str();
}

} // namespace qseries
